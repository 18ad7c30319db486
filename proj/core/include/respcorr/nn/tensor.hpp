#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "respcorr/errors.hpp"

namespace respcorr::nn {

/// Dense row-major value array with up to 4 dimensions and an optional
/// gradient buffer of identical shape.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> val;
  std::vector<double> grad;  // empty unless alloc_grad() was called

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
    if (shape.empty() || shape.size() > 4) {
      throw DimensionError("Tensor: rank must be 1..4");
    }
    std::size_t total = 1;
    for (std::size_t d : shape) total *= d;
    val.assign(total, 0.0);
  }

  std::size_t size() const { return val.size(); }
  std::size_t dim(std::size_t i) const { return shape[i]; }

  void alloc_grad() { grad.assign(val.size(), 0.0); }
  void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }

  double& operator()(std::size_t a) { return val[a]; }
  double operator()(std::size_t a) const { return val[a]; }
  double& operator()(std::size_t a, std::size_t b) {
    return val[a * shape[1] + b];
  }
  double operator()(std::size_t a, std::size_t b) const {
    return val[a * shape[1] + b];
  }
  double& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return val[(a * shape[1] + b) * shape[2] + c];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return val[(a * shape[1] + b) * shape[2] + c];
  }
  double& operator()(std::size_t a, std::size_t b, std::size_t c,
                     std::size_t d) {
    return val[((a * shape[1] + b) * shape[2] + c) * shape[3] + d];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c,
                    std::size_t d) const {
    return val[((a * shape[1] + b) * shape[2] + c) * shape[3] + d];
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

}  // namespace respcorr::nn
