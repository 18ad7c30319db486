#pragma once

#include <vector>

#include "respcorr/nn/tensor.hpp"

namespace respcorr::nn {

/// A trainable model: a pure function of (parameters, input) with an
/// explicit activation tape so forward/backward pairs can run concurrently
/// on different samples.
class Network {
 public:
  virtual ~Network() = default;

  struct Tape {
    std::vector<Tensor> t;
  };

  virtual Tensor forward(const Tensor& x, Tape& tape) const = 0;

  /// gy = dLoss/dOutput. Parameter gradients are accumulated into `grads`
  /// (parallel to parameters()); returns dLoss/dInput.
  virtual Tensor backward(const Tensor& gy, const Tape& tape,
                          std::vector<Tensor>& grads) const = 0;

  virtual std::vector<Tensor*> parameters() = 0;
  virtual std::vector<const Tensor*> parameters() const = 0;

  std::size_t parameter_count() const {
    std::size_t total = 0;
    for (const Tensor* p : parameters()) total += p->size();
    return total;
  }

  /// Zero gradient buffers shaped like parameters().
  std::vector<Tensor> grad_buffers() const {
    std::vector<Tensor> g;
    for (const Tensor* p : parameters()) g.emplace_back(p->shape);
    return g;
  }
};

}  // namespace respcorr::nn
