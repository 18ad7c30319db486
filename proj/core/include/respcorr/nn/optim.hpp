#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "respcorr/nn/tensor.hpp"

namespace respcorr::nn {

/// Mean squared error over all elements; if grad is given it receives
/// dL/dpred = 2 (pred - target) / count.
double mse_loss(const Tensor& pred, const Tensor& target, Tensor* grad = nullptr);

/// Zero-mean Gaussian weights with variance 2/fan_in, deterministic per seed.
Tensor he_init(std::vector<std::size_t> shape, std::size_t fan_in,
               std::uint64_t seed);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<std::vector<double>> m, v;
  std::uint64_t t = 0;

  void init(const std::vector<Tensor*>& params) {
    m.clear();
    v.clear();
    for (const Tensor* p : params) {
      m.emplace_back(p->size(), 0.0);
      v.emplace_back(p->size(), 0.0);
    }
    t = 0;
  }
};

/// Bias-corrected Adam update; grads is a parallel array to params.
void adam_step(const std::vector<Tensor*>& params,
               const std::vector<Tensor>& grads, AdamState& state, double lr,
               const AdamConfig& cfg = {});

/// ReduceLROnPlateau with an absolute improvement threshold: when the best
/// loss has not improved by more than `threshold` for `patience` consecutive
/// iterations, lr is multiplied by `factor` and the counter resets.
struct PlateauScheduler {
  double lr = 4e-3;
  double factor = 0.5;
  std::size_t patience = 1000;
  double threshold = 1e-3;

  double best = std::numeric_limits<double>::infinity();
  std::size_t bad = 0;

  double step(double loss) {
    if (loss < best - threshold) {
      best = loss;
      bad = 0;
    } else if (++bad >= patience) {
      lr *= factor;
      bad = 0;
    }
    return lr;
  }
};

}  // namespace respcorr::nn
