#include "respcorr/nn/optim.hpp"

#include <cmath>

#include "respcorr/rng.hpp"

namespace respcorr::nn {

Tensor he_init(std::vector<std::size_t> shape, std::size_t fan_in,
               std::uint64_t seed) {
  if (fan_in == 0) throw DegenerateInputError("he_init: fan_in must be > 0");
  Tensor t(std::move(shape));
  Rng rng(seed);
  const double sd = std::sqrt(2.0 / static_cast<double>(fan_in));
  for (auto& v : t.val) v = rng.normal(0.0, sd);
  return t;
}

double mse_loss(const Tensor& pred, const Tensor& target, Tensor* grad) {
  if (!pred.same_shape(target)) {
    throw DimensionError("mse_loss: shape mismatch");
  }
  const std::size_t n = pred.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  double acc = 0.0;
  if (grad != nullptr && !grad->same_shape(pred)) *grad = Tensor(pred.shape);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pred.val[i] - target.val[i];
    acc += d * d;
    if (grad != nullptr) grad->val[i] = 2.0 * d * inv_n;
  }
  return acc * inv_n;
}

void adam_step(const std::vector<Tensor*>& params,
               const std::vector<Tensor>& grads, AdamState& state, double lr,
               const AdamConfig& cfg) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw DimensionError("adam_step: parameter/gradient/state count mismatch");
  }
  state.t += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor& param = *params[p];
    const Tensor& g = grads[p];
    if (g.size() != param.size() || state.m[p].size() != param.size()) {
      throw DimensionError("adam_step: shape mismatch");
    }
    auto& m = state.m[p];
    auto& v = state.v[p];
    for (std::size_t i = 0; i < param.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g.val[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g.val[i] * g.val[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      param.val[i] -= lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

}  // namespace respcorr::nn
