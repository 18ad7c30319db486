#pragma once

#include <cstdint>
#include <functional>

#include "respcorr/nn/net.hpp"
#include "respcorr/nn/optim.hpp"

namespace respcorr::nn {

struct TrainRow {
  std::size_t iter;
  double loss;
  double lr;
};

struct TrainConfig {
  double lr_init = 4e-3;
  double plateau_factor = 0.5;
  std::size_t plateau_patience_iters = 1000;
  double plateau_threshold = 1e-3;
  std::size_t batch_size = 100;
  std::size_t epochs_stage1 = 4;
  std::size_t epochs_stage2 = 2;
  AdamConfig adam;
  std::uint64_t rng_seed = 0;
  std::size_t workers = 1;  // results are identical for any worker count
  // Observation only (progress logs); runs on the coordinating thread and
  // has no effect on the result.
  std::function<void(const TrainRow&)> on_iter;
};

/// Immutable dataset view; get() must be pure and thread-safe.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::size_t size() const = 0;
  virtual void get(std::size_t idx, Tensor& x, Tensor& y) const = 0;
};

struct TrainResult {
  std::vector<TrainRow> history;
};

/// Mini-batch training with Adam and the plateau scheduler. Batches are
/// shuffled once per epoch from the seeded stream; gradient accumulation is
/// a fixed ordered chunk reduction over batch index, so results are
/// bit-stable regardless of worker count. stage selects epochs_stage1 or
/// epochs_stage2.
TrainResult train(Network& net, const SampleSource& data,
                  const TrainConfig& cfg, int stage);

}  // namespace respcorr::nn
