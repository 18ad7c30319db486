#include "respcorr/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "respcorr/rng.hpp"

namespace respcorr::nn {

namespace {

// Fixed accumulation tree: the batch is split into kChunks index ranges and
// each range is reduced serially in order; the per-chunk partials are then
// summed in chunk order. The tree depends only on the batch size, never on
// the worker count.
constexpr std::size_t kChunks = 8;

struct ChunkResult {
  std::vector<Tensor> grads;
  double loss_sum = 0.0;
};

}  // namespace

TrainResult train(Network& net, const SampleSource& data,
                  const TrainConfig& cfg, int stage) {
  if (data.size() == 0) throw DegenerateInputError("train: empty dataset");
  if (stage != 1 && stage != 2) throw DataError("train: stage must be 1 or 2");
  const std::size_t epochs = stage == 1 ? cfg.epochs_stage1 : cfg.epochs_stage2;
  const std::size_t count = data.size();
  const std::size_t batch = std::min(cfg.batch_size, count);

  std::vector<Tensor*> params = net.parameters();
  AdamState adam;
  adam.init(params);
  PlateauScheduler sched{cfg.lr_init, cfg.plateau_factor,
                         cfg.plateau_patience_iters, cfg.plateau_threshold};

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  std::size_t iter = 0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    Rng shuffle_rng(Rng::derive(cfg.rng_seed, 0x9000 + epoch));
    shuffle_rng.shuffle(order);

    for (std::size_t start = 0; start < count; start += batch) {
      const std::size_t bsize = std::min(batch, count - start);
      const std::size_t chunk_len = (bsize + kChunks - 1) / kChunks;

      std::vector<ChunkResult> chunks(kChunks);
      auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * chunk_len;
        const std::size_t hi = std::min(bsize, lo + chunk_len);
        if (lo >= hi) return;
        ChunkResult& out = chunks[c];
        out.grads = net.grad_buffers();
        Tensor x, y, pred_grad;
        Network::Tape tape;
        for (std::size_t b = lo; b < hi; ++b) {
          data.get(order[start + b], x, y);
          tape.t.clear();
          const Tensor pred = net.forward(x, tape);
          out.loss_sum += mse_loss(pred, y, &pred_grad);
          net.backward(pred_grad, tape, out.grads);
        }
      };

      const std::size_t workers =
          std::clamp<std::size_t>(cfg.workers, 1, kChunks);
      if (workers <= 1) {
        for (std::size_t c = 0; c < kChunks; ++c) run_chunk(c);
      } else {
        std::vector<std::thread> pool;
        for (std::size_t wkr = 0; wkr < workers; ++wkr) {
          pool.emplace_back([&, wkr] {
            for (std::size_t c = wkr; c < kChunks; c += workers) run_chunk(c);
          });
        }
        for (auto& th : pool) th.join();
      }

      // Ordered reduction over chunks.
      std::vector<Tensor> grads = net.grad_buffers();
      double loss = 0.0;
      for (std::size_t c = 0; c < kChunks; ++c) {
        if (chunks[c].grads.empty()) continue;
        loss += chunks[c].loss_sum;
        for (std::size_t p = 0; p < grads.size(); ++p) {
          const auto& src = chunks[c].grads[p].val;
          auto& dst = grads[p].val;
          for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        }
      }
      const double inv_b = 1.0 / static_cast<double>(bsize);
      loss *= inv_b;
      for (auto& g : grads) {
        for (auto& v : g.val) v *= inv_b;
      }
      if (!std::isfinite(loss)) {
        throw NumericError("train: non-finite loss at iteration " +
                           std::to_string(iter + 1));
      }

      const double lr = sched.lr;
      adam_step(params, grads, adam, lr, cfg.adam);
      sched.step(loss);
      ++iter;
      result.history.push_back({iter, loss, lr});
      if (cfg.on_iter) cfg.on_iter(result.history.back());
    }
  }
  return result;
}

}  // namespace respcorr::nn
