#include <benchmark/benchmark.h>

#include "respcorr/corrupt.hpp"
#include "respcorr/estimator.hpp"
#include "respcorr/kspace.hpp"
#include "respcorr/metrics.hpp"
#include "respcorr/phantom.hpp"

using namespace respcorr;

namespace {

ComplexSlice random_slice(std::size_t n, std::uint64_t seed) {
  ComplexSlice s(n, Domain::image);
  Rng rng(seed);
  for (auto& v : s.data) v = Cd{rng.normal(), rng.normal()};
  return s;
}

void BM_fft2c(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ComplexSlice x = random_slice(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fft2c(x));
  }
}
BENCHMARK(BM_fft2c)->Arg(64)->Arg(224);

void BM_corrupt(benchmark::State& state) {
  const Phantom ph = shepp_logan(224);
  Rng rng(2);
  PhaseErrorSeries phi;
  phi.phi.resize(224);
  for (auto& v : phi.phi) v = rng.uniform(-0.63, 0.63);
  CorruptionRecipe recipe;
  recipe.rotation_deg = 5.0;
  recipe.snr = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(corrupt(ph.image, ph.mask, phi, recipe));
  }
}
BENCHMARK(BM_corrupt);

void BM_ssim_224(benchmark::State& state) {
  const Phantom ph = shepp_logan(224);
  const ComplexSlice noisy = random_slice(224, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssim(noisy, ph.image));
  }
}
BENCHMARK(BM_ssim_224);

void BM_gsr_224(benchmark::State& state) {
  const Phantom ph = shepp_logan(224);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gsr_pct(ph.image, ph.mask));
  }
}
BENCHMARK(BM_gsr_224);

void BM_stage1_forward(benchmark::State& state) {
  Stage1Net net(64, 8, 1);
  nn::Tensor x({4, 64, 64});
  Rng rng(4);
  for (auto& v : x.val) v = rng.normal();
  nn::Network::Tape tape;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(x, tape));
  }
}
BENCHMARK(BM_stage1_forward);

void BM_stage1_train_step(benchmark::State& state) {
  Stage1Net net(64, 8, 1);
  nn::Tensor x({4, 64, 64});
  Rng rng(5);
  for (auto& v : x.val) v = rng.normal();
  nn::Network::Tape tape;
  auto grads = net.grad_buffers();
  for (auto _ : state) {
    const nn::Tensor y = net.forward(x, tape);
    nn::Tensor gy(y.shape);
    for (auto& v : gy.val) v = 0.01;
    benchmark::DoNotOptimize(net.backward(gy, tape, grads));
  }
}
BENCHMARK(BM_stage1_train_step);

void BM_navigator_estimate(benchmark::State& state) {
  const Phantom ph = shepp_logan(224);
  const auto sens = synth_sensitivities(8, 224, 6);
  Rng rng(7);
  PhaseErrorSeries phi;
  phi.te_ms = 41.5;
  phi.phi.resize(224);
  for (auto& v : phi.phi) v = rng.uniform(-0.5, 0.5);
  const auto nav = simulate_navigator(ph.image, phi, 55.0, 100.0, sens, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(navigator_estimate(nav, 224, 41.5, 55.0));
  }
}
BENCHMARK(BM_navigator_estimate);

}  // namespace

BENCHMARK_MAIN();
