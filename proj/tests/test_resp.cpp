#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "respcorr/corrupt.hpp"
#include "respcorr/kspace.hpp"
#include "respcorr/metrics.hpp"
#include "respcorr/phantom.hpp"
#include "respcorr/respiration.hpp"
#include "test_util.hpp"

using namespace respcorr;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RespirationTrace sinusoid(double freq_hz, double rate_hz, double duration_s,
                          double amplitude = 1.0) {
  RespirationTrace t;
  t.rate_hz = rate_hz;
  const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * rate_hz));
  t.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.samples[i] = amplitude * std::sin(kTwoPi * freq_hz * i / rate_hz);
  }
  return t;
}

// least-squares amplitude of a known-frequency sinusoid
double fitted_amplitude(const RespirationTrace& t, double freq_hz) {
  double ss = 0.0, sc = 0.0;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const double ang = kTwoPi * freq_hz * i / t.rate_hz;
    ss += t.samples[i] * std::sin(ang);
    sc += t.samples[i] * std::cos(ang);
  }
  const double half_n = 0.5 * static_cast<double>(t.samples.size());
  return std::hypot(ss / half_n, sc / half_n);
}

double rms(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("passband sinusoid survives preprocessing") {
  const RespirationTrace in = sinusoid(0.3, 500.0, 60.0);
  const RespirationTrace out = preprocess_respiration(in);
  REQUIRE(out.samples.size() == in.samples.size());
  const double amp = fitted_amplitude(out, 0.3);
  CHECK(amp > 0.98);
  CHECK(amp < 1.02);

  double mean = 0.0;
  for (double v : out.samples) mean += v;
  mean /= static_cast<double>(out.samples.size());
  CHECK(std::abs(mean) < 1e-12);
}

TEST_CASE("stopband sinusoid is rejected") {
  const RespirationTrace in = sinusoid(5.0, 500.0, 60.0);
  const RespirationTrace out = preprocess_respiration(in);
  CHECK(rms(out.samples) < 0.05 * rms(in.samples));
}

TEST_CASE("median filter kills an isolated spike") {
  RespirationTrace in;
  in.rate_hz = 500.0;
  in.samples.assign(5000, 0.0);
  in.samples[2500] = 100.0;
  const RespirationTrace out = preprocess_respiration(in);
  double peak = 0.0;
  for (double v : out.samples) peak = std::max(peak, std::abs(v));
  CHECK(peak < 1.0);
}

TEST_CASE("preprocessing rejects too-short traces") {
  RespirationTrace in;
  in.rate_hz = 500.0;
  in.samples.assign(50, 1.0);  // shorter than the 101-sample median window
  CHECK_THROWS_AS(preprocess_respiration(in), DataError);
}

TEST_CASE("sample_trace on constants, ramps, and the 390 s window") {
  RespirationTrace constant;
  constant.rate_hz = 10.0;
  constant.samples.assign(1000, 3.5);
  for (double v : sample_trace(constant, 1.2, 16, 2.0)) CHECK(v == 3.5);

  RespirationTrace ramp;
  ramp.rate_hz = 10.0;
  ramp.samples.resize(1000);
  for (std::size_t i = 0; i < 1000; ++i) ramp.samples[i] = 0.25 * static_cast<double>(i);
  const auto vals = sample_trace(ramp, 1.2, 16, 2.0);
  const double slope_per_sample = 0.25 * ramp.rate_hz;  // per second
  for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
    CHECK(std::abs((vals[k + 1] - vals[k]) - 1.2 * slope_per_sample) < 1e-9);
  }

  // 390 s at 500 Hz: 224 points of 1.2 s fit for start <= 122.4 s
  RespirationTrace paper;
  paper.rate_hz = 500.0;
  paper.samples.assign(static_cast<std::size_t>(390 * 500), 0.0);
  CHECK_NOTHROW(sample_trace(paper, 1.2, 224, 122.4));
  CHECK_THROWS_AS(sample_trace(paper, 1.2, 224, 122.5), IndexError);
}

TEST_CASE("scale_to_peak contract") {
  const auto out = scale_to_peak({1.0, -2.0, 0.5}, 0.63);
  CHECK(out.phi[0] == doctest::Approx(0.315).epsilon(1e-12));
  CHECK(out.phi[1] == -0.63);
  CHECK(out.phi[2] == doctest::Approx(0.1575).epsilon(1e-12));

  // the 0.63 rad cap is the 2.5 Hz shift at TE 40 ms
  CHECK(std::abs(kTwoPi * 2.5 * 0.040 - 0.63) < 0.002);

  // exact idempotence at the same peak
  Rng rng(8);
  std::vector<double> vals(64);
  for (auto& v : vals) v = rng.normal();
  const auto once = scale_to_peak(vals, 0.4);
  const auto twice = scale_to_peak(once.phi, 0.4);
  CHECK(once.phi == twice.phi);
  double peak = 0.0;
  for (double v : once.phi) peak = std::max(peak, std::abs(v));
  CHECK(peak == 0.4);

  CHECK_THROWS_AS(scale_to_peak({1.0}, 0.0), DegenerateInputError);
  CHECK_THROWS_AS(scale_to_peak({0.0, 0.0}, 0.5), DegenerateInputError);
}

TEST_CASE("corrupt with a null recipe is the identity") {
  const Phantom ph = shepp_logan(64);
  PhaseErrorSeries zero;
  zero.phi.assign(64, 0.0);
  CorruptionRecipe recipe;  // defaults: no flip, no rotation, snr = inf
  const TrainingPair pair = corrupt(ph.image, ph.mask, zero, recipe);
  CHECK(testutil::rel_l2_diff(pair.corrupted.data, ph.image.data) < 1e-10);
  for (double v : pair.label) CHECK(v == 0.0);
}

TEST_CASE("sinusoidal phase error raises the ghost-to-signal ratio") {
  const std::size_t n = 64;
  const Phantom ph = shepp_logan(n);
  PhaseErrorSeries phi;
  phi.phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi.phi[i] = 0.4 * std::cos(std::numbers::pi * static_cast<double>(i));
  }
  CorruptionRecipe recipe;
  const TrainingPair pair = corrupt(ph.image, ph.mask, phi, recipe);
  const double gsr_corrupted = gsr_pct(pair.corrupted, ph.mask);
  const double gsr_clean = gsr_pct(ph.image, ph.mask);
  CHECK(gsr_corrupted > gsr_clean);
  CHECK(gsr_corrupted > 1.0);
}

TEST_CASE("deep-breathing corruption lands in the reported NRMSE band") {
  const Phantom ph = shepp_logan(224);
  const RespirationTrace trace = synthetic_trace(3, 390.0, 500.0, BreathingKind::deep);
  const auto sampled = sample_trace(trace, 1.2, 224, 30.0);
  const PhaseErrorSeries phi = scale_to_peak(sampled, 0.63);
  CorruptionRecipe recipe;  // noise-free
  const TrainingPair pair = corrupt(ph.image, ph.mask, phi, recipe);
  const double err = nrmse_pct(pair.corrupted, ph.image);
  CHECK(err > 2.0);
  CHECK(err < 15.0);
}

TEST_CASE("noise-free corruption is invertible by the conjugate phase") {
  const Phantom ph = shepp_logan(64);
  Rng rng(3);
  PhaseErrorSeries phi;
  phi.phi.resize(64);
  for (auto& v : phi.phi) v = rng.uniform(-0.63, 0.63);
  CorruptionRecipe recipe;
  recipe.rotation_deg = 4.0;
  recipe.flip_lr = true;
  const TrainingPair pair = corrupt(ph.image, ph.mask, phi, recipe);

  const ComplexSlice restored =
      ifft2c(apply_pe_phase(fft2c(pair.corrupted), phi, /*conjugate=*/true));
  const ComplexSlice reference = rotate_bilinear(flip_lr(ph.image), 4.0);
  CHECK(testutil::rel_l2_diff(restored.data, reference.data) < 1e-10);
}

TEST_CASE("corruption noise level matches the requested SNR") {
  const std::size_t n = 224;
  const Phantom ph = shepp_logan(n);
  PhaseErrorSeries zero;
  zero.phi.assign(n, 0.0);
  CorruptionRecipe noisy;
  noisy.snr = 50.0;
  noisy.rng_seed = 77;
  const TrainingPair pair = corrupt(ph.image, ph.mask, zero, noisy);

  const double sigma_expected = mean_foreground_magnitude(ph.image, ph.mask) / 50.0;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t p = 0; p < n * n; ++p) {
    if (!ph.mask.in[p]) {
      const double d = pair.corrupted.data[p].real() - ph.image.data[p].real();
      acc += d * d;
      ++count;
    }
  }
  const double sigma_measured = std::sqrt(acc / static_cast<double>(count));
  CHECK(std::abs(sigma_measured - sigma_expected) < 0.05 * sigma_expected);
}

TEST_CASE("corrupt rejects bad recipes") {
  const Phantom ph = shepp_logan(32);
  PhaseErrorSeries phi;
  phi.phi.assign(16, 0.0);
  CorruptionRecipe recipe;
  CHECK_THROWS_AS(corrupt(ph.image, ph.mask, phi, recipe), DimensionError);
  phi.phi.assign(32, 0.0);
  recipe.snr = 0.0;
  CHECK_THROWS_AS(corrupt(ph.image, ph.mask, phi, recipe), DegenerateInputError);
}

TEST_CASE("rotation and flip geometry") {
  const std::size_t n = 64;
  const Phantom ph = shepp_logan(n);
  CHECK(flip_lr(flip_lr(ph.image)).data == ph.image.data);
  CHECK(rotate_bilinear(ph.image, 0.0).data == ph.image.data);

  // a blob right of center maps below center under a +90 degree rotation
  ComplexSlice blob(n, Domain::image);
  const std::size_t c0 = n / 2;
  blob.at(c0, c0 + 20) = Cd{1.0, 0.0};
  const ComplexSlice rot = rotate_bilinear(blob, 90.0);
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t p = 0; p < n * n; ++p) {
    if (std::abs(rot.data[p]) > best_mag) {
      best_mag = std::abs(rot.data[p]);
      best = p;
    }
  }
  const long br = static_cast<long>(best / n), bc = static_cast<long>(best % n);
  CHECK(std::abs(br - static_cast<long>(c0 + 20)) <= 1);
  CHECK(std::abs(bc - static_cast<long>(c0)) <= 1);
}

TEST_CASE("auto_mask recovers the phantom support") {
  // 224 is the native matrix size; coarser grids rasterize the skull rim
  // with sub-pixel gaps that no intensity threshold can close.
  const Phantom ph = shepp_logan(224);
  Rng rng(13);
  ComplexSlice noisy = ph.image;
  const double sigma = mean_foreground_magnitude(ph.image, ph.mask) / 150.0;
  for (auto& v : noisy.data) v += Cd{rng.normal(0.0, sigma), rng.normal(0.0, sigma)};
  const Mask m = auto_mask(noisy);
  std::size_t overlap = 0;
  for (std::size_t p = 0; p < m.in.size(); ++p) {
    if (m.in[p] && ph.mask.in[p]) ++overlap;
  }
  CHECK(static_cast<double>(overlap) >=
        0.9 * static_cast<double>(ph.mask.count()));
  CHECK(!m.at(0, 0));
  CHECK(!m.at(223, 223));
}

TEST_CASE("make_dataset determinism and draw coverage") {
  const Phantom ph = shepp_logan(32);
  std::vector<ComplexSlice> images{ph.image};
  std::vector<Mask> masks{ph.mask};
  std::vector<RespirationTrace> traces;
  for (std::uint64_t s = 0; s < 3; ++s) {
    traces.push_back(synthetic_trace(s, 60.0, 50.0));
  }
  DatasetConfig cfg;
  cfg.n = 32;

  CHECK(make_dataset(images, masks, traces, 0, cfg, 1).empty());

  const auto a = make_dataset(images, masks, traces, 10, cfg, 42);
  const auto b = make_dataset(images, masks, traces, 10, cfg, 42);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].corrupted.data == b[i].corrupted.data);
    CHECK(a[i].label == b[i].label);
  }

  // per-index generation is order independent
  const TrainingPair solo = make_pair(images, masks, traces, cfg, 42, 7);
  CHECK(solo.corrupted.data == a[7].corrupted.data);

  const auto big = make_dataset(images, masks, traces, 1000, cfg, 9);
  double peak_min = 1e9, peak_max = 0.0;
  for (const auto& pair : big) {
    peak_min = std::min(peak_min, pair.recipe.peak_rad);
    peak_max = std::max(peak_max, pair.recipe.peak_rad);
  }
  CHECK(peak_min < 0.06);
  CHECK(peak_max > 0.60);
}

TEST_CASE("simulated navigator lines carry the injected phase") {
  const std::size_t n = 32;
  const Phantom ph = shepp_logan(n);

  PhaseErrorSeries zero;
  zero.phi.assign(n, 0.0);
  zero.te_ms = 41.5;
  const auto quiet = simulate_navigator(ph.image, zero, 55.0,
                                        std::numeric_limits<double>::infinity(),
                                        {}, 0);
  REQUIRE(quiet.size() == 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(quiet[0][i * n + j] - quiet[0][j]) < 1e-12);
    }
  }

  PhaseErrorSeries single = zero;
  single.phi[5] = 0.3;
  const auto nav = simulate_navigator(ph.image, single, 55.0,
                                      std::numeric_limits<double>::infinity(),
                                      {}, 0);
  const Cd rot = std::polar(1.0, 0.3 * 55.0 / 41.5);
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(nav[0][5 * n + j] - nav[0][j] * rot) < 1e-12);
  }

  PhaseErrorSeries bad_te = zero;
  bad_te.te_ms = 0.0;
  CHECK_THROWS_AS(simulate_navigator(ph.image, bad_te, 55.0, 100.0, {}, 0),
                  DegenerateInputError);
}

TEST_CASE("synthetic traces are deterministic, zero mean, band limited") {
  const RespirationTrace a = synthetic_trace(5, 60.0, 100.0);
  const RespirationTrace b = synthetic_trace(5, 60.0, 100.0);
  CHECK(a.samples == b.samples);
  CHECK(rms(a.samples) > 1e-3);

  double mean = 0.0;
  for (double v : a.samples) mean += v;
  CHECK(std::abs(mean / static_cast<double>(a.samples.size())) < 1e-12);

  const RespirationTrace c = synthetic_trace(6, 60.0, 100.0);
  CHECK(a.samples != c.samples);
}
