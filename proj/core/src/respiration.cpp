#include "respcorr/respiration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "respcorr/fft.hpp"
#include "respcorr/rng.hpp"

namespace respcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised-cosine bandpass gain at frequency f (Hz), flat over the passband.
double bandpass_gain(double f) {
  const double lo = kRespPassLowHz;
  const double hi = kRespPassHighHz;
  const double t = kRespTransitionHz;
  const double af = std::abs(f);
  if (af < lo - t || af > hi + t) return 0.0;
  if (af < lo) return 0.5 * (1.0 - std::cos(std::numbers::pi * (af - (lo - t)) / t));
  if (af > hi) return 0.5 * (1.0 + std::cos(std::numbers::pi * (af - hi) / t));
  return 1.0;
}

std::vector<double> median_filter(const std::vector<double>& x, std::size_t half) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  std::vector<double> window;
  window.reserve(2 * half + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    window.assign(x.begin() + lo, x.begin() + hi + 1);
    auto mid = window.begin() + (window.size() / 2);
    std::nth_element(window.begin(), mid, window.end());
    double m = *mid;
    if (window.size() % 2 == 0) {
      auto lo_it = std::max_element(window.begin(), mid);
      m = 0.5 * (m + *lo_it);
    }
    out[i] = m;
  }
  return out;
}

}  // namespace

RespirationTrace preprocess_respiration(const RespirationTrace& raw) {
  if (raw.rate_hz < 2.0) {
    throw DataError("preprocess_respiration: sampling rate must be >= 2 Hz");
  }
  const std::size_t n = raw.samples.size();
  const std::size_t half =
      static_cast<std::size_t>(std::floor(0.5 * kMedianWindowS * raw.rate_hz));
  if (n < 2 * half + 1) {
    throw DataError("preprocess_respiration: trace shorter than the filter window");
  }

  const std::vector<double> med = median_filter(raw.samples, half);

  std::vector<fft::Cd> spec(n);
  for (std::size_t i = 0; i < n; ++i) spec[i] = fft::Cd{med[i], 0.0};
  const fft::Dft1d plan(n);
  plan.forward(spec.data());
  for (std::size_t k = 0; k < n; ++k) {
    const double bin = static_cast<double>(std::min(k, n - k));
    const double f = bin * raw.rate_hz / static_cast<double>(n);
    spec[k] *= bandpass_gain(f);
  }
  plan.inverse(spec.data());

  RespirationTrace out;
  out.rate_hz = raw.rate_hz;
  out.samples.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = spec[i].real() * inv_n;
    mean += out.samples[i];
  }
  mean *= inv_n;
  for (auto& v : out.samples) v -= mean;
  return out;
}

std::vector<double> sample_trace(const RespirationTrace& t, double period_s,
                                 std::size_t n, double start_s) {
  if (t.rate_hz <= 0.0 || t.samples.empty()) {
    throw DegenerateInputError("sample_trace: empty trace");
  }
  if (period_s <= 0.0 || start_s < 0.0) {
    throw IndexError("sample_trace: period and start must be nonnegative");
  }
  const double last = start_s + static_cast<double>(n - 1) * period_s;
  if (n > 0 && last > t.duration_s()) {
    throw IndexError("sample_trace: sampling window exceeds trace duration");
  }
  std::vector<double> out(n);
  const std::size_t len = t.samples.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double pos = (start_s + static_cast<double>(k) * period_s) * t.rate_hz;
    std::size_t i0 = static_cast<std::size_t>(pos);
    if (i0 >= len - 1) i0 = len - 2;  // hold the final segment at the edge
    const double frac = pos - static_cast<double>(i0);
    out[k] = t.samples[i0] * (1.0 - frac) + t.samples[i0 + 1] * frac;
  }
  return out;
}

PhaseErrorSeries scale_to_peak(const std::vector<double>& values,
                               double peak_rad, double te_ms) {
  if (peak_rad <= 0.0) {
    throw DegenerateInputError("scale_to_peak: peak must be positive");
  }
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) {
    throw DegenerateInputError("scale_to_peak: all-zero input");
  }
  PhaseErrorSeries out;
  out.te_ms = te_ms;
  out.phi.resize(values.size());
  const double s = peak_rad / peak;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // pinning the peak elements keeps max|phi| exactly peak_rad and makes
    // rescaling at the same peak idempotent
    out.phi[i] = std::abs(values[i]) == peak ? std::copysign(peak_rad, values[i])
                                             : values[i] * s;
  }
  return out;
}

RespirationTrace synthetic_trace(std::uint64_t seed, double duration_s,
                                 double rate_hz, BreathingKind kind) {
  Rng rng(seed);
  const std::size_t n =
      static_cast<std::size_t>(std::llround(duration_s * rate_hz));

  const bool deep = kind == BreathingKind::deep;
  const double f0 = deep ? rng.uniform(0.12, 0.18) : rng.uniform(0.2, 0.33);
  const double harmonic = deep ? rng.uniform(0.15, 0.3) : rng.uniform(0.1, 0.2);
  const double depth = deep ? 1.0 : 0.5;

  // Slow wander of rate and depth.
  const double wt1 = rng.uniform(40.0, 120.0), wp1 = rng.uniform(0.0, kTwoPi);
  const double wt2 = rng.uniform(15.0, 50.0), wp2 = rng.uniform(0.0, kTwoPi);
  const double wt3 = rng.uniform(60.0, 130.0), wp3 = rng.uniform(0.0, kTwoPi);
  const double hp = rng.uniform(0.0, kTwoPi);
  const double noise_sd = deep ? 0.03 : 0.06;

  RespirationTrace raw;
  raw.rate_hz = rate_hz;
  raw.samples.resize(n);
  const double dt = 1.0 / rate_hz;
  double theta = rng.uniform(0.0, kTwoPi);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double wander =
        std::sin(kTwoPi * t / wt1 + wp1) + 0.6 * std::sin(kTwoPi * t / wt2 + wp2);
    const double f = f0 * (1.0 + 0.12 * wander);
    theta += kTwoPi * f * dt;
    // Breathing depth waxes and wanes on two slow time scales; the deepest
    // breaths are sparse and set the peak amplitude.
    const double env_a = 0.5 * (1.0 + std::sin(kTwoPi * t / wt2 + wp1));
    const double env_b = 0.5 * (1.0 + std::sin(kTwoPi * t / wt3 + wp3));
    const double env = env_a * env_b;
    const double amp = depth * (0.2 + 0.8 * env * env);
    raw.samples[i] = amp * (std::sin(theta) + harmonic * std::sin(2.0 * theta + hp)) +
                     rng.normal(0.0, noise_sd);
  }
  return preprocess_respiration(raw);
}

}  // namespace respcorr
