#pragma once

#include <cstdint>
#include <vector>

#include "respcorr/slice.hpp"

namespace respcorr {

/// Sampled physiological time series in arbitrary units.
struct RespirationTrace {
  std::vector<double> samples;
  double rate_hz = 0.0;

  double duration_s() const {
    return static_cast<double>(samples.size()) / rate_hz;
  }
};

inline constexpr double kRespPassLowHz = 0.1;
inline constexpr double kRespPassHighHz = 1.0;
inline constexpr double kRespTransitionHz = 0.05;
inline constexpr double kMedianWindowS = 0.2;

/// Median filter (0.2 s window) followed by a zero-phase frequency-domain
/// bandpass, flat over 0.1-1 Hz with raised-cosine transitions extending
/// 0.05 Hz outward. Output has the same length/rate and zero mean.
RespirationTrace preprocess_respiration(const RespirationTrace& raw);

/// Linear interpolation of the trace at start_s + k*period_s, k = 0..n-1.
std::vector<double> sample_trace(const RespirationTrace& t, double period_s,
                                 std::size_t n, double start_s);

/// Proportional rescale so max |phi| == peak_rad, preserving shape.
PhaseErrorSeries scale_to_peak(const std::vector<double>& values,
                               double peak_rad, double te_ms = kDefaultTeMs);

enum class BreathingKind { natural, deep };

/// Synthetic stand-in for recorded breathing: a quasi-periodic oscillation
/// with drifting rate and depth plus band-limited noise, run through the
/// standard preprocessing. Deep breathing is slower and more regular with a
/// stronger second harmonic.
RespirationTrace synthetic_trace(std::uint64_t seed, double duration_s = 390.0,
                                 double rate_hz = 500.0,
                                 BreathingKind kind = BreathingKind::deep);

}  // namespace respcorr
