#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "respcorr/respiration.hpp"
#include "respcorr/slice.hpp"

namespace respcorr {

/// Label normalization: the maximum training phase error maps to 1.
inline constexpr double kLabelScaleRad = 0.63;

inline constexpr double kNavigatorTeMs = 55.0;

/// Everything needed to replay one corruption deterministically.
struct CorruptionRecipe {
  double peak_rad = kLabelScaleRad;
  std::size_t trace_id = 0;
  double start_offset_s = 0.0;
  double rotation_deg = 0.0;
  bool flip_lr = false;
  double snr = std::numeric_limits<double>::infinity();  // inf = noise-free
  std::uint64_t rng_seed = 0;
};

struct TrainingPair {
  ComplexSlice corrupted;     // image domain
  std::vector<double> label;  // phi / 0.63, one per PE line
  CorruptionRecipe recipe;
  std::size_t image_index = 0;  // dataset bookkeeping
};

/// Rotation about the image center, bilinear interpolation applied to real
/// and imaginary parts independently, zero fill outside.
ComplexSlice rotate_bilinear(const ComplexSlice& x, double deg);

/// Mirror along the PE axis (columns).
ComplexSlice flip_lr(const ComplexSlice& x);

/// Foreground mask for an imported magnitude image: Otsu threshold, largest
/// connected component, hole fill.
Mask auto_mask(const ComplexSlice& image);

/// Mean foreground magnitude; the SNR reference level.
double mean_foreground_magnitude(const ComplexSlice& image, const Mask& mask);

/// Corruption pipeline: optional left-right flip, rotation, fft2c, per-PE-line
/// phase modulation, ifft2c, then i.i.d. Gaussian noise on real and imaginary
/// parts with sigma = mean(|clean| over mask) / snr.
TrainingPair corrupt(const ComplexSlice& clean, const Mask& mask,
                     const PhaseErrorSeries& phi, const CorruptionRecipe& recipe);

/// Draw ranges for make_dataset; the defaults match the training recipe.
struct DatasetConfig {
  std::size_t n = 224;
  double te_ms = kDefaultTeMs;
  double tr_ms = kDefaultTrMs;
  double period_s = 1.2;
  double peak_min_rad = 0.03;
  double peak_max_rad = kLabelScaleRad;
  double rotation_min_deg = -10.0;
  double rotation_max_deg = 10.0;
  bool allow_flip = true;
  double snr_min = 30.0;
  double snr_max = 200.0;
  bool noise_free = false;  // overrides the SNR draw with infinity
};

/// One dataset pair, reproducible in isolation: all randomness comes from a
/// stream derived from (seed, index), which is what makes parallel generation
/// byte-identical to serial.
TrainingPair make_pair(std::span<const ComplexSlice> images,
                       std::span<const Mask> masks,
                       std::span<const RespirationTrace> traces,
                       const DatasetConfig& cfg, std::uint64_t seed,
                       std::size_t index);

std::vector<TrainingPair> make_dataset(std::span<const ComplexSlice> images,
                                       std::span<const Mask> masks,
                                       std::span<const RespirationTrace> traces,
                                       std::size_t count,
                                       const DatasetConfig& cfg,
                                       std::uint64_t seed);

/// Simulated navigator readouts: per TR index i, the object's central
/// k-space readout line per channel rotated by phi_i scaled to the navigator
/// TE, plus complex Gaussian noise at the given SNR. Returns C planes of
/// n lines by n readout samples (row-major, row = TR/PE index).
std::vector<std::vector<Cd>> simulate_navigator(
    const ComplexSlice& clean, const PhaseErrorSeries& phi, double te_nav_ms,
    double snr, std::span<const std::vector<Cd>> sensitivities,
    std::uint64_t seed);

}  // namespace respcorr
