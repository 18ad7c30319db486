#pragma once

#include <span>

#include "respcorr/slice.hpp"

namespace respcorr {

/// 100 * || |test| - |ref| ||_2 / || |ref| ||_2 over the full frame.
double nrmse_pct(const ComplexSlice& test, const ComplexSlice& ref);

/// Mean local structural similarity of the magnitude images. Gaussian window
/// sigma 1.5 over 11x11 (window fully inside the frame), K1 = 0.01,
/// K2 = 0.03, dynamic range = max |ref| unless given explicitly.
double ssim(const ComplexSlice& test, const ComplexSlice& ref);
double ssim(const ComplexSlice& test, const ComplexSlice& ref,
            double dynamic_range);

/// Ghost-to-signal ratio in percent. Ghost region: mask circularly shifted by
/// n/2 along PE minus the mask; background: the rest, kept 2 pixels clear of
/// the ghost region. 100 * (mean|ghost| - mean|background|) / mean|in-mask|,
/// clamped below at zero.
double gsr_pct(const ComplexSlice& image, const Mask& mask);

/// Sample Pearson correlation coefficient.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace respcorr
