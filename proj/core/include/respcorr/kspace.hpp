#pragma once

#include <cstdint>
#include <vector>

#include "respcorr/slice.hpp"

namespace respcorr {

/// Centered 2-D Fourier transform, image -> k-space, with symmetric 1/n
/// scaling so the round trip is exact and energy is preserved.
ComplexSlice fft2c(const ComplexSlice& x);

/// Inverse of fft2c, k-space -> image.
ComplexSlice ifft2c(const ComplexSlice& k);

/// Multiplies PE column i by exp(+i*phi_i), or the conjugate. Per-sample
/// magnitudes are unchanged.
ComplexSlice apply_pe_phase(const ComplexSlice& k, const PhaseErrorSeries& phi,
                            bool conjugate = false);

/// Conjugate-sensitivity channel combination:
/// out = (1/C) * sum_c conj(S_c) .* x_c, in the image domain.
ComplexSlice combine_coils(const MultiCoilData& m);

/// Smooth synthetic coil-sensitivity maps: Gaussian magnitude lobes centered
/// on evenly spaced boundary points with gently varying phase, pixelwise
/// normalized to unit sum of squared magnitudes.
std::vector<std::vector<Cd>> synth_sensitivities(std::size_t coils,
                                                 std::size_t n,
                                                 std::uint64_t seed);

}  // namespace respcorr
