#pragma once

#include <vector>

#include "respcorr/slice.hpp"

namespace respcorr {

/// Phase compensation matrix: the phase series extended along the readout
/// direction, M[j][i] = exp(+i*phi_i) for every row j.
std::vector<Cd> build_phase_matrix(const PhaseErrorSeries& phi, std::size_t n);

/// Conjugate-phase correction: each channel's k-space is multiplied by
/// conj(M), inverse-transformed, and the channels are combined with conjugate
/// sensitivities.
ComplexSlice correct(const MultiCoilData& mc, const PhaseErrorSeries& phi);

/// correct() with a zero phase series.
ComplexSlice reconstruct_uncorrected(const MultiCoilData& mc);

}  // namespace respcorr
