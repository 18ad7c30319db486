#include "respcorr/correction.hpp"

#include <cmath>

#include "respcorr/kspace.hpp"

namespace respcorr {

std::vector<Cd> build_phase_matrix(const PhaseErrorSeries& phi, std::size_t n) {
  if (phi.phi.size() != n) {
    throw DimensionError("build_phase_matrix: phase series length != matrix size");
  }
  std::vector<Cd> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Cd v = std::polar(1.0, phi.phi[i]);
    for (std::size_t j = 0; j < n; ++j) m[j * n + i] = v;
  }
  return m;
}

ComplexSlice correct(const MultiCoilData& mc, const PhaseErrorSeries& phi) {
  if (mc.domain != Domain::kspace) {
    throw DataError("correct: input must be multichannel k-space");
  }
  if (mc.channels.empty()) throw DegenerateInputError("correct: no channels");
  if (phi.phi.size() != mc.n) {
    throw DimensionError("correct: phase series length != matrix size");
  }

  MultiCoilData images;
  images.n = mc.n;
  images.domain = Domain::image;
  images.te_ms = mc.te_ms;
  images.tr_ms = mc.tr_ms;
  images.sensitivities = mc.sensitivities;

  ComplexSlice k(mc.n, Domain::kspace, mc.te_ms, mc.tr_ms);
  for (const auto& ch : mc.channels) {
    k.data = ch;
    const ComplexSlice fixed = apply_pe_phase(k, phi, /*conjugate=*/true);
    images.channels.push_back(ifft2c(fixed).data);
  }
  return combine_coils(images);
}

ComplexSlice reconstruct_uncorrected(const MultiCoilData& mc) {
  PhaseErrorSeries zero;
  zero.te_ms = mc.te_ms;
  zero.phi.assign(mc.n, 0.0);
  return correct(mc, zero);
}

}  // namespace respcorr
