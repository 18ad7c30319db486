#include "respcorr/kspace.hpp"

#include <cmath>
#include <numbers>

#include "respcorr/fft.hpp"
#include "respcorr/rng.hpp"

namespace respcorr {

namespace {

void require_plane(const ComplexSlice& x, const char* who) {
  if (x.n < 2 || x.n % 2 != 0) {
    throw DimensionError(std::string(who) + ": matrix size must be even and >= 2");
  }
  if (x.data.size() != x.n * x.n) {
    throw DimensionError(std::string(who) + ": data is not a square plane");
  }
}

}  // namespace

ComplexSlice fft2c(const ComplexSlice& x) {
  require_plane(x, "fft2c");
  if (x.domain != Domain::image) {
    throw DataError("fft2c: input must be in the image domain");
  }
  ComplexSlice out = x;
  out.domain = Domain::kspace;
  fft::fftshift2(out.data, out.n);  // ifftshift == fftshift for even n
  fft::dft2_inplace(out.data, out.n, -1);
  fft::fftshift2(out.data, out.n);
  const double s = 1.0 / static_cast<double>(out.n);
  for (auto& v : out.data) v *= s;
  return out;
}

ComplexSlice ifft2c(const ComplexSlice& k) {
  require_plane(k, "ifft2c");
  if (k.domain != Domain::kspace) {
    throw DataError("ifft2c: input must be in the k-space domain");
  }
  ComplexSlice out = k;
  out.domain = Domain::image;
  fft::fftshift2(out.data, out.n);
  fft::dft2_inplace(out.data, out.n, +1);
  fft::fftshift2(out.data, out.n);
  const double s = 1.0 / static_cast<double>(out.n);
  for (auto& v : out.data) v *= s;
  return out;
}

ComplexSlice apply_pe_phase(const ComplexSlice& k, const PhaseErrorSeries& phi,
                            bool conjugate) {
  require_plane(k, "apply_pe_phase");
  if (phi.phi.size() != k.n) {
    throw DimensionError("apply_pe_phase: phase series length != matrix size");
  }
  ComplexSlice out = k;
  const std::size_t n = k.n;
  for (std::size_t i = 0; i < n; ++i) {
    const Cd rot = std::polar(1.0, conjugate ? -phi.phi[i] : phi.phi[i]);
    for (std::size_t j = 0; j < n; ++j) out.data[j * n + i] *= rot;
  }
  return out;
}

ComplexSlice combine_coils(const MultiCoilData& m) {
  if (m.channels.empty()) {
    throw DegenerateInputError("combine_coils: no channels");
  }
  if (m.sensitivities.size() != m.channels.size()) {
    throw DimensionError("combine_coils: channel/sensitivity count mismatch");
  }
  if (m.domain != Domain::image) {
    throw DataError("combine_coils: channels must be in the image domain");
  }
  const std::size_t np = m.n * m.n;
  for (const auto& ch : m.channels) {
    if (ch.size() != np) throw DimensionError("combine_coils: channel size mismatch");
  }
  for (const auto& s : m.sensitivities) {
    if (s.size() != np) throw DimensionError("combine_coils: sensitivity size mismatch");
  }
  ComplexSlice out(m.n, Domain::image, m.te_ms, m.tr_ms);
  const double inv_c = 1.0 / static_cast<double>(m.coils());
  for (std::size_t c = 0; c < m.coils(); ++c) {
    const auto& x = m.channels[c];
    const auto& s = m.sensitivities[c];
    for (std::size_t p = 0; p < np; ++p) out.data[p] += std::conj(s[p]) * x[p];
  }
  for (auto& v : out.data) v *= inv_c;
  return out;
}

std::vector<std::vector<Cd>> synth_sensitivities(std::size_t coils,
                                                 std::size_t n,
                                                 std::uint64_t seed) {
  if (coils == 0) {
    throw DegenerateInputError("synth_sensitivities: coil count must be >= 1");
  }
  if (n < 2) throw DimensionError("synth_sensitivities: matrix size too small");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  Rng rng(seed);
  const double center = 0.5 * static_cast<double>(n - 1);
  const double radius = 0.5 * static_cast<double>(n);
  const double sigma = 0.6 * static_cast<double>(n);

  std::vector<std::vector<Cd>> maps(coils, std::vector<Cd>(n * n));
  for (std::size_t c = 0; c < coils; ++c) {
    const double ang = kTwoPi * static_cast<double>(c) / static_cast<double>(coils);
    const double cx = center + radius * std::cos(ang);
    const double cy = center + radius * std::sin(ang);
    const double u = rng.uniform(-0.7, 0.7);  // phase-gradient cycles across FOV
    const double v = rng.uniform(-0.7, 0.7);
    const double phase0 = rng.uniform(0.0, kTwoPi);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t col = 0; col < n; ++col) {
        const double dx = static_cast<double>(col) - cx;
        const double dy = static_cast<double>(r) - cy;
        const double mag = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        const double ph =
            phase0 + kTwoPi * (u * static_cast<double>(col) + v * static_cast<double>(r)) /
                         static_cast<double>(n);
        maps[c][r * n + col] = std::polar(mag, ph);
      }
    }
  }
  for (std::size_t p = 0; p < n * n; ++p) {
    double sum = 0.0;
    for (std::size_t c = 0; c < coils; ++c) sum += std::norm(maps[c][p]);
    const double inv = 1.0 / std::sqrt(sum);
    for (std::size_t c = 0; c < coils; ++c) maps[c][p] *= inv;
  }
  return maps;
}

}  // namespace respcorr
