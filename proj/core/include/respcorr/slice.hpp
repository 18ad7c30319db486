#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "respcorr/errors.hpp"

namespace respcorr {

using Cd = std::complex<double>;

enum class Domain { image, kspace };

inline constexpr double kDefaultTeMs = 41.5;
inline constexpr double kDefaultTrMs = 1200.0;

/// A square 2-D complex plane with acquisition metadata. Rows index the
/// readout direction (j), columns index phase encoding (i). k-space uses the
/// centered convention: DC sits at index n/2 on both axes.
struct ComplexSlice {
  std::size_t n = 0;
  Domain domain = Domain::image;
  double te_ms = kDefaultTeMs;
  double tr_ms = kDefaultTrMs;
  std::vector<Cd> data;  // row-major n*n

  ComplexSlice() = default;
  ComplexSlice(std::size_t size, Domain d, double te = kDefaultTeMs,
               double tr = kDefaultTrMs)
      : n(size), domain(d), te_ms(te), tr_ms(tr), data(size * size) {}

  Cd& at(std::size_t row, std::size_t col) { return data[row * n + col]; }
  const Cd& at(std::size_t row, std::size_t col) const {
    return data[row * n + col];
  }
};

/// Boolean foreground map matching a slice.
struct Mask {
  std::size_t n = 0;
  std::vector<std::uint8_t> in;  // 1 = foreground

  Mask() = default;
  explicit Mask(std::size_t size) : n(size), in(size * size, 0) {}

  bool at(std::size_t row, std::size_t col) const { return in[row * n + col] != 0; }
  void set(std::size_t row, std::size_t col, bool v) {
    in[row * n + col] = v ? 1 : 0;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : in) c += v;
    return c;
  }
};

/// Per-channel complex planes plus coil-sensitivity maps (same layout as
/// ComplexSlice::data). Sensitivities are normalized so that the channel sum
/// of |S|^2 is 1 at every foreground pixel.
struct MultiCoilData {
  std::size_t n = 0;
  Domain domain = Domain::image;
  double te_ms = kDefaultTeMs;
  double tr_ms = kDefaultTrMs;
  std::vector<std::vector<Cd>> channels;
  std::vector<std::vector<Cd>> sensitivities;

  std::size_t coils() const { return channels.size(); }

  /// Wraps a single slice as one channel with unit sensitivity.
  static MultiCoilData single(const ComplexSlice& s) {
    MultiCoilData m;
    m.n = s.n;
    m.domain = s.domain;
    m.te_ms = s.te_ms;
    m.tr_ms = s.tr_ms;
    m.channels.push_back(s.data);
    m.sensitivities.emplace_back(s.n * s.n, Cd{1.0, 0.0});
    return m;
  }
};

/// One phase value (radians) per PE line in acquisition order, tied to the
/// echo time the phases were accrued over.
struct PhaseErrorSeries {
  std::vector<double> phi;
  double te_ms = kDefaultTeMs;
};

}  // namespace respcorr
