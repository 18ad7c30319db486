#include "respcorr/fft.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

#include "respcorr/errors.hpp"

namespace respcorr::fft {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t next_pow2(std::size_t v) {
  std::size_t m = 1;
  while (m < v) m <<= 1;
  return m;
}

}  // namespace

Dft1d::Dft1d(std::size_t n) : n_(n) {
  if (n == 0) throw DimensionError("Dft1d: zero-length transform");
  pow2_ = is_pow2(n);
  m_ = pow2_ ? n : next_pow2(2 * n - 1);

  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < m_) ++lg;
  bitrev_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    std::uint32_t r = 0;
    for (std::size_t b = 0; b < lg; ++b) r |= ((i >> b) & 1u) << (lg - 1 - b);
    bitrev_[i] = r;
  }
  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) {
    twiddle_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) /
                                      static_cast<double>(m_));
  }

  if (!pow2_) {
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      // k^2 is reduced mod 2n first so the phase argument stays small even
      // for very long transforms.
      const std::uint64_t q =
          (static_cast<std::uint64_t>(k) * k) % (2 * static_cast<std::uint64_t>(n));
      chirp_[k] =
          std::polar(1.0, -kPi * static_cast<double>(q) / static_cast<double>(n));
    }
    std::vector<Cd> b(m_, Cd{0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      b[k] = std::conj(chirp_[k]);
      b[m_ - k] = std::conj(chirp_[k]);
    }
    radix2(b.data(), -1);
    kernel_fft_ = std::move(b);
  }
}

void Dft1d::radix2(Cd* a, int sign) const {
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j = bitrev_[i];
    if (j > i) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= m_; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = m_ / len;
    for (std::size_t base = 0; base < m_; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Cd w = twiddle_[k * step];
        if (sign > 0) w = std::conj(w);
        const Cd u = a[base + k];
        const Cd t = a[base + k + half] * w;
        a[base + k] = u + t;
        a[base + k + half] = u - t;
      }
    }
  }
}

void Dft1d::forward(Cd* data) const {
  if (pow2_) {
    radix2(data, -1);
    return;
  }
  std::vector<Cd> a(m_, Cd{0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
  radix2(a.data(), -1);
  for (std::size_t j = 0; j < m_; ++j) a[j] *= kernel_fft_[j];
  radix2(a.data(), +1);
  const double inv_m = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * inv_m * chirp_[k];
}

void Dft1d::inverse(Cd* data) const {
  if (pow2_) {
    radix2(data, +1);
    return;
  }
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
  forward(data);
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
}

namespace {

bool all_zero(const Cd* v, std::size_t n, std::size_t stride) {
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i * stride] != Cd{0.0, 0.0}) return false;
  }
  return true;
}

}  // namespace

void dft2_inplace(std::vector<Cd>& a, std::size_t n, int sign) {
  if (a.size() != n * n) throw DimensionError("dft2_inplace: size mismatch");
  const Dft1d plan(n);

  // Columns first: bandpass-style inputs are column-sparse, so the zero skip
  // pays off before rows densify the plane.
  std::vector<Cd> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (all_zero(a.data() + c, n, n)) continue;
    for (std::size_t r = 0; r < n; ++r) col[r] = a[r * n + c];
    if (sign < 0) {
      plan.forward(col.data());
    } else {
      plan.inverse(col.data());
    }
    for (std::size_t r = 0; r < n; ++r) a[r * n + c] = col[r];
  }
  for (std::size_t r = 0; r < n; ++r) {
    Cd* row = a.data() + r * n;
    if (all_zero(row, n, 1)) continue;
    if (sign < 0) {
      plan.forward(row);
    } else {
      plan.inverse(row);
    }
  }
}

void fftshift2(std::vector<Cd>& a, std::size_t n) {
  if (a.size() != n * n || n % 2 != 0) {
    throw DimensionError("fftshift2: needs an even square plane");
  }
  const std::size_t h = n / 2;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t c2 = (c + h) % n;
      std::swap(a[r * n + c], a[(r + h) * n + c2]);
    }
  }
}

}  // namespace respcorr::fft
