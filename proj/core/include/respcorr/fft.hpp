#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace respcorr::fft {

using Cd = std::complex<double>;

/// Reusable 1-D DFT plan, unnormalized. Power-of-two lengths run an iterative
/// radix-2 transform; everything else goes through Bluestein's chirp-z
/// algorithm on a power-of-two convolution. Plans are immutable after
/// construction and safe to share across threads.
class Dft1d {
 public:
  explicit Dft1d(std::size_t n);

  std::size_t size() const { return n_; }

  /// In-place forward transform: X_j = sum_k x_k exp(-2*pi*i*j*k/n).
  void forward(Cd* data) const;

  /// In-place unnormalized inverse (conjugate of forward).
  void inverse(Cd* data) const;

 private:
  void radix2(Cd* data, int sign) const;  // size m_, sign -1 fwd / +1 inv

  std::size_t n_ = 0;
  std::size_t m_ = 0;  // radix-2 working size (== n_ when power of two)
  bool pow2_ = false;
  std::vector<std::uint32_t> bitrev_;
  std::vector<Cd> twiddle_;     // exp(-2*pi*i*k/m), k < m/2
  std::vector<Cd> chirp_;       // exp(-i*pi*k^2/n), Bluestein only
  std::vector<Cd> kernel_fft_;  // FFT of the wrapped conjugate chirp
};

/// In-place 2-D DFT of an n-by-n row-major plane, both axes, unnormalized.
/// sign -1 is forward, +1 inverse. All-zero rows/columns are skipped (their
/// transform is exactly zero either way).
void dft2_inplace(std::vector<Cd>& a, std::size_t n, int sign);

/// Swap half-planes on both axes (its own inverse for even n).
void fftshift2(std::vector<Cd>& a, std::size_t n);

}  // namespace respcorr::fft
