#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "respcorr/corrupt.hpp"
#include "respcorr/metrics.hpp"
#include "respcorr/phantom.hpp"
#include "test_util.hpp"

using namespace respcorr;

#include "metric_oracles.hpp"

TEST_CASE("nrmse basics") {
  const ComplexSlice a = testutil::random_slice(16, 1);
  CHECK(nrmse_pct(a, a) == 0.0);

  ComplexSlice scaled = a;
  for (auto& v : scaled.data) v *= 1.1;
  CHECK(nrmse_pct(scaled, a) == doctest::Approx(10.0).epsilon(1e-9));

  ComplexSlice zero(16, Domain::image);
  CHECK_THROWS_AS(nrmse_pct(a, zero), DegenerateInputError);
}

TEST_CASE("nrmse is scale invariant") {
  const ComplexSlice a = testutil::random_slice(16, 2);
  const ComplexSlice b = testutil::random_slice(16, 3);
  ComplexSlice a2 = a, b2 = b;
  for (auto& v : a2.data) v *= 7.3;
  for (auto& v : b2.data) v *= 7.3;
  CHECK(nrmse_pct(a, b) == doctest::Approx(nrmse_pct(a2, b2)).epsilon(1e-12));
}

TEST_CASE("ssim identity, symmetry, noise direction") {
  const Phantom ph = shepp_logan(64);
  CHECK(ssim(ph.image, ph.image) == doctest::Approx(1.0).epsilon(1e-9));

  // symmetric when the dynamic range is pinned externally
  const ComplexSlice a = testutil::random_slice(32, 4);
  const ComplexSlice b = testutil::random_slice(32, 5);
  CHECK(ssim(a, b, 2.0) == doctest::Approx(ssim(b, a, 2.0)).epsilon(1e-9));

  // strong noise lowers similarity
  Rng rng(6);
  ComplexSlice noisy = ph.image;
  const double sigma = mean_foreground_magnitude(ph.image, ph.mask) / 5.0;
  for (auto& v : noisy.data) v += Cd{rng.normal(0.0, sigma), rng.normal(0.0, sigma)};
  CHECK(ssim(noisy, ph.image) < 0.9);

  ComplexSlice zeros(32, Domain::image);
  CHECK(ssim(zeros, zeros) == 1.0);
}

TEST_CASE("gsr on a constructed three-region frame") {
  const std::size_t n = 16;
  Mask mask(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < 4; ++c) mask.set(r, c, true);
  }
  // ghost region = columns 8..11; dilation keeps 6..13 out of the background
  ComplexSlice img(n, Domain::image);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double v = 0.01;
      if (mask.at(r, c)) v = 1.0;
      else if (c >= 8 && c < 12) v = 0.05;
      img.at(r, c) = Cd{v, 0.0};
    }
  }
  CHECK(gsr_pct(img, mask) == doctest::Approx(4.0).epsilon(1e-9));

  // clean noise-free phantom clamps to zero
  const Phantom ph = shepp_logan(64);
  CHECK(gsr_pct(ph.image, ph.mask) == 0.0);

  Mask full(n);
  for (auto& v : full.in) v = 1;
  CHECK_THROWS_AS(gsr_pct(img, full), DegenerateInputError);
}

TEST_CASE("gsr is invariant to global intensity scaling") {
  const Phantom ph = shepp_logan(64);
  Rng rng(7);
  ComplexSlice img = ph.image;
  for (auto& v : img.data) v += Cd{rng.normal(0.0, 0.02), rng.normal(0.0, 0.02)};
  ComplexSlice scaled = img;
  for (auto& v : scaled.data) v *= 11.0;
  CHECK(gsr_pct(img, ph.mask) ==
        doctest::Approx(gsr_pct(scaled, ph.mask)).epsilon(1e-9));
}

TEST_CASE("pearson basics") {
  std::vector<double> a{1.0, 2.0, 3.0};
  CHECK(pearson(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> neg{-1.0, -2.0, -3.0};
  CHECK(pearson(a, neg) == doctest::Approx(-1.0).epsilon(1e-12));
  std::vector<double> b{1.0, 2.0, 4.0};
  CHECK(pearson(a, b) == doctest::Approx(0.9820).epsilon(1e-3));

  std::vector<double> constant{2.0, 2.0, 2.0};
  CHECK_THROWS_AS(pearson(a, constant), DegenerateInputError);
  std::vector<double> one{1.0};
  CHECK_THROWS_AS(pearson(one, one), DegenerateInputError);
}

TEST_CASE("pearson is invariant to positive affine maps") {
  Rng rng(9);
  std::vector<double> a(50), b(50), a2(50);
  for (std::size_t i = 0; i < 50; ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
    a2[i] = 3.0 * a[i] + 1.5;
  }
  CHECK(pearson(a, b) == doctest::Approx(pearson(a2, b)).epsilon(1e-12));
}

TEST_CASE("all four metrics match brute-force oracles on random 16x16 frames") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ComplexSlice test = testutil::random_slice(16, 1000 + seed);
    ComplexSlice ref = testutil::random_slice(16, 2000 + seed);
    // keep magnitudes well away from zero so the frames look image-like
    for (auto& v : test.data) v += Cd{3.0, 0.0};
    for (auto& v : ref.data) v += Cd{3.0, 0.0};

    CHECK(nrmse_pct(test, ref) ==
          doctest::Approx(oracle::nrmse(test, ref)).epsilon(1e-9));

    double range = 0.0;
    for (const auto& v : ref.data) range = std::max(range, std::abs(v));
    CHECK(ssim(test, ref, range) ==
          doctest::Approx(oracle::ssim(test, ref, range)).epsilon(1e-9));

    Rng rng(3000 + seed);
    Mask mask(16);
    for (std::size_t r = 0; r < 16; ++r) {
      for (std::size_t c = 0; c < 3; ++c) mask.set(r, c, true);
    }
    CHECK(gsr_pct(test, mask) ==
          doctest::Approx(oracle::gsr(test, mask)).epsilon(1e-9));

    std::vector<double> a(64), b(64);
    for (std::size_t i = 0; i < 64; ++i) {
      a[i] = rng.normal();
      b[i] = 0.4 * a[i] + rng.normal();
    }
    CHECK(pearson(a, b) == doctest::Approx(oracle::pearson(a, b)).epsilon(1e-9));
  }
}
