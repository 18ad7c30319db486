#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "respcorr/rng.hpp"
#include "respcorr/slice.hpp"

namespace testutil {

inline respcorr::ComplexSlice random_slice(std::size_t n, std::uint64_t seed,
                                           respcorr::Domain domain =
                                               respcorr::Domain::image) {
  respcorr::ComplexSlice s(n, domain);
  respcorr::Rng rng(seed);
  for (auto& v : s.data) v = respcorr::Cd{rng.normal(), rng.normal()};
  return s;
}

inline double l2_norm(const std::vector<respcorr::Cd>& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

inline double max_abs_diff(const std::vector<respcorr::Cd>& a,
                           const std::vector<respcorr::Cd>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_l2_diff(const std::vector<respcorr::Cd>& a,
                          const std::vector<respcorr::Cd>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace testutil
