#pragma once

#include "respcorr/slice.hpp"

namespace respcorr {

struct Phantom {
  ComplexSlice image;  // real-valued, nonnegative
  Mask mask;           // support of the outer ellipse
};

/// Standard head phantom (modified contrast set) on an n-by-n grid with its
/// support mask. Deterministic; n must be >= 16.
Phantom shepp_logan(std::size_t n);

}  // namespace respcorr
