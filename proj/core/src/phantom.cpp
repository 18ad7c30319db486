#include "respcorr/phantom.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace respcorr {

namespace {

struct Ellipse {
  double x0, y0, a, b, theta_deg, value;
};

// Modified (high-contrast) intensity set; the first ellipse is the skull and
// defines the support mask.
constexpr std::array<Ellipse, 10> kEllipses = {{
    {0.0, 0.0, 0.69, 0.92, 0.0, 1.0},
    {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.8},
    {0.22, 0.0, 0.11, 0.31, -18.0, -0.2},
    {-0.22, 0.0, 0.16, 0.41, 18.0, -0.2},
    {0.0, 0.35, 0.21, 0.25, 0.0, 0.1},
    {0.0, 0.1, 0.046, 0.046, 0.0, 0.1},
    {0.0, -0.1, 0.046, 0.046, 0.0, 0.1},
    {-0.08, -0.605, 0.046, 0.023, 0.0, 0.1},
    {0.0, -0.605, 0.023, 0.023, 0.0, 0.1},
    {0.06, -0.605, 0.023, 0.046, 0.0, 0.1},
}};

}  // namespace

Phantom shepp_logan(std::size_t n) {
  if (n < 16) throw DimensionError("shepp_logan: matrix size must be >= 16");

  Phantom out;
  out.image = ComplexSlice(n, Domain::image);
  out.mask = Mask(n);

  const double half = 0.5 * static_cast<double>(n - 1);
  constexpr double kDegToRad = std::numbers::pi / 180.0;

  for (std::size_t r = 0; r < n; ++r) {
    const double y = (half - static_cast<double>(r)) / half;  // +y is up
    for (std::size_t c = 0; c < n; ++c) {
      const double x = (static_cast<double>(c) - half) / half;
      double value = 0.0;
      bool support = false;
      for (std::size_t e = 0; e < kEllipses.size(); ++e) {
        const Ellipse& el = kEllipses[e];
        const double ct = std::cos(el.theta_deg * kDegToRad);
        const double st = std::sin(el.theta_deg * kDegToRad);
        const double dx = x - el.x0;
        const double dy = y - el.y0;
        const double xr = dx * ct + dy * st;
        const double yr = -dx * st + dy * ct;
        if ((xr * xr) / (el.a * el.a) + (yr * yr) / (el.b * el.b) <= 1.0) {
          value += el.value;
          if (e == 0) support = true;
        }
      }
      // the intensity set sums to >= 0 by design; drop rounding residue
      out.image.at(r, c) = Cd{std::max(value, 0.0), 0.0};
      out.mask.set(r, c, support);
    }
  }
  return out;
}

}  // namespace respcorr
