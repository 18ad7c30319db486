#include "respcorr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace respcorr {

namespace {

std::vector<double> magnitude(const ComplexSlice& s) {
  std::vector<double> out(s.data.size());
  for (std::size_t p = 0; p < s.data.size(); ++p) out[p] = std::abs(s.data[p]);
  return out;
}

void require_same_shape(const ComplexSlice& a, const ComplexSlice& b,
                        const char* who) {
  if (a.n != b.n || a.data.size() != b.data.size()) {
    throw DimensionError(std::string(who) + ": shape mismatch");
  }
}

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

}  // namespace

double nrmse_pct(const ComplexSlice& test, const ComplexSlice& ref) {
  require_same_shape(test, ref, "nrmse");
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < ref.data.size(); ++p) {
    const double mt = std::abs(test.data[p]);
    const double mr = std::abs(ref.data[p]);
    num += (mt - mr) * (mt - mr);
    den += mr * mr;
  }
  if (den == 0.0) throw DegenerateInputError("nrmse: all-zero reference");
  return 100.0 * std::sqrt(num / den);
}

double ssim(const ComplexSlice& test, const ComplexSlice& ref) {
  double range = 0.0;
  for (const auto& v : ref.data) range = std::max(range, std::abs(v));
  if (range == 0.0) {
    // constant-zero pair is defined as identical
    for (const auto& v : test.data) range = std::max(range, std::abs(v));
    if (range == 0.0) return 1.0;
  }
  return ssim(test, ref, range);
}

double ssim(const ComplexSlice& test, const ComplexSlice& ref,
            double dynamic_range) {
  require_same_shape(test, ref, "ssim");
  const std::size_t n = ref.n;
  if (n < kSsimWindow) {
    throw DimensionError("ssim: image smaller than the 11x11 window");
  }
  const std::vector<double> a = magnitude(test);
  const std::vector<double> b = magnitude(ref);

  double w[kSsimWindow][kSsimWindow];
  double wsum = 0.0;
  constexpr int half = kSsimWindow / 2;
  for (int dy = -half; dy <= half; ++dy) {
    for (int dx = -half; dx <= half; ++dx) {
      const double g =
          std::exp(-(dx * dx + dy * dy) / (2.0 * kSsimSigma * kSsimSigma));
      w[dy + half][dx + half] = g;
      wsum += g;
    }
  }
  for (auto& row : w) {
    for (auto& v : row) v /= wsum;
  }

  const double c1 = (kSsimK1 * dynamic_range) * (kSsimK1 * dynamic_range);
  const double c2 = (kSsimK2 * dynamic_range) * (kSsimK2 * dynamic_range);

  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t cy = half; cy + half < n; ++cy) {
    for (std::size_t cx = half; cx + half < n; ++cx) {
      double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
      for (int dy = -half; dy <= half; ++dy) {
        const std::size_t row = cy + dy;
        for (int dx = -half; dx <= half; ++dx) {
          const double wt = w[dy + half][dx + half];
          const double va = a[row * n + cx + dx];
          const double vb = b[row * n + cx + dx];
          mu_a += wt * va;
          mu_b += wt * vb;
          aa += wt * va * va;
          bb += wt * vb * vb;
          ab += wt * va * vb;
        }
      }
      const double var_a = aa - mu_a * mu_a;
      const double var_b = bb - mu_b * mu_b;
      const double cov = ab - mu_a * mu_b;
      const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
      const double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
      acc += num / den;
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

double gsr_pct(const ComplexSlice& image, const Mask& mask) {
  if (mask.n != image.n) throw DimensionError("gsr: mask/image size mismatch");
  if (mask.count() == 0) throw DegenerateInputError("gsr: empty mask");
  const std::size_t n = image.n;
  const std::size_t half = n / 2;

  // Ghost region: mask shifted half the FOV along PE, outside the object.
  Mask ghost(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const bool shifted = mask.at(r, (c + half) % n);
      ghost.set(r, c, shifted && !mask.at(r, c));
    }
  }
  if (ghost.count() == 0) {
    throw DegenerateInputError("gsr: mask fills the PE extent, no ghost region");
  }

  // Background: neither object nor ghost, kept 2 pixels clear of the ghost
  // region (Chebyshev dilation).
  Mask dilated = ghost;
  for (int pass = 0; pass < 2; ++pass) {
    Mask next = dilated;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (dilated.at(r, c)) continue;
        bool near = false;
        for (int dr = -1; dr <= 1 && !near; ++dr) {
          for (int dc = -1; dc <= 1 && !near; ++dc) {
            const long rr = static_cast<long>(r) + dr;
            const long cc = static_cast<long>(c) + dc;
            if (rr >= 0 && cc >= 0 && rr < static_cast<long>(n) &&
                cc < static_cast<long>(n) &&
                dilated.at(static_cast<std::size_t>(rr),
                           static_cast<std::size_t>(cc))) {
              near = true;
            }
          }
        }
        if (near) next.set(r, c, true);
      }
    }
    dilated = std::move(next);
  }

  double ghost_sum = 0.0, bg_sum = 0.0, sig_sum = 0.0;
  std::size_t ghost_n = 0, bg_n = 0, sig_n = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double m = std::abs(image.at(r, c));
      if (mask.at(r, c)) {
        sig_sum += m;
        ++sig_n;
      } else if (ghost.at(r, c)) {
        ghost_sum += m;
        ++ghost_n;
      } else if (!dilated.at(r, c)) {
        bg_sum += m;
        ++bg_n;
      }
    }
  }
  if (bg_n == 0) throw DegenerateInputError("gsr: empty background region");
  const double signal = sig_sum / static_cast<double>(sig_n);
  if (signal == 0.0) throw DegenerateInputError("gsr: zero mean signal");
  const double g = ghost_sum / static_cast<double>(ghost_n);
  const double b = bg_sum / static_cast<double>(bg_n);
  return std::max(0.0, 100.0 * (g - b) / signal);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("pearson: length mismatch");
  if (a.size() < 2) throw DegenerateInputError("pearson: need at least 2 samples");
  const double inv_n = 1.0 / static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma *= inv_n;
  mb *= inv_n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw DegenerateInputError("pearson: zero variance input");
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace respcorr
