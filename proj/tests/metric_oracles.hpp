#pragma once

#include <cmath>
#include <vector>

#include "respcorr/slice.hpp"

// Brute-force scalar reference implementations, written independently of the
// library path. They stay dumb on purpose.
namespace oracle {

using respcorr::ComplexSlice;
using respcorr::Mask;
using respcorr::Cd;


double nrmse(const ComplexSlice& test, const ComplexSlice& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t r = 0; r < ref.n; ++r) {
    for (std::size_t c = 0; c < ref.n; ++c) {
      const double mt =
          std::sqrt(test.at(r, c).real() * test.at(r, c).real() +
                    test.at(r, c).imag() * test.at(r, c).imag());
      const double mr = std::sqrt(ref.at(r, c).real() * ref.at(r, c).real() +
                                  ref.at(r, c).imag() * ref.at(r, c).imag());
      num += (mt - mr) * (mt - mr);
      den += mr * mr;
    }
  }
  return 100.0 * std::sqrt(num / den);
}

double ssim(const ComplexSlice& test, const ComplexSlice& ref, double range) {
  const int n = static_cast<int>(ref.n);
  const double c1 = (0.01 * range) * (0.01 * range);
  const double c2 = (0.03 * range) * (0.03 * range);
  double total = 0.0;
  int windows = 0;
  for (int cy = 5; cy + 5 < n; ++cy) {
    for (int cx = 5; cx + 5 < n; ++cx) {
      double wsum = 0.0, ma = 0.0, mb = 0.0;
      for (int dy = -5; dy <= 5; ++dy) {
        for (int dx = -5; dx <= 5; ++dx) {
          wsum += std::exp(-(dx * dx + dy * dy) / 4.5);
        }
      }
      for (int dy = -5; dy <= 5; ++dy) {
        for (int dx = -5; dx <= 5; ++dx) {
          const double w = std::exp(-(dx * dx + dy * dy) / 4.5) / wsum;
          ma += w * std::abs(test.at(cy + dy, cx + dx));
          mb += w * std::abs(ref.at(cy + dy, cx + dx));
        }
      }
      double va = 0.0, vb = 0.0, cov = 0.0;
      for (int dy = -5; dy <= 5; ++dy) {
        for (int dx = -5; dx <= 5; ++dx) {
          const double w = std::exp(-(dx * dx + dy * dy) / 4.5) / wsum;
          const double da = std::abs(test.at(cy + dy, cx + dx)) - ma;
          const double db = std::abs(ref.at(cy + dy, cx + dx)) - mb;
          va += w * da * da;
          vb += w * db * db;
          cov += w * da * db;
        }
      }
      total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  }
  return total / windows;
}

double gsr(const ComplexSlice& img, const Mask& mask) {
  const int n = static_cast<int>(img.n);
  std::vector<int> region(img.n * img.n, 0);  // 1 mask, 2 ghost
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (mask.at(r, c)) region[r * n + c] = 1;
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (region[r * n + c] == 0 && mask.at(r, (c + n / 2) % n)) {
        region[r * n + c] = 2;
      }
    }
  }
  double ghost_sum = 0.0, bg_sum = 0.0, sig_sum = 0.0;
  int ghost_n = 0, bg_n = 0, sig_n = 0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double m = std::abs(img.at(r, c));
      if (region[r * n + c] == 1) {
        sig_sum += m;
        ++sig_n;
      } else if (region[r * n + c] == 2) {
        ghost_sum += m;
        ++ghost_n;
      } else {
        // background only when no ghost pixel within Chebyshev distance 2
        bool near = false;
        for (int dr = -2; dr <= 2; ++dr) {
          for (int dc = -2; dc <= 2; ++dc) {
            const int rr = r + dr, cc = c + dc;
            if (rr >= 0 && cc >= 0 && rr < n && cc < n &&
                region[rr * n + cc] == 2) {
              near = true;
            }
          }
        }
        if (!near) {
          bg_sum += m;
          ++bg_n;
        }
      }
    }
  }
  const double value = 100.0 *
                       (ghost_sum / ghost_n - bg_sum / bg_n) /
                       (sig_sum / sig_n);
  return value < 0.0 ? 0.0 : value;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
    sab += a[i] * b[i];
  }
  return (n * sab - sa * sb) /
         std::sqrt((n * saa - sa * sa) * (n * sbb - sb * sb));
}

}  // namespace oracle
