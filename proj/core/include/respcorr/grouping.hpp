#pragma once

#include <span>
#include <vector>

#include "respcorr/slice.hpp"

namespace respcorr {

/// Partition of the PE axis into contiguous groups. Group g covers columns
/// [g*L, (g+1)*L); every group except the first also carries the last column
/// of the previous group so the differential between groups is observable.
struct GroupSpec {
  std::size_t n = 224;
  std::size_t groups = 14;
  std::size_t lines_per_group = 16;

  static GroupSpec defaults() { return {}; }
  static GroupSpec make(std::size_t n, std::size_t groups);

  void validate() const;
  std::size_t core_begin(std::size_t g) const { return g * lines_per_group; }
  std::size_t core_end(std::size_t g) const { return (g + 1) * lines_per_group; }
  bool has_extra(std::size_t g) const { return g > 0; }
  std::size_t extra_column(std::size_t g) const { return g * lines_per_group - 1; }
};

/// Copy of k with every PE column outside group g zero-filled. The extra
/// column is included unless include_extra is false; the core-only selections
/// partition k-space exactly.
ComplexSlice group_select_kspace(const ComplexSlice& k, std::size_t g,
                                 const GroupSpec& spec, bool include_extra = true);

/// Zero-fill outside group g, then inverse-transform to a complex
/// bandpass-filtered image.
ComplexSlice group_bandpass(const ComplexSlice& k, std::size_t g,
                            const GroupSpec& spec);

/// d_0 = phi_0, d_i = phi_i - phi_{i-1}; cumulative sum reproduces phi.
std::vector<double> differential_label(std::span<const double> phi);

/// Running cumulative sum followed by mean removal (a constant phase is
/// invisible in magnitude images).
std::vector<double> accumulate_naive(std::span<const double> d);

}  // namespace respcorr
