#include "respcorr/grouping.hpp"

#include "respcorr/kspace.hpp"

namespace respcorr {

GroupSpec GroupSpec::make(std::size_t n, std::size_t groups) {
  if (groups == 0 || n % groups != 0) {
    throw DimensionError("GroupSpec: group count must divide the matrix size");
  }
  GroupSpec s;
  s.n = n;
  s.groups = groups;
  s.lines_per_group = n / groups;
  s.validate();
  return s;
}

void GroupSpec::validate() const {
  if (n == 0 || groups == 0 || lines_per_group == 0 ||
      groups * lines_per_group != n) {
    throw DimensionError("GroupSpec: groups * lines_per_group must equal n");
  }
}

ComplexSlice group_select_kspace(const ComplexSlice& k, std::size_t g,
                                 const GroupSpec& spec, bool include_extra) {
  spec.validate();
  if (k.domain != Domain::kspace) {
    throw DataError("group_select_kspace: input must be k-space");
  }
  if (k.n != spec.n) {
    throw DimensionError("group_select_kspace: spec does not match the plane");
  }
  if (g >= spec.groups) {
    throw IndexError("group_select_kspace: group index out of range");
  }
  ComplexSlice out(k.n, Domain::kspace, k.te_ms, k.tr_ms);
  const std::size_t lo = spec.core_begin(g);
  const std::size_t hi = spec.core_end(g);
  for (std::size_t j = 0; j < k.n; ++j) {
    for (std::size_t i = lo; i < hi; ++i) out.at(j, i) = k.at(j, i);
  }
  if (include_extra && spec.has_extra(g)) {
    const std::size_t e = spec.extra_column(g);
    for (std::size_t j = 0; j < k.n; ++j) out.at(j, e) = k.at(j, e);
  }
  return out;
}

ComplexSlice group_bandpass(const ComplexSlice& k, std::size_t g,
                            const GroupSpec& spec) {
  return ifft2c(group_select_kspace(k, g, spec, true));
}

std::vector<double> differential_label(std::span<const double> phi) {
  std::vector<double> d(phi.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    d[i] = phi[i] - prev;
    prev = phi[i];
  }
  return d;
}

std::vector<double> accumulate_naive(std::span<const double> d) {
  std::vector<double> phi(d.size());
  double acc = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += d[i];
    phi[i] = acc;
    mean += acc;
  }
  if (!phi.empty()) {
    mean /= static_cast<double>(phi.size());
    for (auto& v : phi) v -= mean;
  }
  return phi;
}

}  // namespace respcorr
