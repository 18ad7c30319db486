#include "respcorr/corrupt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "respcorr/fft.hpp"
#include "respcorr/kspace.hpp"
#include "respcorr/rng.hpp"

namespace respcorr {

ComplexSlice rotate_bilinear(const ComplexSlice& x, double deg) {
  if (deg == 0.0) return x;
  ComplexSlice out(x.n, x.domain, x.te_ms, x.tr_ms);
  const double rad = deg * std::numbers::pi / 180.0;
  const double ct = std::cos(rad);
  const double st = std::sin(rad);
  const double c0 = 0.5 * static_cast<double>(x.n - 1);
  const std::size_t n = x.n;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      // inverse map: output pixel pulled from the input plane
      const double yr = static_cast<double>(r) - c0;
      const double xc = static_cast<double>(c) - c0;
      const double sx = ct * xc + st * yr + c0;
      const double sy = -st * xc + ct * yr + c0;
      if (sx < 0.0 || sy < 0.0 || sx > static_cast<double>(n - 1) ||
          sy > static_cast<double>(n - 1)) {
        continue;  // zero fill
      }
      std::size_t ix = static_cast<std::size_t>(sx);
      std::size_t iy = static_cast<std::size_t>(sy);
      if (ix >= n - 1) ix = n - 2;
      if (iy >= n - 1) iy = n - 2;
      const double fx = sx - static_cast<double>(ix);
      const double fy = sy - static_cast<double>(iy);
      const Cd v00 = x.at(iy, ix);
      const Cd v01 = x.at(iy, ix + 1);
      const Cd v10 = x.at(iy + 1, ix);
      const Cd v11 = x.at(iy + 1, ix + 1);
      out.at(r, c) = v00 * ((1.0 - fx) * (1.0 - fy)) + v01 * (fx * (1.0 - fy)) +
                     v10 * ((1.0 - fx) * fy) + v11 * (fx * fy);
    }
  }
  return out;
}

ComplexSlice flip_lr(const ComplexSlice& x) {
  ComplexSlice out = x;
  const std::size_t n = x.n;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.at(r, c) = x.at(r, n - 1 - c);
  }
  return out;
}

Mask auto_mask(const ComplexSlice& image) {
  const std::size_t n = image.n;
  const std::size_t np = n * n;
  std::vector<double> mag(np);
  double maxv = 0.0;
  for (std::size_t p = 0; p < np; ++p) {
    mag[p] = std::abs(image.data[p]);
    maxv = std::max(maxv, mag[p]);
  }
  if (maxv == 0.0) throw DegenerateInputError("auto_mask: all-zero image");

  // Otsu threshold on a 256-bin magnitude histogram.
  constexpr int kBins = 256;
  std::vector<std::size_t> hist(kBins, 0);
  for (std::size_t p = 0; p < np; ++p) {
    int b = static_cast<int>(mag[p] / maxv * (kBins - 1));
    hist[std::clamp(b, 0, kBins - 1)]++;
  }
  double total_mean = 0.0;
  for (int b = 0; b < kBins; ++b) total_mean += b * static_cast<double>(hist[b]);
  total_mean /= static_cast<double>(np);
  double best_var = -1.0;
  int best_t = 0;
  double w0 = 0.0, sum0 = 0.0;
  for (int t = 0; t < kBins - 1; ++t) {
    w0 += static_cast<double>(hist[t]);
    sum0 += t * static_cast<double>(hist[t]);
    const double w1 = static_cast<double>(np) - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double m0 = sum0 / w0;
    const double m1 = (total_mean * static_cast<double>(np) - sum0) / w1;
    const double between = w0 * w1 * (m0 - m1) * (m0 - m1);
    if (between > best_var) {
      best_var = between;
      best_t = t;
    }
  }
  const double thresh = (best_t + 0.5) / (kBins - 1) * maxv;

  std::vector<std::uint8_t> fg(np, 0);
  for (std::size_t p = 0; p < np; ++p) fg[p] = mag[p] > thresh ? 1 : 0;

  // Largest 8-connected component (8-connectivity keeps thin rasterized
  // rims in one piece).
  std::vector<int> comp(np, -1);
  int ncomp = 0;
  std::size_t best_size = 0;
  int best_comp = -1;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < np; ++start) {
    if (!fg[start] || comp[start] >= 0) continue;
    const int id = ncomp++;
    std::size_t size = 0;
    comp[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      ++size;
      const long r = static_cast<long>(p / n), c = static_cast<long>(p % n);
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          const long rr = r + dr, cc = c + dc;
          if (rr < 0 || cc < 0 || rr >= static_cast<long>(n) ||
              cc >= static_cast<long>(n)) {
            continue;
          }
          const std::size_t q =
              static_cast<std::size_t>(rr) * n + static_cast<std::size_t>(cc);
          if (fg[q] && comp[q] < 0) {
            comp[q] = id;
            queue.push_back(q);
          }
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_comp = id;
    }
  }

  Mask out(n);
  for (std::size_t p = 0; p < np; ++p) out.in[p] = comp[p] == best_comp ? 1 : 0;

  // Hole fill: anything not reachable from the border through the complement
  // belongs to the object.
  std::vector<std::uint8_t> outside(np, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c : {std::size_t{0}, n - 1}) {
      const std::size_t p = r * n + c;
      if (!out.in[p] && !outside[p]) {
        outside[p] = 1;
        queue.push_back(p);
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r : {std::size_t{0}, n - 1}) {
      const std::size_t p = r * n + c;
      if (!out.in[p] && !outside[p]) {
        outside[p] = 1;
        queue.push_back(p);
      }
    }
  }
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    const std::size_t r = p / n, c = p % n;
    const std::size_t nb[4] = {p >= n ? p - n : p, p + n < np ? p + n : p,
                               c > 0 ? p - 1 : p, c + 1 < n ? p + 1 : p};
    for (std::size_t q : nb) {
      if (q != p && !out.in[q] && !outside[q]) {
        outside[q] = 1;
        queue.push_back(q);
      }
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    if (!outside[p]) out.in[p] = 1;
  }
  return out;
}

double mean_foreground_magnitude(const ComplexSlice& image, const Mask& mask) {
  if (mask.n != image.n) throw DimensionError("mask/image size mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t p = 0; p < image.data.size(); ++p) {
    if (mask.in[p]) {
      sum += std::abs(image.data[p]);
      ++count;
    }
  }
  if (count == 0) throw DegenerateInputError("empty foreground mask");
  return sum / static_cast<double>(count);
}

TrainingPair corrupt(const ComplexSlice& clean, const Mask& mask,
                     const PhaseErrorSeries& phi, const CorruptionRecipe& recipe) {
  if (clean.domain != Domain::image) {
    throw DataError("corrupt: clean input must be in the image domain");
  }
  if (phi.phi.size() != clean.n) {
    throw DimensionError("corrupt: phase series length != matrix size");
  }
  if (!(recipe.snr > 0.0)) {
    throw DegenerateInputError("corrupt: snr must be positive");
  }

  ComplexSlice work = recipe.flip_lr ? flip_lr(clean) : clean;
  work = rotate_bilinear(work, recipe.rotation_deg);

  ComplexSlice k = fft2c(work);
  k = apply_pe_phase(k, phi, /*conjugate=*/false);
  ComplexSlice img = ifft2c(k);

  if (std::isfinite(recipe.snr)) {
    const double sigma = mean_foreground_magnitude(clean, mask) / recipe.snr;
    Rng rng(recipe.rng_seed);
    for (auto& v : img.data) {
      v += Cd{rng.normal(0.0, sigma), rng.normal(0.0, sigma)};
    }
  }

  TrainingPair pair;
  pair.corrupted = std::move(img);
  pair.recipe = recipe;
  pair.label.resize(phi.phi.size());
  for (std::size_t i = 0; i < phi.phi.size(); ++i) {
    pair.label[i] = phi.phi[i] / kLabelScaleRad;
  }
  return pair;
}

TrainingPair make_pair(std::span<const ComplexSlice> images,
                       std::span<const Mask> masks,
                       std::span<const RespirationTrace> traces,
                       const DatasetConfig& cfg, std::uint64_t seed,
                       std::size_t index) {
  if (images.empty() || traces.empty()) {
    throw DegenerateInputError("make_pair: empty image or trace pool");
  }
  if (masks.size() != images.size()) {
    throw DimensionError("make_pair: mask pool size != image pool size");
  }

  Rng rng(Rng::derive(seed, index));
  const std::size_t image_idx = rng.index(images.size());
  const std::size_t trace_idx = rng.index(traces.size());
  const RespirationTrace& trace = traces[trace_idx];

  const double span = static_cast<double>(cfg.n - 1) * cfg.period_s;
  const double max_start = trace.duration_s() - span;
  if (max_start < 0.0) {
    throw DataError("make_pair: trace too short for the sampling window");
  }

  CorruptionRecipe recipe;
  recipe.trace_id = trace_idx;
  recipe.start_offset_s = rng.uniform(0.0, max_start);
  recipe.peak_rad = rng.uniform(cfg.peak_min_rad, cfg.peak_max_rad);
  recipe.rotation_deg = rng.uniform(cfg.rotation_min_deg, cfg.rotation_max_deg);
  recipe.flip_lr = cfg.allow_flip && rng.coin();
  const double snr_draw = rng.uniform(cfg.snr_min, cfg.snr_max);
  recipe.snr =
      cfg.noise_free ? std::numeric_limits<double>::infinity() : snr_draw;
  recipe.rng_seed = rng.next_u64();

  const std::vector<double> sampled =
      sample_trace(trace, cfg.period_s, cfg.n, recipe.start_offset_s);
  const PhaseErrorSeries phi = scale_to_peak(sampled, recipe.peak_rad, cfg.te_ms);

  TrainingPair pair = corrupt(images[image_idx], masks[image_idx], phi, recipe);
  pair.image_index = image_idx;
  pair.corrupted.te_ms = cfg.te_ms;
  pair.corrupted.tr_ms = cfg.tr_ms;
  return pair;
}

std::vector<TrainingPair> make_dataset(std::span<const ComplexSlice> images,
                                       std::span<const Mask> masks,
                                       std::span<const RespirationTrace> traces,
                                       std::size_t count,
                                       const DatasetConfig& cfg,
                                       std::uint64_t seed) {
  std::vector<TrainingPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(make_pair(images, masks, traces, cfg, seed, i));
  }
  return out;
}

std::vector<std::vector<Cd>> simulate_navigator(
    const ComplexSlice& clean, const PhaseErrorSeries& phi, double te_nav_ms,
    double snr, std::span<const std::vector<Cd>> sensitivities,
    std::uint64_t seed) {
  if (te_nav_ms <= 0.0 || phi.te_ms <= 0.0) {
    throw DegenerateInputError("simulate_navigator: echo times must be positive");
  }
  if (phi.phi.size() != clean.n) {
    throw DimensionError("simulate_navigator: phase series length != matrix size");
  }
  if (!(snr > 0.0)) {
    throw DegenerateInputError("simulate_navigator: snr must be positive");
  }
  const std::size_t n = clean.n;
  const std::size_t coils = sensitivities.empty() ? 1 : sensitivities.size();
  const double te_ratio = te_nav_ms / phi.te_ms;

  Rng rng(seed);
  std::vector<std::vector<Cd>> nav(coils, std::vector<Cd>(n * n));
  for (std::size_t c = 0; c < coils; ++c) {
    ComplexSlice plane = clean;
    if (!sensitivities.empty()) {
      if (sensitivities[c].size() != n * n) {
        throw DimensionError("simulate_navigator: sensitivity size mismatch");
      }
      for (std::size_t p = 0; p < n * n; ++p) plane.data[p] *= sensitivities[c][p];
    }
    const ComplexSlice k = fft2c(plane);

    std::vector<Cd> ref(n);
    double mean_mag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      ref[j] = k.at(j, n / 2);  // central PE column
      mean_mag += std::abs(ref[j]);
    }
    mean_mag /= static_cast<double>(n);
    const double sigma = std::isfinite(snr) ? mean_mag / snr : 0.0;

    for (std::size_t i = 0; i < n; ++i) {
      const Cd rot = std::polar(1.0, phi.phi[i] * te_ratio);
      for (std::size_t j = 0; j < n; ++j) {
        Cd v = ref[j] * rot;
        if (sigma > 0.0) {
          v += Cd{rng.normal(0.0, sigma), rng.normal(0.0, sigma)};
        }
        nav[c][i * n + j] = v;
      }
    }
  }
  return nav;
}

}  // namespace respcorr
