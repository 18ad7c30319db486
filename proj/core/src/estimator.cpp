#include "respcorr/estimator.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include <nlohmann/json.hpp>

#include "respcorr/kspace.hpp"
#include "respcorr/rng.hpp"

namespace respcorr {

using nn::Tensor;

nn::Tensor assemble_input(const ComplexSlice& original,
                          const ComplexSlice& bandpass) {
  if (original.n != bandpass.n) {
    throw DimensionError("assemble_input: plane size mismatch");
  }
  const std::size_t n = original.n;
  const std::size_t np = n * n;

  // Scale factor putting the magnitude std at the target.
  double mean = 0.0;
  for (const auto& v : original.data) mean += std::abs(v);
  mean /= static_cast<double>(np);
  double var = 0.0;
  for (const auto& v : original.data) {
    const double d = std::abs(v) - mean;
    var += d * d;
  }
  var /= static_cast<double>(np);
  if (var == 0.0) {
    throw DegenerateInputError("assemble_input: constant-magnitude image");
  }
  const double scale = kMagnitudeStdTarget / std::sqrt(var);

  Tensor band_re({n, n}), band_im({n, n});
  for (std::size_t p = 0; p < np; ++p) {
    band_re.val[p] = bandpass.data[p].real();
    band_im.val[p] = bandpass.data[p].imag();
  }
  Tensor band_re_std, band_im_std;
  try {
    band_re_std = nn::instance_standardize(band_re);
    band_im_std = nn::instance_standardize(band_im);
  } catch (const DegenerateInputError&) {
    throw DegenerateInputError("assemble_input: zero-variance bandpass channel");
  }

  Tensor out({4, n, n});
  for (std::size_t p = 0; p < np; ++p) {
    out.val[p] = band_re_std.val[p];
    out.val[np + p] = band_im_std.val[p];
    out.val[2 * np + p] = original.data[p].real() * scale;
    out.val[3 * np + p] = original.data[p].imag() * scale;
  }
  return out;
}

// ---------------------------------------------------------------- Stage1Net

Stage1Net::Stage1Net(std::size_t n, std::size_t out_len, std::uint64_t seed)
    : n_(n), out_len_(out_len),
      c1_(4, 16, 3, 2, 1), c2_(16, 32, 3, 2, 1), c3_(32, 64, 3, 2, 1),
      c4_(64, 128, 3, 2, 1), d1_(128, 128), d2_(128, out_len) {
  if (n < 16 || n % 16 != 0) {
    throw DimensionError("Stage1Net: matrix size must be a multiple of 16");
  }
  Rng rng(Rng::derive(seed, 0x51));
  c1_.init_params(rng);
  c2_.init_params(rng);
  c3_.init_params(rng);
  c4_.init_params(rng);
  d1_.init_params(rng);
  d2_.init_params(rng);
}

Tensor Stage1Net::forward(const Tensor& x, Tape& tape) const {
  if (x.shape.size() != 3 || x.shape[0] != 4 || x.shape[1] != n_ ||
      x.shape[2] != n_) {
    throw DimensionError("Stage1Net: expected a [4, n, n] input");
  }
  tape.t.clear();
  tape.t.reserve(12);
  tape.t.push_back(x);                                    // 0
  tape.t.push_back(c1_.forward(tape.t[0]));               // 1
  tape.t.push_back(nn::relu(tape.t[1]));                  // 2
  tape.t.push_back(c2_.forward(tape.t[2]));               // 3
  tape.t.push_back(nn::relu(tape.t[3]));                  // 4
  tape.t.push_back(c3_.forward(tape.t[4]));               // 5
  tape.t.push_back(nn::relu(tape.t[5]));                  // 6
  tape.t.push_back(c4_.forward(tape.t[6]));               // 7
  tape.t.push_back(nn::relu(tape.t[7]));                  // 8
  tape.t.push_back(nn::global_avg_pool(tape.t[8]));       // 9
  tape.t.push_back(d1_.forward(tape.t[9]));               // 10
  tape.t.push_back(nn::relu(tape.t[10]));                 // 11
  return d2_.forward(tape.t[11]);
}

Tensor Stage1Net::backward(const Tensor& gy, const Tape& tape,
                           std::vector<Tensor>& grads) const {
  Tensor g = d2_.backward(tape.t[11], gy, grads[10], grads[11]);
  g = nn::relu_backward(tape.t[10], g);
  g = d1_.backward(tape.t[9], g, grads[8], grads[9]);
  g = nn::global_avg_pool_backward(tape.t[8], g);
  g = nn::relu_backward(tape.t[7], g);
  g = c4_.backward(tape.t[6], g, grads[6], grads[7]);
  g = nn::relu_backward(tape.t[5], g);
  g = c3_.backward(tape.t[4], g, grads[4], grads[5]);
  g = nn::relu_backward(tape.t[3], g);
  g = c2_.backward(tape.t[2], g, grads[2], grads[3]);
  g = nn::relu_backward(tape.t[1], g);
  return c1_.backward(tape.t[0], g, grads[0], grads[1]);
}

std::vector<Tensor*> Stage1Net::parameters() {
  return {&c1_.w, &c1_.b, &c2_.w, &c2_.b, &c3_.w, &c3_.b,
          &c4_.w, &c4_.b, &d1_.w, &d1_.b, &d2_.w, &d2_.b};
}

std::vector<const Tensor*> Stage1Net::parameters() const {
  return {&c1_.w, &c1_.b, &c2_.w, &c2_.b, &c3_.w, &c3_.b,
          &c4_.w, &c4_.b, &d1_.w, &d1_.b, &d2_.w, &d2_.b};
}

// ---------------------------------------------------------------- Stage2Net

Stage2Net::Stage2Net(std::size_t n, std::uint64_t seed)
    : n_(n), e1_(2, 16, 4, 2, 1), e2_(16, 32, 4, 2, 1), e3_(32, 64, 4, 2, 1),
      g1_(64, 32, 4, 2, 1), g2_(32, 16, 4, 2, 1), g3_(16, 1, 4, 2, 1) {
  if (n < 8 || n % 8 != 0) {
    throw DimensionError("Stage2Net: vector length must be a multiple of 8");
  }
  Rng rng(Rng::derive(seed, 0x52));
  e1_.init_params(rng);
  e2_.init_params(rng);
  e3_.init_params(rng);
  g1_.init_params(rng);
  g2_.init_params(rng);
  g3_.init_params(rng);
}

Tensor Stage2Net::forward(const Tensor& x, Tape& tape) const {
  if (x.shape.size() != 1 || x.shape[0] != n_) {
    throw DimensionError("Stage2Net: expected an [n] input vector");
  }
  const Tensor s = nn::cumsum(x);
  const Tensor s_mr = nn::mean_remove(s);
  Tensor h0({2, n_});
  for (std::size_t i = 0; i < n_; ++i) {
    h0.val[i] = x.val[i];
    h0.val[n_ + i] = s_mr.val[i];
  }
  tape.t.clear();
  tape.t.reserve(12);
  tape.t.push_back(h0);                                   // 0
  tape.t.push_back(e1_.forward(tape.t[0]));               // 1
  tape.t.push_back(nn::relu(tape.t[1]));                  // 2
  tape.t.push_back(e2_.forward(tape.t[2]));               // 3
  tape.t.push_back(nn::relu(tape.t[3]));                  // 4
  tape.t.push_back(e3_.forward(tape.t[4]));               // 5
  tape.t.push_back(nn::relu(tape.t[5]));                  // 6
  tape.t.push_back(g1_.forward(tape.t[6]));               // 7
  tape.t.push_back(nn::relu(tape.t[7]));                  // 8
  tape.t.push_back(g2_.forward(tape.t[8]));               // 9
  tape.t.push_back(nn::relu(tape.t[9]));                  // 10
  const Tensor u3 = g3_.forward(tape.t[10]);              // [1, n]
  Tensor pre({n_});
  for (std::size_t i = 0; i < n_; ++i) pre.val[i] = s.val[i] + u3.val[i];
  return nn::mean_remove(pre);
}

Tensor Stage2Net::backward(const Tensor& gy, const Tape& tape,
                           std::vector<Tensor>& grads) const {
  const Tensor g0 = nn::mean_remove_backward(gy);
  Tensor g_s = g0;  // direct cumulative-sum path
  Tensor g_u3({1, n_});
  for (std::size_t i = 0; i < n_; ++i) g_u3.val[i] = g0.val[i];

  Tensor g = g3_.backward(tape.t[10], g_u3, grads[10], grads[11]);
  g = nn::relu_backward(tape.t[9], g);
  g = g2_.backward(tape.t[8], g, grads[8], grads[9]);
  g = nn::relu_backward(tape.t[7], g);
  g = g1_.backward(tape.t[6], g, grads[6], grads[7]);
  g = nn::relu_backward(tape.t[5], g);
  g = e3_.backward(tape.t[4], g, grads[4], grads[5]);
  g = nn::relu_backward(tape.t[3], g);
  g = e2_.backward(tape.t[2], g, grads[2], grads[3]);
  g = nn::relu_backward(tape.t[1], g);
  const Tensor g_h0 = e1_.backward(tape.t[0], g, grads[0], grads[1]);

  Tensor gx({n_});
  Tensor g_smr({n_});
  for (std::size_t i = 0; i < n_; ++i) {
    gx.val[i] = g_h0.val[i];
    g_smr.val[i] = g_h0.val[n_ + i];
  }
  const Tensor g_smr_b = nn::mean_remove_backward(g_smr);
  for (std::size_t i = 0; i < n_; ++i) g_s.val[i] += g_smr_b.val[i];
  const Tensor g_from_s = nn::cumsum_backward(g_s);
  for (std::size_t i = 0; i < n_; ++i) gx.val[i] += g_from_s.val[i];
  return gx;
}

std::vector<Tensor*> Stage2Net::parameters() {
  return {&e1_.w, &e1_.b, &e2_.w, &e2_.b, &e3_.w, &e3_.b,
          &g1_.w, &g1_.b, &g2_.w, &g2_.b, &g3_.w, &g3_.b};
}

std::vector<const Tensor*> Stage2Net::parameters() const {
  return {&e1_.w, &e1_.b, &e2_.w, &e2_.b, &e3_.w, &e3_.b,
          &g1_.w, &g1_.b, &g2_.w, &g2_.b, &g3_.w, &g3_.b};
}

// ---------------------------------------------------------------- variants

const char* to_string(EstimatorVariant v) {
  switch (v) {
    case EstimatorVariant::oracle: return "oracle";
    case EstimatorVariant::navigator: return "navigator";
    case EstimatorVariant::cumulative_baseline: return "cumulative-baseline";
    case EstimatorVariant::neural: return "neural";
  }
  return "unknown";
}

EstimatorVariant variant_from_string(const std::string& s) {
  if (s == "oracle") return EstimatorVariant::oracle;
  if (s == "navigator") return EstimatorVariant::navigator;
  if (s == "cumulative-baseline") return EstimatorVariant::cumulative_baseline;
  if (s == "neural") return EstimatorVariant::neural;
  throw DataError("unknown estimator variant: " + s);
}

std::vector<double> stage1_estimate(const EstimatorModel& model,
                                    const ComplexSlice& image, std::size_t g) {
  if (!model.stage1) throw DataError("stage1_estimate: model has no stage-1 network");
  model.spec.validate();
  if (image.n != model.spec.n) {
    throw DimensionError("stage1_estimate: image size does not match the model");
  }
  const ComplexSlice k = fft2c(image);
  const ComplexSlice band = group_bandpass(k, g, model.spec);
  const Tensor input = assemble_input(image, band);
  nn::Network::Tape tape;
  const Tensor out = model.stage1->forward(input, tape);
  return out.val;
}

std::vector<double> stage2_estimate(const EstimatorModel& model,
                                    std::span<const double> d) {
  if (!model.stage2) throw DataError("stage2_estimate: model has no stage-2 network");
  if (d.size() != model.stage2->length()) {
    throw DimensionError("stage2_estimate: differential vector length mismatch");
  }
  Tensor x({d.size()});
  std::copy(d.begin(), d.end(), x.val.begin());
  nn::Network::Tape tape;
  return model.stage2->forward(x, tape).val;
}

PhaseErrorSeries estimate(const EstimatorModel& model, const ComplexSlice& image,
                          const EstimateAux& aux) {
  switch (model.variant) {
    case EstimatorVariant::oracle: {
      if (aux.true_phi == nullptr) {
        throw DataError("estimate: oracle variant needs the true phase series");
      }
      return *aux.true_phi;
    }
    case EstimatorVariant::navigator: {
      if (aux.navigator == nullptr || aux.te_nav_ms <= 0.0) {
        throw DataError("estimate: navigator variant needs navigator lines and TE");
      }
      return navigator_estimate(*aux.navigator, image.n, image.te_ms,
                                aux.te_nav_ms);
    }
    case EstimatorVariant::cumulative_baseline:
    case EstimatorVariant::neural: {
      if (!model.stage1) throw DataError("estimate: model has no stage-1 network");
      model.spec.validate();
      if (image.n != model.spec.n) {
        throw DimensionError("estimate: image size does not match the model");
      }
      const std::size_t n = model.spec.n;
      const std::size_t lines = model.spec.lines_per_group;
      const ComplexSlice k = fft2c(image);

      std::vector<double> d(n);
      nn::Network::Tape tape;
      for (std::size_t g = 0; g < model.spec.groups; ++g) {
        const ComplexSlice band = group_bandpass(k, g, model.spec);
        const Tensor input = assemble_input(image, band);
        const Tensor out = model.stage1->forward(input, tape);
        for (std::size_t i = 0; i < lines; ++i) d[g * lines + i] = out.val[i];
      }

      std::vector<double> phi_norm;
      if (model.variant == EstimatorVariant::neural && model.stage2) {
        phi_norm = stage2_estimate(model, d);
      } else {
        phi_norm = accumulate_naive(d);
      }
      PhaseErrorSeries out;
      out.te_ms = image.te_ms;
      out.phi.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        out.phi[i] = phi_norm[i] * model.label_scale_rad;
      }
      return out;
    }
  }
  throw DataError("estimate: unknown variant");
}

PhaseErrorSeries navigator_estimate(const std::vector<std::vector<Cd>>& nav,
                                    std::size_t n, double te_img_ms,
                                    double te_nav_ms) {
  if (nav.empty()) throw DegenerateInputError("navigator_estimate: no channels");
  if (n == 0 || n % 2 != 0) {
    throw DimensionError("navigator_estimate: line count must be even");
  }
  if (te_img_ms <= 0.0 || te_nav_ms <= 0.0) {
    throw DegenerateInputError("navigator_estimate: echo times must be positive");
  }
  for (const auto& plane : nav) {
    if (plane.size() != n * n) {
      throw DimensionError("navigator_estimate: plane size mismatch");
    }
  }
  const std::size_t ref = n / 2;
  std::vector<double> dphi(n, 0.0);
  for (const auto& plane : nav) {
    double ref_mag = 0.0;
    for (std::size_t j = 0; j < n; ++j) ref_mag += std::abs(plane[ref * n + j]);
    if (ref_mag == 0.0) {
      throw DegenerateInputError("navigator_estimate: zero-magnitude reference line");
    }
    for (std::size_t i = 0; i < n; ++i) {
      Cd z{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        z += plane[i * n + j] * std::conj(plane[ref * n + j]);
      }
      dphi[i] += std::arg(z);
    }
  }
  const double inv_c = 1.0 / static_cast<double>(nav.size());
  for (auto& v : dphi) v *= inv_c;

  std::vector<double> detrended = poly_detrend(dphi, 15);
  PhaseErrorSeries out;
  out.te_ms = te_img_ms;
  out.phi.resize(n);
  const double scale = te_img_ms / te_nav_ms;
  for (std::size_t i = 0; i < n; ++i) out.phi[i] = detrended[i] * scale;
  return out;
}

std::vector<double> poly_detrend(std::span<const double> y, int order) {
  const std::size_t n = y.size();
  if (order < 0) throw DataError("poly_detrend: negative order");
  if (n <= static_cast<std::size_t>(order) + 1) {
    throw DataError("poly_detrend: series too short for the polynomial order");
  }
  // Legendre recurrence on [-1, 1] gives a near-orthogonal start; modified
  // Gram-Schmidt (two passes) then orthonormalizes on the discrete grid.
  const std::size_t nb = static_cast<std::size_t>(order) + 1;
  std::vector<std::vector<double>> basis(nb, std::vector<double>(n));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) - 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    basis[0][i] = 1.0;
    if (nb > 1) basis[1][i] = x[i];
  }
  for (std::size_t k = 2; k < nb; ++k) {
    const double a = (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(k);
    const double b = (static_cast<double>(k) - 1.0) / static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) {
      basis[k][i] = a * x[i] * basis[k - 1][i] - b * basis[k - 2][i];
    }
  }
  auto dot = [n](const std::vector<double>& u, const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += u[i] * v[i];
    return acc;
  };
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < nb; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        const double proj = dot(basis[k], basis[j]);
        for (std::size_t i = 0; i < n; ++i) basis[k][i] -= proj * basis[j][i];
      }
      const double norm = std::sqrt(dot(basis[k], basis[k]));
      if (norm == 0.0) throw NumericError("poly_detrend: degenerate basis");
      for (std::size_t i = 0; i < n; ++i) basis[k][i] /= norm;
    }
  }
  std::vector<double> out(y.begin(), y.end());
  for (std::size_t k = 0; k < nb; ++k) {
    const double proj = dot(out, basis[k]);
    for (std::size_t i = 0; i < n; ++i) out[i] -= proj * basis[k][i];
  }
  return out;
}

// ---------------------------------------------------------------- training sources

Stage1SampleSource::Stage1SampleSource(GroupSpec spec) : spec_(spec) {
  spec_.validate();
}

void Stage1SampleSource::add(const ComplexSlice& corrupted,
                             std::span<const double> label) {
  if (corrupted.n != spec_.n || label.size() != spec_.n) {
    throw DimensionError("Stage1SampleSource: pair does not match the group spec");
  }
  std::vector<std::complex<float>> plane(corrupted.data.size());
  for (std::size_t p = 0; p < plane.size(); ++p) {
    plane[p] = std::complex<float>(static_cast<float>(corrupted.data[p].real()),
                                   static_cast<float>(corrupted.data[p].imag()));
  }
  planes_.push_back(std::move(plane));
  labels_.emplace_back(label.begin(), label.end());
  dlabels_.push_back(differential_label(label));
}

ComplexSlice Stage1SampleSource::slice(std::size_t p) const {
  ComplexSlice s(spec_.n, Domain::image);
  const auto& plane = planes_[p];
  for (std::size_t i = 0; i < plane.size(); ++i) {
    s.data[i] = Cd{static_cast<double>(plane[i].real()),
                   static_cast<double>(plane[i].imag())};
  }
  return s;
}

void Stage1SampleSource::get(std::size_t idx, nn::Tensor& x,
                             nn::Tensor& y) const {
  const std::size_t p = idx / spec_.groups;
  const std::size_t g = idx % spec_.groups;
  const ComplexSlice img = slice(p);
  const ComplexSlice k = fft2c(img);
  const ComplexSlice band = group_bandpass(k, g, spec_);
  x = assemble_input(img, band);
  y = nn::Tensor({spec_.lines_per_group});
  const std::size_t lo = spec_.core_begin(g);
  for (std::size_t i = 0; i < spec_.lines_per_group; ++i) {
    y.val[i] = dlabels_[p][lo + i];
  }
}

Stage2NoisySource::Stage2NoisySource(std::vector<std::vector<double>> labels,
                                     double noise_std, std::uint64_t seed)
    : labels_(std::move(labels)), noise_std_(noise_std), seed_(seed) {
  if (labels_.empty()) throw DegenerateInputError("Stage2NoisySource: no labels");
}

void Stage2NoisySource::get(std::size_t idx, nn::Tensor& x,
                            nn::Tensor& y) const {
  const auto& label = labels_[idx];
  const std::size_t n = label.size();
  const std::vector<double> d = differential_label(label);
  Rng rng(Rng::derive(seed_, idx));
  x = nn::Tensor({n});
  for (std::size_t i = 0; i < n; ++i) x.val[i] = d[i] + rng.normal(0.0, noise_std_);
  double mean = 0.0;
  for (double v : label) mean += v;
  mean /= static_cast<double>(n);
  y = nn::Tensor({n});
  for (std::size_t i = 0; i < n; ++i) y.val[i] = label[i] - mean;
}

// ---------------------------------------------------------------- model io

namespace {

void append_params(const nn::Network& net, std::vector<float>& blob) {
  for (const Tensor* p : net.parameters()) {
    for (double v : p->val) blob.push_back(static_cast<float>(v));
  }
}

void read_params(nn::Network& net, const std::vector<float>& blob,
                 std::size_t& offset) {
  for (Tensor* p : net.parameters()) {
    if (offset + p->size() > blob.size()) {
      throw IoError("model blob shorter than the manifest promises");
    }
    for (auto& v : p->val) v = static_cast<double>(blob[offset++]);
  }
}

}  // namespace

void save_model(const std::string& base, const EstimatorModel& model) {
  nlohmann::json manifest;
  manifest["variant"] = to_string(model.variant);
  manifest["label_scale_rad"] = model.label_scale_rad;
  manifest["mag_std_target"] = model.mag_std_target;
  manifest["group_spec"] = {{"n", model.spec.n},
                            {"groups", model.spec.groups},
                            {"lines_per_group", model.spec.lines_per_group}};
  std::vector<float> blob;
  if (model.stage1) {
    manifest["stage1"] = {{"n", model.stage1->input_size()},
                          {"out_len", model.stage1->output_size()},
                          {"param_count", model.stage1->parameter_count()}};
    append_params(*model.stage1, blob);
  }
  if (model.stage2) {
    manifest["stage2"] = {{"n", model.stage2->length()},
                          {"param_count", model.stage2->parameter_count()}};
    append_params(*model.stage2, blob);
  }
  manifest["blob_floats"] = blob.size();

  std::ofstream mf(base + ".json");
  if (!mf) throw IoError("cannot write " + base + ".json");
  mf << manifest.dump(2) << "\n";

  std::ofstream bf(base + ".bin", std::ios::binary);
  if (!bf) throw IoError("cannot write " + base + ".bin");
  bf.write(reinterpret_cast<const char*>(blob.data()),
           static_cast<std::streamsize>(blob.size() * sizeof(float)));
}

EstimatorModel load_model(const std::string& base) {
  std::ifstream mf(base + ".json");
  if (!mf) throw IoError("cannot read " + base + ".json");
  nlohmann::json manifest;
  try {
    mf >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad model manifest: " + std::string(e.what()));
  }

  EstimatorModel model;
  model.variant = variant_from_string(manifest.at("variant").get<std::string>());
  model.label_scale_rad = manifest.value("label_scale_rad", 0.63);
  model.mag_std_target = manifest.value("mag_std_target", kMagnitudeStdTarget);
  if (manifest.contains("group_spec")) {
    const auto& gs = manifest["group_spec"];
    model.spec.n = gs.at("n").get<std::size_t>();
    model.spec.groups = gs.at("groups").get<std::size_t>();
    model.spec.lines_per_group = gs.at("lines_per_group").get<std::size_t>();
    model.spec.validate();
  }

  std::vector<float> blob;
  {
    std::ifstream bf(base + ".bin", std::ios::binary);
    if (bf) {
      bf.seekg(0, std::ios::end);
      const auto bytes = bf.tellg();
      bf.seekg(0);
      blob.resize(static_cast<std::size_t>(bytes) / sizeof(float));
      bf.read(reinterpret_cast<char*>(blob.data()),
              static_cast<std::streamsize>(blob.size() * sizeof(float)));
    }
  }

  std::size_t offset = 0;
  if (manifest.contains("stage1")) {
    const auto& s1 = manifest["stage1"];
    model.stage1 = std::make_shared<Stage1Net>(
        s1.at("n").get<std::size_t>(), s1.at("out_len").get<std::size_t>(), 0);
    read_params(*model.stage1, blob, offset);
  }
  if (manifest.contains("stage2")) {
    const auto& s2 = manifest["stage2"];
    model.stage2 =
        std::make_shared<Stage2Net>(s2.at("n").get<std::size_t>(), 0);
    read_params(*model.stage2, blob, offset);
  }
  if (offset != blob.size()) {
    throw IoError("model blob size does not match the manifest");
  }
  return model;
}

}  // namespace respcorr
