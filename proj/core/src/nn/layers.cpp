#include "respcorr/nn/layers.hpp"

#include <cmath>

namespace respcorr::nn {

namespace {

Tensor he_normal(std::vector<std::size_t> shape, std::size_t fan_in, Rng& rng) {
  Tensor t(std::move(shape));
  const double sd = std::sqrt(2.0 / static_cast<double>(fan_in));
  for (auto& v : t.val) v = rng.normal(0.0, sd);
  return t;
}

void check_input(const Tensor& x, std::size_t ch, const char* who) {
  if (x.shape.empty() || x.shape[0] != ch) {
    throw DimensionError(std::string(who) + ": channel mismatch");
  }
}

}  // namespace

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(std::size_t in, std::size_t out, std::size_t kernel,
               std::size_t stride_, std::size_t pad_)
    : in_ch(in), out_ch(out), k(kernel), stride(stride_), pad(pad_),
      w(Tensor({out, in, kernel, kernel})), b(Tensor({out})) {}

void Conv2d::init_params(Rng& rng) {
  w = he_normal({out_ch, in_ch, k, k}, in_ch * k * k, rng);
  b = Tensor({out_ch});
}

Tensor Conv2d::forward(const Tensor& x) const {
  check_input(x, in_ch, "Conv2d");
  const std::size_t h = x.shape[1], wd = x.shape[2];
  const std::size_t ho = out_len(h), wo = out_len(wd);
  Tensor y({out_ch, ho, wo});

  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    double* yp = &y.val[oc * ho * wo];
    const double bias = b.val[oc];
    for (std::size_t p = 0; p < ho * wo; ++p) yp[p] = bias;
    for (std::size_t ic = 0; ic < in_ch; ++ic) {
      const double* xp = &x.val[ic * h * wd];
      for (std::size_t ky = 0; ky < k; ++ky) {
        for (std::size_t kx = 0; kx < k; ++kx) {
          const double wv = w(oc, ic, ky, kx);
          const long off_y = static_cast<long>(ky) - static_cast<long>(pad);
          const long off_x = static_cast<long>(kx) - static_cast<long>(pad);
          for (std::size_t oy = 0; oy < ho; ++oy) {
            const long iy = static_cast<long>(oy * stride) + off_y;
            if (iy < 0 || iy >= static_cast<long>(h)) continue;
            const double* xrow = xp + static_cast<std::size_t>(iy) * wd;
            double* yrow = yp + oy * wo;
            for (std::size_t ox = 0; ox < wo; ++ox) {
              const long ix = static_cast<long>(ox * stride) + off_x;
              if (ix < 0 || ix >= static_cast<long>(wd)) continue;
              yrow[ox] += wv * xrow[static_cast<std::size_t>(ix)];
            }
          }
        }
      }
    }
  }
  return y;
}

Tensor Conv2d::backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                        Tensor& gb) const {
  const std::size_t h = x.shape[1], wd = x.shape[2];
  const std::size_t ho = gy.shape[1], wo = gy.shape[2];
  Tensor gx(x.shape);

  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    const double* gp = &gy.val[oc * ho * wo];
    double acc_b = 0.0;
    for (std::size_t p = 0; p < ho * wo; ++p) acc_b += gp[p];
    gb.val[oc] += acc_b;
    for (std::size_t ic = 0; ic < in_ch; ++ic) {
      const double* xp = &x.val[ic * h * wd];
      double* gxp = &gx.val[ic * h * wd];
      for (std::size_t ky = 0; ky < k; ++ky) {
        for (std::size_t kx = 0; kx < k; ++kx) {
          const double wv = w(oc, ic, ky, kx);
          const long off_y = static_cast<long>(ky) - static_cast<long>(pad);
          const long off_x = static_cast<long>(kx) - static_cast<long>(pad);
          double acc_w = 0.0;
          for (std::size_t oy = 0; oy < ho; ++oy) {
            const long iy = static_cast<long>(oy * stride) + off_y;
            if (iy < 0 || iy >= static_cast<long>(h)) continue;
            const double* xrow = xp + static_cast<std::size_t>(iy) * wd;
            double* gxrow = gxp + static_cast<std::size_t>(iy) * wd;
            const double* grow = gp + oy * wo;
            for (std::size_t ox = 0; ox < wo; ++ox) {
              const long ix = static_cast<long>(ox * stride) + off_x;
              if (ix < 0 || ix >= static_cast<long>(wd)) continue;
              const double g = grow[ox];
              acc_w += g * xrow[static_cast<std::size_t>(ix)];
              gxrow[static_cast<std::size_t>(ix)] += wv * g;
            }
          }
          gw(oc, ic, ky, kx) += acc_w;
        }
      }
    }
  }
  return gx;
}

// ---------------------------------------------------------------- Conv1d

Conv1d::Conv1d(std::size_t in, std::size_t out, std::size_t kernel,
               std::size_t stride_, std::size_t pad_)
    : in_ch(in), out_ch(out), k(kernel), stride(stride_), pad(pad_),
      w(Tensor({out, in, kernel})), b(Tensor({out})) {}

void Conv1d::init_params(Rng& rng) {
  w = he_normal({out_ch, in_ch, k}, in_ch * k, rng);
  b = Tensor({out_ch});
}

Tensor Conv1d::forward(const Tensor& x) const {
  check_input(x, in_ch, "Conv1d");
  const std::size_t len = x.shape[1];
  const std::size_t lo = out_len(len);
  Tensor y({out_ch, lo});
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    double* yp = &y.val[oc * lo];
    for (std::size_t p = 0; p < lo; ++p) yp[p] = b.val[oc];
    for (std::size_t ic = 0; ic < in_ch; ++ic) {
      const double* xp = &x.val[ic * len];
      for (std::size_t kk = 0; kk < k; ++kk) {
        const double wv = w(oc, ic, kk);
        const long off = static_cast<long>(kk) - static_cast<long>(pad);
        for (std::size_t o = 0; o < lo; ++o) {
          const long i = static_cast<long>(o * stride) + off;
          if (i < 0 || i >= static_cast<long>(len)) continue;
          yp[o] += wv * xp[static_cast<std::size_t>(i)];
        }
      }
    }
  }
  return y;
}

Tensor Conv1d::backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                        Tensor& gb) const {
  const std::size_t len = x.shape[1];
  const std::size_t lo = gy.shape[1];
  Tensor gx(x.shape);
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    const double* gp = &gy.val[oc * lo];
    double acc_b = 0.0;
    for (std::size_t p = 0; p < lo; ++p) acc_b += gp[p];
    gb.val[oc] += acc_b;
    for (std::size_t ic = 0; ic < in_ch; ++ic) {
      const double* xp = &x.val[ic * len];
      double* gxp = &gx.val[ic * len];
      for (std::size_t kk = 0; kk < k; ++kk) {
        const double wv = w(oc, ic, kk);
        const long off = static_cast<long>(kk) - static_cast<long>(pad);
        double acc_w = 0.0;
        for (std::size_t o = 0; o < lo; ++o) {
          const long i = static_cast<long>(o * stride) + off;
          if (i < 0 || i >= static_cast<long>(len)) continue;
          const double g = gp[o];
          acc_w += g * xp[static_cast<std::size_t>(i)];
          gxp[static_cast<std::size_t>(i)] += wv * g;
        }
        gw(oc, ic, kk) += acc_w;
      }
    }
  }
  return gx;
}

// ---------------------------------------------------------------- TConv1d

TConv1d::TConv1d(std::size_t in, std::size_t out, std::size_t kernel,
                 std::size_t stride_, std::size_t pad_)
    : in_ch(in), out_ch(out), k(kernel), stride(stride_), pad(pad_),
      w(Tensor({out, in, kernel})), b(Tensor({out})) {}

void TConv1d::init_params(Rng& rng) {
  w = he_normal({out_ch, in_ch, k}, in_ch * k, rng);
  b = Tensor({out_ch});
}

Tensor TConv1d::forward(const Tensor& x) const {
  check_input(x, in_ch, "TConv1d");
  const std::size_t len = x.shape[1];
  const std::size_t lo = out_len(len);
  Tensor y({out_ch, lo});
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    double* yp = &y.val[oc * lo];
    for (std::size_t p = 0; p < lo; ++p) yp[p] = b.val[oc];
    for (std::size_t ic = 0; ic < in_ch; ++ic) {
      const double* xp = &x.val[ic * len];
      for (std::size_t kk = 0; kk < k; ++kk) {
        const double wv = w(oc, ic, kk);
        const long off = static_cast<long>(kk) - static_cast<long>(pad);
        for (std::size_t i = 0; i < len; ++i) {
          const long o = static_cast<long>(i * stride) + off;
          if (o < 0 || o >= static_cast<long>(lo)) continue;
          yp[static_cast<std::size_t>(o)] += wv * xp[i];
        }
      }
    }
  }
  return y;
}

Tensor TConv1d::backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                         Tensor& gb) const {
  const std::size_t len = x.shape[1];
  const std::size_t lo = gy.shape[1];
  Tensor gx(x.shape);
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    const double* gp = &gy.val[oc * lo];
    double acc_b = 0.0;
    for (std::size_t p = 0; p < lo; ++p) acc_b += gp[p];
    gb.val[oc] += acc_b;
    for (std::size_t ic = 0; ic < in_ch; ++ic) {
      const double* xp = &x.val[ic * len];
      double* gxp = &gx.val[ic * len];
      for (std::size_t kk = 0; kk < k; ++kk) {
        const double wv = w(oc, ic, kk);
        const long off = static_cast<long>(kk) - static_cast<long>(pad);
        double acc_w = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
          const long o = static_cast<long>(i * stride) + off;
          if (o < 0 || o >= static_cast<long>(lo)) continue;
          const double g = gp[static_cast<std::size_t>(o)];
          acc_w += g * xp[i];
          gxp[i] += wv * g;
        }
        gw(oc, ic, kk) += acc_w;
      }
    }
  }
  return gx;
}

// ---------------------------------------------------------------- Dense

Dense::Dense(std::size_t in_, std::size_t out_)
    : in(in_), out(out_), w(Tensor({out_, in_})), b(Tensor({out_})) {}

void Dense::init_params(Rng& rng) {
  w = he_normal({out, in}, in, rng);
  b = Tensor({out});
}

Tensor Dense::forward(const Tensor& x) const {
  if (x.size() != in) throw DimensionError("Dense: input size mismatch");
  Tensor y({out});
  for (std::size_t o = 0; o < out; ++o) {
    double acc = b.val[o];
    const double* wrow = &w.val[o * in];
    for (std::size_t i = 0; i < in; ++i) acc += wrow[i] * x.val[i];
    y.val[o] = acc;
  }
  return y;
}

Tensor Dense::backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                       Tensor& gb) const {
  Tensor gx(x.shape);
  for (std::size_t o = 0; o < out; ++o) {
    const double g = gy.val[o];
    gb.val[o] += g;
    const double* wrow = &w.val[o * in];
    double* gwrow = &gw.val[o * in];
    for (std::size_t i = 0; i < in; ++i) {
      gwrow[i] += g * x.val[i];
      gx.val[i] += wrow[i] * g;
    }
  }
  return gx;
}

// ---------------------------------------------------------------- pointwise

Tensor relu(const Tensor& x) {
  Tensor y = x;
  for (auto& v : y.val) v = v > 0.0 ? v : 0.0;
  return y;
}

Tensor relu_backward(const Tensor& x, const Tensor& gy) {
  Tensor gx(x.shape);
  for (std::size_t i = 0; i < x.size(); ++i) {
    gx.val[i] = x.val[i] > 0.0 ? gy.val[i] : 0.0;
  }
  return gx;
}

Tensor global_avg_pool(const Tensor& x) {
  if (x.shape.size() != 3) throw DimensionError("global_avg_pool: expects [C,H,W]");
  const std::size_t c = x.shape[0], hw = x.shape[1] * x.shape[2];
  Tensor y({c});
  for (std::size_t i = 0; i < c; ++i) {
    double acc = 0.0;
    for (std::size_t p = 0; p < hw; ++p) acc += x.val[i * hw + p];
    y.val[i] = acc / static_cast<double>(hw);
  }
  return y;
}

Tensor global_avg_pool_backward(const Tensor& x, const Tensor& gy) {
  const std::size_t c = x.shape[0], hw = x.shape[1] * x.shape[2];
  Tensor gx(x.shape);
  for (std::size_t i = 0; i < c; ++i) {
    const double g = gy.val[i] / static_cast<double>(hw);
    for (std::size_t p = 0; p < hw; ++p) gx.val[i * hw + p] = g;
  }
  return gx;
}

Tensor instance_standardize(const Tensor& x) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x.val) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x.val) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (var == 0.0) {
    throw DegenerateInputError("instance_standardize: zero variance");
  }
  const double inv_sd = 1.0 / std::sqrt(var);
  Tensor y = x;
  for (auto& v : y.val) v = (v - mean) * inv_sd;
  return y;
}

Tensor instance_standardize_backward(const Tensor& x, const Tensor& gy) {
  const std::size_t n = x.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  double mean = 0.0;
  for (double v : x.val) mean += v;
  mean *= inv_n;
  double var = 0.0;
  for (double v : x.val) var += (v - mean) * (v - mean);
  var *= inv_n;
  const double inv_sd = 1.0 / std::sqrt(var);

  double gmean = 0.0, gdot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = (x.val[i] - mean) * inv_sd;
    gmean += gy.val[i];
    gdot += gy.val[i] * yi;
  }
  gmean *= inv_n;
  gdot *= inv_n;

  Tensor gx(x.shape);
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = (x.val[i] - mean) * inv_sd;
    gx.val[i] = inv_sd * (gy.val[i] - gmean - yi * gdot);
  }
  return gx;
}

Tensor cumsum(const Tensor& x) {
  Tensor y = x;
  double acc = 0.0;
  for (auto& v : y.val) {
    acc += v;
    v = acc;
  }
  return y;
}

Tensor cumsum_backward(const Tensor& gy) {
  Tensor gx = gy;
  double acc = 0.0;
  for (std::size_t i = gx.size(); i-- > 0;) {
    acc += gy.val[i];
    gx.val[i] = acc;
  }
  return gx;
}

Tensor mean_remove(const Tensor& x) {
  double mean = 0.0;
  for (double v : x.val) mean += v;
  mean /= static_cast<double>(x.size());
  Tensor y = x;
  for (auto& v : y.val) v -= mean;
  return y;
}

Tensor mean_remove_backward(const Tensor& gy) {
  return mean_remove(gy);
}

}  // namespace respcorr::nn
