#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "respcorr/nn/net.hpp"
#include "respcorr/nn/optim.hpp"
#include "respcorr/rng.hpp"

// Central finite-difference verification of analytic gradients. The loss is
// a fixed random projection of the outputs; every perturbable coordinate
// (inputs and parameters) carries its analytic gradient next to a pointer so
// the check can nudge it in place.
namespace gradcheck {

struct Problem {
  std::function<double()> loss;
  std::vector<double*> coords;
  std::vector<double> analytic;
};

inline double max_rel_error(const Problem& p, respcorr::Rng& rng,
                            std::size_t points, double h = 1e-4) {
  double worst = 0.0;
  for (std::size_t s = 0; s < points; ++s) {
    const std::size_t i = rng.index(p.coords.size());
    double* c = p.coords[i];
    const double saved = *c;
    *c = saved + h;
    const double up = p.loss();
    *c = saved - h;
    const double down = p.loss();
    *c = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double denom =
        std::max(1e-8, std::max(std::abs(numeric), std::abs(p.analytic[i])));
    worst = std::max(worst, std::abs(numeric - p.analytic[i]) / denom);
  }
  return worst;
}

// Projection-loss problem for a parameterized layer struct (anything with
// forward(x) and backward(x, gy, gw, gb) plus w/b tensors).
template <typename Layer>
Problem layer_problem(Layer& layer, respcorr::nn::Tensor& x,
                      std::uint64_t seed) {
  using respcorr::nn::Tensor;
  respcorr::Rng rng(seed);
  const Tensor y0 = layer.forward(x);
  Tensor r(y0.shape);
  for (auto& v : r.val) v = rng.normal();

  Tensor gw(layer.w.shape), gb(layer.b.shape);
  const Tensor gx = layer.backward(x, r, gw, gb);

  Problem p;
  p.loss = [&layer, &x, r]() {
    const Tensor y = layer.forward(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += r.val[i] * y.val[i];
    return acc;
  };
  auto add = [&p](Tensor& t, const Tensor& g) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      p.coords.push_back(&t.val[i]);
      p.analytic.push_back(g.val[i]);
    }
  };
  add(x, gx);
  add(layer.w, gw);
  add(layer.b, gb);
  return p;
}

// Projection-loss problem for a unary kernel given as forward/backward
// function objects.
template <typename Fwd, typename Bwd>
Problem unary_problem(Fwd fwd, Bwd bwd, respcorr::nn::Tensor& x,
                      std::uint64_t seed) {
  using respcorr::nn::Tensor;
  respcorr::Rng rng(seed);
  const Tensor y0 = fwd(x);
  Tensor r(y0.shape);
  for (auto& v : r.val) v = rng.normal();
  const Tensor gx = bwd(x, r);

  Problem p;
  p.loss = [fwd, &x, r]() {
    const Tensor y = fwd(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += r.val[i] * y.val[i];
    return acc;
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    p.coords.push_back(&x.val[i]);
    p.analytic.push_back(gx.val[i]);
  }
  return p;
}

// Projection-loss problem for a whole Network: d(sum r.y)/d(input, params).
inline Problem network_problem(respcorr::nn::Network& net,
                               respcorr::nn::Tensor& x,
                               std::uint64_t seed) {
  using respcorr::nn::Tensor;
  respcorr::Rng rng(seed);

  respcorr::nn::Network::Tape tape;
  const Tensor y0 = net.forward(x, tape);
  Tensor r(y0.shape);
  for (auto& v : r.val) v = rng.normal();

  std::vector<Tensor> grads = net.grad_buffers();
  const Tensor gx = net.backward(r, tape, grads);

  Problem p;
  p.loss = [&net, &x, r]() {
    respcorr::nn::Network::Tape t;
    const Tensor y = net.forward(x, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += r.val[i] * y.val[i];
    return acc;
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    p.coords.push_back(&x.val[i]);
    p.analytic.push_back(gx.val[i]);
  }
  const auto params = net.parameters();
  for (std::size_t t = 0; t < params.size(); ++t) {
    for (std::size_t i = 0; i < params[t]->size(); ++i) {
      p.coords.push_back(&params[t]->val[i]);
      p.analytic.push_back(grads[t].val[i]);
    }
  }
  return p;
}

}  // namespace gradcheck
