#pragma once

#include "respcorr/nn/tensor.hpp"
#include "respcorr/rng.hpp"

namespace respcorr::nn {

/// 2-D convolution over [in_ch, H, W], zero padding, square kernel.
struct Conv2d {
  std::size_t in_ch, out_ch, k, stride, pad;
  Tensor w;  // [out_ch, in_ch, k, k]
  Tensor b;  // [out_ch]

  Conv2d(std::size_t in, std::size_t out, std::size_t kernel,
         std::size_t stride_, std::size_t pad_);
  void init_params(Rng& rng);  // He init, zero biases
  std::size_t out_len(std::size_t in_len) const {
    return (in_len + 2 * pad - k) / stride + 1;
  }
  Tensor forward(const Tensor& x) const;
  /// Accumulates gw/gb, returns the input gradient.
  Tensor backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                  Tensor& gb) const;
};

/// 1-D convolution over [in_ch, L].
struct Conv1d {
  std::size_t in_ch, out_ch, k, stride, pad;
  Tensor w;  // [out_ch, in_ch, k]
  Tensor b;

  Conv1d(std::size_t in, std::size_t out, std::size_t kernel,
         std::size_t stride_, std::size_t pad_);
  void init_params(Rng& rng);
  std::size_t out_len(std::size_t in_len) const {
    return (in_len + 2 * pad - k) / stride + 1;
  }
  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                  Tensor& gb) const;
};

/// Transposed 1-D convolution; with k = 2*stride and pad = stride/2 the
/// output length is exactly stride * input length.
struct TConv1d {
  std::size_t in_ch, out_ch, k, stride, pad;
  Tensor w;  // [out_ch, in_ch, k]
  Tensor b;

  TConv1d(std::size_t in, std::size_t out, std::size_t kernel,
          std::size_t stride_, std::size_t pad_);
  void init_params(Rng& rng);
  std::size_t out_len(std::size_t in_len) const {
    return (in_len - 1) * stride + k - 2 * pad;
  }
  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                  Tensor& gb) const;
};

/// Fully connected layer over flat vectors.
struct Dense {
  std::size_t in, out;
  Tensor w;  // [out, in]
  Tensor b;

  Dense(std::size_t in_, std::size_t out_);
  void init_params(Rng& rng);
  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& gy, Tensor& gw,
                  Tensor& gb) const;
};

Tensor relu(const Tensor& x);
Tensor relu_backward(const Tensor& x, const Tensor& gy);

/// [C, H, W] -> [C] spatial mean.
Tensor global_avg_pool(const Tensor& x);
Tensor global_avg_pool_backward(const Tensor& x, const Tensor& gy);

/// (x - mean) / std over all elements (population statistics). Zero variance
/// is a degenerate input.
Tensor instance_standardize(const Tensor& x);
Tensor instance_standardize_backward(const Tensor& x, const Tensor& gy);

/// Running sum along a flat vector; backward is the reverse running sum.
Tensor cumsum(const Tensor& x);
Tensor cumsum_backward(const Tensor& gy);

/// x - mean(x); backward is gy - mean(gy).
Tensor mean_remove(const Tensor& x);
Tensor mean_remove_backward(const Tensor& gy);

}  // namespace respcorr::nn
