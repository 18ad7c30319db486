#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "respcorr/grouping.hpp"
#include "respcorr/nn/layers.hpp"
#include "respcorr/nn/net.hpp"
#include "respcorr/nn/train.hpp"
#include "respcorr/slice.hpp"

namespace respcorr {

/// Target standard deviation of the combined-image magnitude after input
/// scaling.
inline constexpr double kMagnitudeStdTarget = 0.25;

/// Four-channel stage-1 input: bandpass real/imag standardized per instance
/// to zero mean and unit variance, original real/imag jointly scaled so the
/// magnitude has standard deviation kMagnitudeStdTarget.
nn::Tensor assemble_input(const ComplexSlice& original,
                          const ComplexSlice& bandpass);

/// Per-group differential extractor: four conv stages (stride 2, widths
/// 16/32/64/128), global average pooling, one hidden dense layer, and a
/// linear head of `out_len` differential values in label-normalized units.
class Stage1Net : public nn::Network {
 public:
  Stage1Net(std::size_t n, std::size_t out_len, std::uint64_t seed);

  std::size_t input_size() const { return n_; }
  std::size_t output_size() const { return out_len_; }

  nn::Tensor forward(const nn::Tensor& x, Tape& tape) const override;
  nn::Tensor backward(const nn::Tensor& gy, const Tape& tape,
                      std::vector<nn::Tensor>& grads) const override;
  std::vector<nn::Tensor*> parameters() override;
  std::vector<const nn::Tensor*> parameters() const override;

 private:
  std::size_t n_, out_len_;
  nn::Conv2d c1_, c2_, c3_, c4_;
  nn::Dense d1_, d2_;
};

/// Differential-to-phase accumulator: a 1-D convolutional autoencoder whose
/// output is added to a fixed cumulative-sum path, then mean-removed. With
/// all-zero weights it reduces exactly to accumulate_naive. The encoder sees
/// the differential vector and the mean-removed cumulative sum as two
/// channels.
class Stage2Net : public nn::Network {
 public:
  Stage2Net(std::size_t n, std::uint64_t seed);

  std::size_t length() const { return n_; }

  nn::Tensor forward(const nn::Tensor& x, Tape& tape) const override;
  nn::Tensor backward(const nn::Tensor& gy, const Tape& tape,
                      std::vector<nn::Tensor>& grads) const override;
  std::vector<nn::Tensor*> parameters() override;
  std::vector<const nn::Tensor*> parameters() const override;

 private:
  std::size_t n_;
  nn::Conv1d e1_, e2_, e3_;
  nn::TConv1d g1_, g2_, g3_;
};

enum class EstimatorVariant { oracle, navigator, cumulative_baseline, neural };

const char* to_string(EstimatorVariant v);
EstimatorVariant variant_from_string(const std::string& s);

/// A phase estimator behind one interface: oracle passthrough, navigator
/// processing, or the trainable two-stage pipeline (with or without the
/// stage-2 network).
struct EstimatorModel {
  EstimatorVariant variant = EstimatorVariant::oracle;
  GroupSpec spec;
  std::shared_ptr<Stage1Net> stage1;
  std::shared_ptr<Stage2Net> stage2;
  double label_scale_rad = 0.63;
  double mag_std_target = kMagnitudeStdTarget;
};

/// Side inputs for the non-trainable variants.
struct EstimateAux {
  const PhaseErrorSeries* true_phi = nullptr;                  // oracle
  const std::vector<std::vector<Cd>>* navigator = nullptr;     // navigator
  double te_nav_ms = 0.0;
};

/// Stage-1 outputs for group g, in label-normalized units.
std::vector<double> stage1_estimate(const EstimatorModel& model,
                                    const ComplexSlice& image, std::size_t g);

/// Full-length differential vector -> mean-removed normalized phase estimate.
std::vector<double> stage2_estimate(const EstimatorModel& model,
                                    std::span<const double> d);

/// Full per-variant pipeline; returns radians (mean-removed for the trainable
/// variants).
PhaseErrorSeries estimate(const EstimatorModel& model,
                          const ComplexSlice& image,
                          const EstimateAux& aux = {});

/// Navigator processing: per line, the inner product against the central
/// line summed over readout, phase averaged over channels, a 15th-order
/// polynomial trend removed, then scaled by te_img/te_nav.
PhaseErrorSeries navigator_estimate(const std::vector<std::vector<Cd>>& nav,
                                    std::size_t n, double te_img_ms,
                                    double te_nav_ms);

/// Least-squares removal of a polynomial trend (orthogonalized basis on
/// indices mapped to [-1, 1]).
std::vector<double> poly_detrend(std::span<const double> y, int order = 15);

/// Flat float32 parameter blob (`base`.bin) plus JSON manifest (`base`.json).
void save_model(const std::string& base, const EstimatorModel& model);
EstimatorModel load_model(const std::string& base);

/// Stage-1 training view: one sample per (pair, group), the four-channel
/// input assembled on the fly from the stored corrupted slice. Planes are
/// kept in float precision (they come from float32 files anyway).
class Stage1SampleSource : public nn::SampleSource {
 public:
  explicit Stage1SampleSource(GroupSpec spec);

  /// label = phi / label_scale, one value per PE line.
  void add(const ComplexSlice& corrupted, std::span<const double> label);

  std::size_t pairs() const { return planes_.size(); }
  std::size_t size() const override { return planes_.size() * spec_.groups; }
  void get(std::size_t idx, nn::Tensor& x, nn::Tensor& y) const override;

  /// Rebuilds pair p's slice in double precision.
  ComplexSlice slice(std::size_t p) const;
  const std::vector<double>& label(std::size_t p) const { return labels_[p]; }

 private:
  GroupSpec spec_;
  std::vector<std::vector<std::complex<float>>> planes_;
  std::vector<std::vector<double>> labels_;   // normalized phi
  std::vector<std::vector<double>> dlabels_;  // differential of label
};

/// Stage-2 training view: the true differential vector plus i.i.d. Gaussian
/// noise in, the mean-removed normalized phase out. Noise comes from a
/// stream derived from (seed, sample index).
class Stage2NoisySource : public nn::SampleSource {
 public:
  Stage2NoisySource(std::vector<std::vector<double>> labels, double noise_std,
                    std::uint64_t seed);

  std::size_t size() const override { return labels_.size(); }
  void get(std::size_t idx, nn::Tensor& x, nn::Tensor& y) const override;

 private:
  std::vector<std::vector<double>> labels_;
  double noise_std_;
  std::uint64_t seed_;
};

}  // namespace respcorr
