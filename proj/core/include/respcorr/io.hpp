#pragma once

#include <span>
#include <string>
#include <vector>

#include "respcorr/corrupt.hpp"
#include "respcorr/nn/train.hpp"
#include "respcorr/respiration.hpp"
#include "respcorr/slice.hpp"

namespace respcorr::io {

/// Complex-array format used repo-wide: raw little-endian float32 interleaved
/// (re, im), row-major, coil-major for multi-plane files, no header. The
/// metadata lives in a JSON sidecar with the same basename and suffix .json.
struct PlaneMeta {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t coils = 1;
  Domain domain = Domain::image;
  double te_ms = kDefaultTeMs;
  double tr_ms = kDefaultTrMs;
  std::string kind = "slice";  // slice | mask | sensitivities | navigator
};

std::string sidecar_path(const std::string& data_path);

void write_planes(const std::string& path,
                  const std::vector<std::vector<Cd>>& planes,
                  const PlaneMeta& meta);
std::vector<std::vector<Cd>> read_planes(const std::string& path,
                                         PlaneMeta* meta = nullptr);

void write_slice(const std::string& path, const ComplexSlice& s,
                 const std::string& kind = "slice");
ComplexSlice read_slice(const std::string& path);

/// Masks are stored in the same format with values 0/1.
void write_mask(const std::string& path, const Mask& m);
Mask read_mask(const std::string& path);

/// Respiration traces: CSV with header `time_s,value`, or raw float32 with a
/// JSON sidecar carrying rate_hz. Dispatch is by extension (.csv).
RespirationTrace read_trace(const std::string& path);
void write_trace_csv(const std::string& path, const RespirationTrace& t);

/// Phase-series CSV: `pe_index,phi_rad`.
void write_phase_csv(const std::string& path, const PhaseErrorSeries& phi);
std::vector<double> read_phase_csv(const std::string& path);

/// Dataset label CSV: `pe_index,phi_rad,label,dlabel` where label = phi/0.63
/// and dlabel is the differential of label (cumulative sum reproduces it).
void write_label_csv(const std::string& path, std::span<const double> label,
                     double label_scale_rad = kLabelScaleRad);
std::vector<double> read_label_csv(const std::string& path);

void write_recipe_json(const std::string& path, const CorruptionRecipe& recipe,
                       std::size_t image_index);
CorruptionRecipe read_recipe_json(const std::string& path,
                                  std::size_t* image_index = nullptr);

/// Loss history CSV: `iter,loss,lr`.
void write_loss_csv(const std::string& path,
                    const std::vector<nn::TrainRow>& history);

/// 8-bit magnitude preview, binary PGM; the window range is declared in a
/// comment line.
void write_pgm(const std::string& path, const ComplexSlice& s, double window_lo,
               double window_hi);

}  // namespace respcorr::io
