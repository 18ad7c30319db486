#include "respcorr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "respcorr/grouping.hpp"

namespace respcorr::io {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

void store_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << j.dump(2) << "\n";
}

std::string domain_name(Domain d) {
  return d == Domain::image ? "image" : "kspace";
}

Domain domain_from(const std::string& s) {
  if (s == "image") return Domain::image;
  if (s == "kspace") return Domain::kspace;
  throw IoError("unknown domain tag: " + s);
}

}  // namespace

std::string sidecar_path(const std::string& data_path) {
  const std::size_t slash = data_path.find_last_of('/');
  const std::size_t dot = data_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return data_path + ".json";
  }
  return data_path.substr(0, dot) + ".json";
}

void write_planes(const std::string& path,
                  const std::vector<std::vector<Cd>>& planes,
                  const PlaneMeta& meta) {
  if (planes.empty()) throw DataError("write_planes: nothing to write");
  const std::size_t np = meta.rows * meta.cols;
  if (planes.size() != meta.coils) {
    throw DimensionError("write_planes: coil count mismatch");
  }
  for (const auto& p : planes) {
    if (p.size() != np) throw DimensionError("write_planes: plane size mismatch");
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  std::vector<float> buf(2 * np);
  for (const auto& plane : planes) {
    for (std::size_t i = 0; i < np; ++i) {
      buf[2 * i] = static_cast<float>(plane[i].real());
      buf[2 * i + 1] = static_cast<float>(plane[i].imag());
    }
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  }
  if (!f) throw IoError("short write: " + path);

  json sidecar;
  sidecar["rows"] = meta.rows;
  sidecar["cols"] = meta.cols;
  sidecar["coils"] = meta.coils;
  sidecar["domain"] = domain_name(meta.domain);
  sidecar["te_ms"] = meta.te_ms;
  sidecar["tr_ms"] = meta.tr_ms;
  sidecar["kind"] = meta.kind;
  store_json(sidecar_path(path), sidecar);
}

std::vector<std::vector<Cd>> read_planes(const std::string& path,
                                         PlaneMeta* meta_out) {
  const json sidecar = load_json(sidecar_path(path));
  PlaneMeta meta;
  meta.rows = sidecar.at("rows").get<std::size_t>();
  meta.cols = sidecar.at("cols").get<std::size_t>();
  meta.coils = sidecar.value("coils", std::size_t{1});
  meta.domain = domain_from(sidecar.value("domain", std::string("image")));
  meta.te_ms = sidecar.value("te_ms", kDefaultTeMs);
  meta.tr_ms = sidecar.value("tr_ms", kDefaultTrMs);
  meta.kind = sidecar.value("kind", std::string("slice"));

  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  const std::size_t np = meta.rows * meta.cols;
  std::vector<std::vector<Cd>> planes(meta.coils, std::vector<Cd>(np));
  std::vector<float> buf(2 * np);
  for (auto& plane : planes) {
    f.read(reinterpret_cast<char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (f.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(float))) {
      throw IoError(path + ": file shorter than the sidecar promises");
    }
    for (std::size_t i = 0; i < np; ++i) {
      plane[i] = Cd{static_cast<double>(buf[2 * i]),
                    static_cast<double>(buf[2 * i + 1])};
    }
  }
  if (meta_out != nullptr) *meta_out = meta;
  return planes;
}

void write_slice(const std::string& path, const ComplexSlice& s,
                 const std::string& kind) {
  PlaneMeta meta;
  meta.rows = s.n;
  meta.cols = s.n;
  meta.coils = 1;
  meta.domain = s.domain;
  meta.te_ms = s.te_ms;
  meta.tr_ms = s.tr_ms;
  meta.kind = kind;
  write_planes(path, {s.data}, meta);
}

ComplexSlice read_slice(const std::string& path) {
  PlaneMeta meta;
  auto planes = read_planes(path, &meta);
  if (meta.coils != 1 || meta.rows != meta.cols) {
    throw DataError(path + ": expected a single square plane");
  }
  ComplexSlice s(meta.rows, meta.domain, meta.te_ms, meta.tr_ms);
  s.data = std::move(planes[0]);
  return s;
}

void write_mask(const std::string& path, const Mask& m) {
  ComplexSlice s(m.n, Domain::image);
  for (std::size_t p = 0; p < m.in.size(); ++p) {
    s.data[p] = Cd{m.in[p] ? 1.0 : 0.0, 0.0};
  }
  write_slice(path, s, "mask");
}

Mask read_mask(const std::string& path) {
  const ComplexSlice s = read_slice(path);
  Mask m(s.n);
  for (std::size_t p = 0; p < s.data.size(); ++p) {
    m.in[p] = s.data[p].real() > 0.5 ? 1 : 0;
  }
  if (m.count() == 0) throw DataError(path + ": empty mask");
  return m;
}

RespirationTrace read_trace(const std::string& path) {
  RespirationTrace t;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("time_s,value", 0) != 0) {
      throw IoError(path + ": expected a time_s,value header");
    }
    std::vector<double> times;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      const std::size_t comma = line.find(',');
      if (comma == std::string::npos) throw IoError(path + ": bad CSV row");
      times.push_back(std::stod(line.substr(0, comma)));
      t.samples.push_back(std::stod(line.substr(comma + 1)));
    }
    if (times.size() < 2) throw DataError(path + ": trace too short");
    t.rate_hz = static_cast<double>(times.size() - 1) / (times.back() - times.front());
  } else {
    const json sidecar = load_json(sidecar_path(path));
    t.rate_hz = sidecar.at("rate_hz").get<double>();
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path);
    f.seekg(0, std::ios::end);
    const auto bytes = f.tellg();
    f.seekg(0);
    std::vector<float> buf(static_cast<std::size_t>(bytes) / sizeof(float));
    f.read(reinterpret_cast<char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(float)));
    t.samples.assign(buf.begin(), buf.end());
  }
  for (double v : t.samples) {
    if (!std::isfinite(v)) throw DataError(path + ": non-finite trace sample");
  }
  return t;
}

void write_trace_csv(const std::string& path, const RespirationTrace& t) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << "time_s,value\n";
  f.precision(17);
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    f << static_cast<double>(i) / t.rate_hz << ',' << t.samples[i] << '\n';
  }
}

void write_phase_csv(const std::string& path, const PhaseErrorSeries& phi) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << "pe_index,phi_rad\n";
  f.precision(17);
  for (std::size_t i = 0; i < phi.phi.size(); ++i) {
    f << i << ',' << phi.phi[i] << '\n';
  }
}

std::vector<double> read_phase_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("pe_index,phi_rad", 0) != 0) {
    throw IoError(path + ": expected a pe_index,phi_rad header");
  }
  std::vector<double> phi;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw IoError(path + ": bad CSV row");
    phi.push_back(std::stod(line.substr(comma + 1)));
  }
  return phi;
}

void write_label_csv(const std::string& path, std::span<const double> label,
                     double label_scale_rad) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << "pe_index,phi_rad,label,dlabel\n";
  f.precision(17);
  const std::vector<double> dlabel = differential_label(label);
  for (std::size_t i = 0; i < label.size(); ++i) {
    f << i << ',' << label[i] * label_scale_rad << ',' << label[i] << ','
      << dlabel[i] << '\n';
  }
}

std::vector<double> read_label_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("pe_index,phi_rad,label,dlabel", 0) != 0) {
    throw IoError(path + ": expected a pe_index,phi_rad,label,dlabel header");
  }
  std::vector<double> label;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');  // pe_index
    std::getline(ss, field, ',');  // phi_rad
    if (!std::getline(ss, field, ',')) throw IoError(path + ": bad CSV row");
    label.push_back(std::stod(field));
  }
  return label;
}

void write_recipe_json(const std::string& path, const CorruptionRecipe& recipe,
                       std::size_t image_index) {
  json j;
  j["peak_rad"] = recipe.peak_rad;
  j["trace_id"] = recipe.trace_id;
  j["start_offset_s"] = recipe.start_offset_s;
  j["rotation_deg"] = recipe.rotation_deg;
  j["flip_lr"] = recipe.flip_lr;
  if (std::isfinite(recipe.snr)) {
    j["snr"] = recipe.snr;
  } else {
    j["snr"] = nullptr;  // noise-free
  }
  j["rng_seed"] = recipe.rng_seed;
  j["image_index"] = image_index;
  store_json(path, j);
}

CorruptionRecipe read_recipe_json(const std::string& path,
                                  std::size_t* image_index) {
  const json j = load_json(path);
  CorruptionRecipe r;
  r.peak_rad = j.at("peak_rad").get<double>();
  r.trace_id = j.value("trace_id", std::size_t{0});
  r.start_offset_s = j.value("start_offset_s", 0.0);
  r.rotation_deg = j.value("rotation_deg", 0.0);
  r.flip_lr = j.value("flip_lr", false);
  if (j.contains("snr") && !j["snr"].is_null()) {
    r.snr = j["snr"].get<double>();
  } else {
    r.snr = std::numeric_limits<double>::infinity();
  }
  r.rng_seed = j.value("rng_seed", std::uint64_t{0});
  if (image_index != nullptr) *image_index = j.value("image_index", std::size_t{0});
  return r;
}

void write_loss_csv(const std::string& path,
                    const std::vector<nn::TrainRow>& history) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << "iter,loss,lr\n";
  f.precision(17);
  for (const auto& row : history) {
    f << row.iter << ',' << row.loss << ',' << row.lr << '\n';
  }
}

void write_pgm(const std::string& path, const ComplexSlice& s, double window_lo,
               double window_hi) {
  if (!(window_hi > window_lo)) throw DataError("write_pgm: bad window range");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << "P5\n# window " << window_lo << " " << window_hi << "\n"
    << s.n << " " << s.n << "\n255\n";
  std::vector<unsigned char> row(s.n);
  for (std::size_t r = 0; r < s.n; ++r) {
    for (std::size_t c = 0; c < s.n; ++c) {
      const double m = std::abs(s.at(r, c));
      const double t = std::clamp((m - window_lo) / (window_hi - window_lo), 0.0, 1.0);
      row[c] = static_cast<unsigned char>(std::lround(t * 255.0));
    }
    f.write(reinterpret_cast<const char*>(row.data()),
            static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace respcorr::io
