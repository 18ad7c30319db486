#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "respcorr/io.hpp"
#include "respcorr/phantom.hpp"
#include "test_util.hpp"

using namespace respcorr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "respcorr_io_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("slice round trip keeps metadata and float32 payload") {
  TempDir tmp;
  ComplexSlice s = testutil::random_slice(32, 1, Domain::kspace);
  s.te_ms = 41.5;
  s.tr_ms = 1200.0;
  io::write_slice(tmp.file("k.cplx"), s);
  CHECK(fs::exists(tmp.file("k.json")));

  const ComplexSlice back = io::read_slice(tmp.file("k.cplx"));
  CHECK(back.n == 32);
  CHECK(back.domain == Domain::kspace);
  CHECK(back.te_ms == 41.5);
  CHECK(back.tr_ms == 1200.0);
  for (std::size_t p = 0; p < s.data.size(); ++p) {
    // float32 quantization is the only loss
    CHECK(back.data[p].real() ==
          static_cast<double>(static_cast<float>(s.data[p].real())));
    CHECK(back.data[p].imag() ==
          static_cast<double>(static_cast<float>(s.data[p].imag())));
  }

  // writing float32 data back reproduces the file byte for byte
  io::write_slice(tmp.file("k2.cplx"), back);
  std::ifstream a(tmp.file("k.cplx"), std::ios::binary);
  std::ifstream b(tmp.file("k2.cplx"), std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);
}

TEST_CASE("multi-plane files carry the coil count") {
  TempDir tmp;
  const Phantom ph = shepp_logan(16);
  std::vector<std::vector<Cd>> planes(3, ph.image.data);
  io::PlaneMeta meta;
  meta.rows = 16;
  meta.cols = 16;
  meta.coils = 3;
  meta.kind = "sensitivities";
  io::write_planes(tmp.file("sens.cplx"), planes, meta);

  io::PlaneMeta got;
  const auto back = io::read_planes(tmp.file("sens.cplx"), &got);
  CHECK(got.coils == 3);
  CHECK(got.kind == "sensitivities");
  CHECK(back.size() == 3);

  // truncated payload is refused
  fs::resize_file(tmp.file("sens.cplx"), 100);
  CHECK_THROWS_AS(io::read_planes(tmp.file("sens.cplx")), IoError);
}

TEST_CASE("mask round trip") {
  TempDir tmp;
  const Phantom ph = shepp_logan(32);
  io::write_mask(tmp.file("mask.cplx"), ph.mask);
  const Mask back = io::read_mask(tmp.file("mask.cplx"));
  CHECK(back.in == ph.mask.in);
}

TEST_CASE("trace CSV and raw float32 round trips") {
  TempDir tmp;
  RespirationTrace t;
  t.rate_hz = 50.0;
  for (int i = 0; i < 500; ++i) t.samples.push_back(std::sin(0.1 * i));

  io::write_trace_csv(tmp.file("trace.csv"), t);
  const RespirationTrace back = io::read_trace(tmp.file("trace.csv"));
  CHECK(back.samples.size() == t.samples.size());
  CHECK(back.rate_hz == doctest::Approx(50.0).epsilon(1e-9));
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    CHECK(back.samples[i] == doctest::Approx(t.samples[i]).epsilon(1e-12));
  }

  // raw float32 with sidecar
  {
    std::ofstream f(tmp.file("trace.f32"), std::ios::binary);
    std::vector<float> buf(t.samples.begin(), t.samples.end());
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    std::ofstream j(tmp.file("trace.json"));
    j << "{\"rate_hz\": 50.0}\n";
  }
  const RespirationTrace raw = io::read_trace(tmp.file("trace.f32"));
  CHECK(raw.rate_hz == 50.0);
  CHECK(raw.samples.size() == t.samples.size());

  CHECK_THROWS_AS(io::read_trace(tmp.file("missing.csv")), IoError);
}

TEST_CASE("phase and label CSV round trips") {
  TempDir tmp;
  PhaseErrorSeries phi;
  phi.te_ms = 41.5;
  Rng rng(2);
  for (int i = 0; i < 64; ++i) phi.phi.push_back(rng.uniform(-0.6, 0.6));

  io::write_phase_csv(tmp.file("phi.csv"), phi);
  const auto back = io::read_phase_csv(tmp.file("phi.csv"));
  REQUIRE(back.size() == phi.phi.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == phi.phi[i]);

  std::vector<double> label(phi.phi.size());
  for (std::size_t i = 0; i < label.size(); ++i) label[i] = phi.phi[i] / 0.63;
  io::write_label_csv(tmp.file("label.csv"), label);
  const auto label_back = io::read_label_csv(tmp.file("label.csv"));
  REQUIRE(label_back.size() == label.size());
  for (std::size_t i = 0; i < label.size(); ++i) CHECK(label_back[i] == label[i]);

  // the dlabel column telescopes back to phi
  std::ifstream f(tmp.file("label.csv"));
  std::string line;
  std::getline(f, line);  // header
  double acc = 0.0;
  std::size_t i = 0;
  while (std::getline(f, line)) {
    const auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
    const auto c3 = line.find(',', c2 + 1);
    acc += std::stod(line.substr(c3 + 1));
    CHECK(std::abs(acc * 0.63 - phi.phi[i]) < 1e-12);
    ++i;
  }
  CHECK(i == phi.phi.size());
}

TEST_CASE("recipe JSON round trip including the noise-free marker") {
  TempDir tmp;
  CorruptionRecipe r;
  r.peak_rad = 0.44;
  r.trace_id = 3;
  r.start_offset_s = 17.25;
  r.rotation_deg = -4.5;
  r.flip_lr = true;
  r.snr = 120.0;
  r.rng_seed = 0xDEADBEEF;
  io::write_recipe_json(tmp.file("recipe.json"), r, 5);

  std::size_t image_index = 0;
  const CorruptionRecipe back = io::read_recipe_json(tmp.file("recipe.json"), &image_index);
  CHECK(back.peak_rad == r.peak_rad);
  CHECK(back.trace_id == 3);
  CHECK(back.start_offset_s == r.start_offset_s);
  CHECK(back.rotation_deg == r.rotation_deg);
  CHECK(back.flip_lr == true);
  CHECK(back.snr == 120.0);
  CHECK(back.rng_seed == 0xDEADBEEF);
  CHECK(image_index == 5);

  r.snr = std::numeric_limits<double>::infinity();
  io::write_recipe_json(tmp.file("recipe_inf.json"), r, 0);
  const CorruptionRecipe inf_back = io::read_recipe_json(tmp.file("recipe_inf.json"));
  CHECK(std::isinf(inf_back.snr));
}

TEST_CASE("pgm preview declares the window and writes n*n bytes") {
  TempDir tmp;
  const Phantom ph = shepp_logan(32);
  io::write_pgm(tmp.file("prev.pgm"), ph.image, 0.0, 1.0);
  std::ifstream f(tmp.file("prev.pgm"), std::ios::binary);
  std::string magic, comment;
  std::getline(f, magic);
  std::getline(f, comment);
  CHECK(magic == "P5");
  CHECK(comment.find("# window 0 1") == 0);
  std::string dims, maxval;
  std::getline(f, dims);
  std::getline(f, maxval);
  CHECK(dims == "32 32");
  CHECK(maxval == "255");
  const std::string payload((std::istreambuf_iterator<char>(f)), {});
  CHECK(payload.size() == 32 * 32);

  CHECK_THROWS_AS(io::write_pgm(tmp.file("bad.pgm"), ph.image, 1.0, 1.0), DataError);
}

TEST_CASE("sidecar path derivation") {
  CHECK(io::sidecar_path("foo.cplx") == "foo.json");
  CHECK(io::sidecar_path("dir.v2/foo.cplx") == "dir.v2/foo.json");
  CHECK(io::sidecar_path("dir.v2/foo") == "dir.v2/foo.json");
  CHECK(io::sidecar_path("foo") == "foo.json");
}
