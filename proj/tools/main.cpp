// respcorr: simulate, estimate, and correct respiration-induced phase-error
// artifacts in 2-D gradient-echo k-space.
//
// Exit codes: 0 success, 2 usage, 3 data/file problems, 4 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "respcorr/correction.hpp"
#include "respcorr/corrupt.hpp"
#include "respcorr/estimator.hpp"
#include "respcorr/io.hpp"
#include "respcorr/kspace.hpp"
#include "respcorr/metrics.hpp"
#include "respcorr/phantom.hpp"
#include "respcorr/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace respcorr;

namespace {

json manifest_base(const std::string& command) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  return m;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
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

// A config file may be a previous run's manifest; in that case the original
// config is nested under "config".
json load_config(const std::string& path) {
  json j = read_json_file(path);
  if (j.contains("command") && j.contains("config")) return j["config"];
  return j;
}

std::string pair_basename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "pair_%06zu", index);
  return buf;
}

// ------------------------------------------------------------------ phantom

struct PhantomArgs {
  std::size_t size = 224;
  std::string out;
};

void cmd_phantom(const PhantomArgs& a) {
  fs::create_directories(a.out);
  const Phantom ph = shepp_logan(a.size);
  io::write_slice(a.out + "/phantom.cplx", ph.image);
  io::write_mask(a.out + "/mask.cplx", ph.mask);
  json m = manifest_base("phantom");
  m["config"] = {{"size", a.size}};
  write_json_file(a.out + "/manifest.json", m);
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string image, mask, trace, out;
  double peak = kLabelScaleRad;
  double snr = 0.0;  // 0 = noise-free
  double rotation = 0.0;
  double period_s = 1.2;
  bool flip = false;
  std::uint64_t seed = 0;
};

void cmd_simulate(const SimulateArgs& a) {
  const ComplexSlice clean = io::read_slice(a.image);
  const Mask mask = a.mask.empty() ? auto_mask(clean) : io::read_mask(a.mask);
  const RespirationTrace trace = preprocess_respiration(io::read_trace(a.trace));

  Rng rng(a.seed);
  const double span = static_cast<double>(clean.n - 1) * a.period_s;
  const double max_start = trace.duration_s() - span;
  if (max_start < 0.0) {
    throw DataError("simulate: trace too short for the sampling window");
  }

  CorruptionRecipe recipe;
  recipe.peak_rad = a.peak;
  recipe.start_offset_s = rng.uniform(0.0, max_start);
  recipe.rotation_deg = a.rotation;
  recipe.flip_lr = a.flip;
  recipe.snr = a.snr > 0.0 ? a.snr : std::numeric_limits<double>::infinity();
  recipe.rng_seed = rng.next_u64();

  const auto sampled =
      sample_trace(trace, a.period_s, clean.n, recipe.start_offset_s);
  const PhaseErrorSeries phi = scale_to_peak(sampled, a.peak, clean.te_ms);
  const TrainingPair pair = corrupt(clean, mask, phi, recipe);

  fs::create_directories(a.out);
  io::write_slice(a.out + "/corrupted.cplx", pair.corrupted);
  io::write_slice(a.out + "/corrupted_k.cplx", fft2c(pair.corrupted));
  io::write_phase_csv(a.out + "/phi.csv", phi);
  io::write_label_csv(a.out + "/label.csv", pair.label);
  io::write_recipe_json(a.out + "/recipe.json", pair.recipe, 0);

  json m = manifest_base("simulate");
  m["config"] = {{"image", a.image},     {"mask", a.mask},
                 {"trace", a.trace},     {"peak", a.peak},
                 {"snr", a.snr},         {"rotation", a.rotation},
                 {"flip", a.flip},       {"seed", a.seed},
                 {"period_s", a.period_s}};
  write_json_file(a.out + "/manifest.json", m);
}

// -------------------------------------------------------------- make-dataset

struct MakeDatasetArgs {
  std::string config, out;
  std::size_t workers = 1;
};

void cmd_make_dataset(const MakeDatasetArgs& a) {
  const json cfg_json = load_config(a.config);

  DatasetConfig ds;
  ds.n = cfg_json.value("n", std::size_t{224});
  ds.te_ms = cfg_json.value("te_ms", kDefaultTeMs);
  ds.tr_ms = cfg_json.value("tr_ms", kDefaultTrMs);
  ds.period_s = cfg_json.value("period_s", 1.2);
  ds.peak_min_rad = cfg_json.value("peak_min_rad", 0.03);
  ds.peak_max_rad = cfg_json.value("peak_max_rad", kLabelScaleRad);
  ds.rotation_min_deg = cfg_json.value("rotation_min_deg", -10.0);
  ds.rotation_max_deg = cfg_json.value("rotation_max_deg", 10.0);
  ds.allow_flip = cfg_json.value("allow_flip", true);
  ds.snr_min = cfg_json.value("snr_min", 30.0);
  ds.snr_max = cfg_json.value("snr_max", 200.0);
  ds.noise_free = cfg_json.value("noise_free", false);
  const std::size_t count = cfg_json.at("count").get<std::size_t>();
  const std::uint64_t seed = cfg_json.value("seed", std::uint64_t{0});

  std::vector<ComplexSlice> images;
  std::vector<Mask> masks;
  if (!cfg_json.contains("images")) {
    throw DataError("make-dataset: config needs an images list");
  }
  for (const auto& p : cfg_json["images"]) {
    images.push_back(io::read_slice(p.get<std::string>()));
    if (images.back().n != ds.n) {
      throw DimensionError("make-dataset: image size != configured n");
    }
  }
  if (cfg_json.contains("masks")) {
    for (const auto& p : cfg_json["masks"]) {
      masks.push_back(io::read_mask(p.get<std::string>()));
    }
    if (masks.size() != images.size()) {
      throw DataError("make-dataset: masks list must parallel images");
    }
  } else {
    for (const auto& img : images) masks.push_back(auto_mask(img));
  }

  std::vector<RespirationTrace> traces;
  if (cfg_json.contains("traces")) {
    for (const auto& p : cfg_json["traces"]) {
      traces.push_back(
          preprocess_respiration(io::read_trace(p.get<std::string>())));
    }
  }
  if (cfg_json.contains("synthetic_traces")) {
    const json& s = cfg_json["synthetic_traces"];
    const std::size_t n_traces = s.at("count").get<std::size_t>();
    const std::uint64_t trace_seed = s.value("seed", std::uint64_t{0});
    const double duration = s.value("duration_s", 390.0);
    const double rate = s.value("rate_hz", 500.0);
    const BreathingKind kind = s.value("kind", std::string("deep")) == "natural"
                                   ? BreathingKind::natural
                                   : BreathingKind::deep;
    for (std::size_t i = 0; i < n_traces; ++i) {
      traces.push_back(
          synthetic_trace(Rng::derive(trace_seed, i), duration, rate, kind));
    }
  }
  if (traces.empty()) {
    throw DataError("make-dataset: config needs traces or synthetic_traces");
  }

  fs::create_directories(a.out);
  const std::size_t workers = std::max<std::size_t>(1, a.workers);
  auto emit = [&](std::size_t index) {
    const TrainingPair pair = make_pair(images, masks, traces, ds, seed, index);
    const std::string base = a.out + "/" + pair_basename(index);
    io::write_slice(base + ".cplx", pair.corrupted);
    io::write_label_csv(base + ".label.csv", pair.label);
    io::write_recipe_json(base + ".recipe.json", pair.recipe, pair.image_index);
  };
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) emit(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) emit(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  json m = manifest_base("make-dataset");
  json cfg_echo = cfg_json;
  cfg_echo["count"] = count;
  cfg_echo["seed"] = seed;
  m["config"] = cfg_echo;
  m["count"] = count;
  m["seed"] = seed;
  m["n"] = ds.n;
  write_json_file(a.out + "/manifest.json", m);
}

// -------------------------------------------------------------------- train

struct TrainArgs {
  std::string dataset, config, out_model, base_model;
  int stage = 1;
  std::size_t workers = 1;
};

struct LoadedPairs {
  std::size_t n = 0;
  std::vector<ComplexSlice> slices;
  std::vector<std::vector<double>> labels;
};

LoadedPairs load_pairs(const std::string& dir) {
  const json manifest = read_json_file(dir + "/manifest.json");
  const std::size_t count = manifest.at("count").get<std::size_t>();
  LoadedPairs out;
  out.n = manifest.at("n").get<std::size_t>();
  out.slices.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string base = dir + "/" + pair_basename(i);
    out.slices.push_back(io::read_slice(base + ".cplx"));
    out.labels.push_back(io::read_label_csv(base + ".label.csv"));
  }
  return out;
}

void cmd_train(const TrainArgs& a) {
  const json cfg = a.config.empty() ? json::object() : load_config(a.config);

  nn::TrainConfig tc;
  tc.lr_init = cfg.value("lr_init", 4e-3);
  tc.plateau_factor = cfg.value("plateau_factor", 0.5);
  tc.plateau_patience_iters =
      cfg.value("plateau_patience_iters", std::size_t{1000});
  tc.plateau_threshold = cfg.value("plateau_threshold", 1e-3);
  tc.batch_size = cfg.value("batch_size", std::size_t{100});
  tc.epochs_stage1 = cfg.value("epochs_stage1", std::size_t{4});
  tc.epochs_stage2 = cfg.value("epochs_stage2", std::size_t{2});
  tc.rng_seed = cfg.value("rng_seed", std::uint64_t{0});
  tc.workers = a.workers;
  const std::uint64_t init_seed = cfg.value("init_seed", std::uint64_t{1});

  const LoadedPairs pairs = load_pairs(a.dataset);
  if (pairs.slices.empty()) throw DataError("train: empty dataset");

  std::size_t groups = cfg.value("groups", std::size_t{0});
  if (groups == 0) {
    if (pairs.n % 16 != 0) {
      throw DataError("train: set groups explicitly for this matrix size");
    }
    groups = pairs.n / 16;
  }
  const GroupSpec spec = GroupSpec::make(pairs.n, groups);

  EstimatorModel model;
  model.spec = spec;
  if (!a.base_model.empty()) {
    model = load_model(a.base_model);
    if (model.spec.n != pairs.n) {
      throw DataError("train: base model does not match the dataset size");
    }
  }

  nn::TrainResult result;
  if (a.stage == 1) {
    Stage1SampleSource source(spec);
    for (std::size_t i = 0; i < pairs.slices.size(); ++i) {
      source.add(pairs.slices[i], pairs.labels[i]);
    }
    model.stage1 =
        std::make_shared<Stage1Net>(spec.n, spec.lines_per_group, init_seed);
    result = nn::train(*model.stage1, source, tc, 1);
    if (!model.stage2) model.variant = EstimatorVariant::cumulative_baseline;
  } else {
    const double noise_std = cfg.value("stage2_noise_std", 0.1);
    const std::uint64_t noise_seed =
        cfg.value("stage2_noise_seed", std::uint64_t{17});
    Stage2NoisySource source(pairs.labels, noise_std, noise_seed);
    model.stage2 = std::make_shared<Stage2Net>(pairs.n, init_seed);
    result = nn::train(*model.stage2, source, tc, 2);
    model.variant = EstimatorVariant::neural;
  }

  save_model(a.out_model, model);
  io::write_loss_csv(a.out_model + ".loss.csv", result.history);
  json m = manifest_base("train");
  json cfg_echo = cfg;
  cfg_echo["stage"] = a.stage;
  m["config"] = cfg_echo;
  m["dataset"] = a.dataset;
  m["iterations"] = result.history.size();
  m["final_loss"] = result.history.empty() ? 0.0 : result.history.back().loss;
  write_json_file(a.out_model + ".manifest.json", m);
}

// ------------------------------------------------------------------ estimate

struct EstimateArgs {
  std::string image, model, variant = "oracle", label, nav, out;
  double te_nav = 0.0;
};

void cmd_estimate(const EstimateArgs& a) {
  const ComplexSlice image = io::read_slice(a.image);
  const EstimatorVariant variant = variant_from_string(a.variant);

  PhaseErrorSeries result;
  if (variant == EstimatorVariant::oracle) {
    if (a.label.empty()) {
      throw DataError("estimate: the oracle variant needs --label");
    }
    PhaseErrorSeries truth;
    truth.phi = io::read_phase_csv(a.label);
    truth.te_ms = image.te_ms;
    EstimatorModel model;
    model.variant = variant;
    EstimateAux aux;
    aux.true_phi = &truth;
    result = estimate(model, image, aux);
  } else if (variant == EstimatorVariant::navigator) {
    if (a.nav.empty()) {
      throw DataError("estimate: the navigator variant needs --nav");
    }
    io::PlaneMeta meta;
    const auto nav = io::read_planes(a.nav, &meta);
    const double te_nav = a.te_nav > 0.0 ? a.te_nav : meta.te_ms;
    EstimatorModel model;
    model.variant = variant;
    EstimateAux aux;
    aux.navigator = &nav;
    aux.te_nav_ms = te_nav;
    result = estimate(model, image, aux);
  } else {
    if (a.model.empty()) {
      throw DataError("estimate: the trainable variants need --model");
    }
    EstimatorModel model = load_model(a.model);
    model.variant = variant;  // the flag picks the pipeline
    result = estimate(model, image);
  }

  fs::create_directories(a.out);
  io::write_phase_csv(a.out + "/phase.csv", result);
  json m = manifest_base("estimate");
  m["config"] = {{"image", a.image}, {"variant", a.variant},
                 {"model", a.model}, {"label", a.label},
                 {"nav", a.nav},     {"te_nav", a.te_nav}};
  write_json_file(a.out + "/manifest.json", m);
}

// ------------------------------------------------------------------- correct

struct CorrectArgs {
  std::string kspace, sens, phase, out;
  bool preview = false;
};

void cmd_correct(const CorrectArgs& a) {
  io::PlaneMeta meta;
  auto channels = io::read_planes(a.kspace, &meta);
  if (meta.rows != meta.cols) throw DataError("correct: expected square planes");
  if (meta.domain != Domain::kspace) {
    throw DataError("correct: input must be k-space (domain tag)");
  }

  MultiCoilData mc;
  mc.n = meta.rows;
  mc.domain = Domain::kspace;
  mc.te_ms = meta.te_ms;
  mc.tr_ms = meta.tr_ms;
  mc.channels = std::move(channels);
  if (!a.sens.empty()) {
    mc.sensitivities = io::read_planes(a.sens);
    if (mc.sensitivities.size() != mc.channels.size()) {
      throw DataError("correct: sensitivity count != channel count");
    }
  } else if (mc.channels.size() == 1) {
    mc.sensitivities.emplace_back(mc.n * mc.n, Cd{1.0, 0.0});
  } else {
    throw DataError("correct: multichannel input needs --sens");
  }

  PhaseErrorSeries phi;
  phi.phi = io::read_phase_csv(a.phase);
  phi.te_ms = meta.te_ms;

  const ComplexSlice fixed = correct(mc, phi);
  fs::create_directories(a.out);
  io::write_slice(a.out + "/corrected.cplx", fixed);
  if (a.preview) {
    double hi = 0.0;
    for (const auto& v : fixed.data) hi = std::max(hi, std::abs(v));
    if (hi == 0.0) hi = 1.0;
    io::write_pgm(a.out + "/corrected.pgm", fixed, 0.0, hi);
  }
  json m = manifest_base("correct");
  m["config"] = {{"kspace", a.kspace},
                 {"sens", a.sens},
                 {"phase", a.phase},
                 {"preview", a.preview}};
  write_json_file(a.out + "/manifest.json", m);
}

// ------------------------------------------------------------------ evaluate

struct EvaluateArgs {
  std::string ref, mask, out_report, phase_ref;
  std::vector<std::string> tests;   // name=path
  std::vector<std::string> phases;  // name=path
};

void cmd_evaluate(const EvaluateArgs& a) {
  const ComplexSlice ref = io::read_slice(a.ref);
  const Mask mask = io::read_mask(a.mask);

  std::vector<double> phase_ref;
  if (!a.phase_ref.empty()) phase_ref = io::read_phase_csv(a.phase_ref);

  auto split_pair = [](const std::string& s) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      throw DataError("evaluate: expected name=path, got " + s);
    }
    return std::pair<std::string, std::string>(s.substr(0, eq),
                                               s.substr(eq + 1));
  };

  json images = json::object();
  double sum_nrmse = 0.0, sum_ssim = 0.0, sum_gsr = 0.0;
  for (const auto& t : a.tests) {
    const auto [name, path] = split_pair(t);
    const ComplexSlice test = io::read_slice(path);
    json entry;
    entry["nrmse_pct"] = nrmse_pct(test, ref);
    entry["ssim"] = ssim(test, ref);
    entry["gsr_pct"] = gsr_pct(test, mask);
    entry["pearson_phase"] = nullptr;
    sum_nrmse += entry["nrmse_pct"].get<double>();
    sum_ssim += entry["ssim"].get<double>();
    sum_gsr += entry["gsr_pct"].get<double>();
    images[name] = entry;
  }
  for (const auto& p : a.phases) {
    const auto [name, path] = split_pair(p);
    if (!images.contains(name)) {
      throw DataError("evaluate: --phase name without a matching --test: " + name);
    }
    if (phase_ref.empty()) {
      throw DataError("evaluate: --phase needs --phase-ref");
    }
    const auto est = io::read_phase_csv(path);
    images[name]["pearson_phase"] = pearson(est, phase_ref);
  }

  json report = manifest_base("evaluate");
  report["config"] = {{"ref", a.ref},
                      {"mask", a.mask},
                      {"tests", a.tests},
                      {"phases", a.phases},
                      {"phase_ref", a.phase_ref}};
  report["images"] = images;
  const double n = static_cast<double>(std::max<std::size_t>(1, a.tests.size()));
  report["aggregate"] = {{"nrmse_pct", sum_nrmse / n},
                         {"ssim", sum_ssim / n},
                         {"gsr_pct", sum_gsr / n}};
  write_json_file(a.out_report, report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "respiration artifact simulation, phase estimation, and k-space "
      "correction"};
  app.require_subcommand(1);

  PhantomArgs phantom_args;
  auto* sc_phantom =
      app.add_subcommand("phantom", "write the test phantom and its mask");
  sc_phantom->add_option("--size", phantom_args.size, "matrix size (even, >= 16)")
      ->check(CLI::Range(static_cast<std::size_t>(16),
                         static_cast<std::size_t>(4096)));
  sc_phantom->add_option("--out", phantom_args.out, "output directory")
      ->required();

  SimulateArgs sim_args;
  auto* sc_sim = app.add_subcommand(
      "simulate", "corrupt one slice with a respiration trace");
  sc_sim->add_option("--image", sim_args.image, "clean complex image")
      ->required();
  sc_sim->add_option("--mask", sim_args.mask,
                     "foreground mask (default: Otsu auto-mask)");
  sc_sim->add_option("--trace", sim_args.trace,
                     "respiration trace (.csv or raw+sidecar)")
      ->required();
  sc_sim->add_option("--peak", sim_args.peak, "peak phase error in radians");
  sc_sim->add_option("--snr", sim_args.snr,
                     "magnitude-image SNR (omit or 0 = noise-free)");
  sc_sim->add_option("--rotation", sim_args.rotation, "rotation in degrees");
  sc_sim->add_flag("--flip", sim_args.flip, "left-right flip before rotation");
  sc_sim->add_option("--seed", sim_args.seed,
                     "RNG seed (start offset and noise)");
  sc_sim->add_option("--period-s", sim_args.period_s,
                     "trace sampling period (TR), seconds");
  sc_sim->add_option("--out", sim_args.out, "output directory")->required();

  MakeDatasetArgs mkds_args;
  auto* sc_mkds =
      app.add_subcommand("make-dataset", "generate a seeded training dataset");
  sc_mkds
      ->add_option("--config", mkds_args.config,
                   "dataset config JSON (or a previous manifest)")
      ->required();
  sc_mkds->add_option("--out", mkds_args.out, "output directory")->required();
  sc_mkds->add_option("--workers", mkds_args.workers,
                      "parallel workers (output is identical)");

  TrainArgs train_args;
  auto* sc_train =
      app.add_subcommand("train", "train a stage of the estimator");
  sc_train
      ->add_option("--dataset", train_args.dataset,
                   "make-dataset output directory")
      ->required();
  sc_train->add_option("--stage", train_args.stage, "1 or 2")
      ->check(CLI::Range(1, 2));
  sc_train->add_option("--config", train_args.config, "training config JSON");
  sc_train->add_option("--out-model", train_args.out_model,
                       "output model base path")
      ->required();
  sc_train->add_option("--base-model", train_args.base_model,
                       "existing model to extend");
  sc_train->add_option("--workers", train_args.workers,
                       "parallel workers (results are identical)");

  EstimateArgs est_args;
  auto* sc_est = app.add_subcommand("estimate",
                                    "estimate the per-PE-line phase errors");
  sc_est->add_option("--image", est_args.image, "combined complex image")
      ->required();
  sc_est->add_option("--variant", est_args.variant,
                     "oracle | navigator | cumulative-baseline | neural");
  sc_est->add_option("--model", est_args.model,
                     "model base path (trainable variants)");
  sc_est->add_option("--label", est_args.label,
                     "true phase CSV (oracle variant)");
  sc_est->add_option("--nav", est_args.nav,
                     "navigator planes file (navigator variant)");
  sc_est->add_option("--te-nav", est_args.te_nav, "navigator TE override, ms");
  sc_est->add_option("--out", est_args.out, "output directory")->required();

  CorrectArgs corr_args;
  auto* sc_corr = app.add_subcommand(
      "correct", "conjugate-phase correct multichannel k-space");
  sc_corr->add_option("--kspace", corr_args.kspace, "multichannel k-space file")
      ->required();
  sc_corr->add_option("--sens", corr_args.sens,
                      "coil sensitivities (required for >1 channel)");
  sc_corr->add_option("--phase", corr_args.phase, "phase series CSV")
      ->required();
  sc_corr->add_flag("--preview", corr_args.preview,
                    "also write an 8-bit magnitude preview");
  sc_corr->add_option("--out", corr_args.out, "output directory")->required();

  EvaluateArgs eval_args;
  auto* sc_eval = app.add_subcommand(
      "evaluate", "image-quality metrics against a reference");
  sc_eval->add_option("--ref", eval_args.ref, "reference complex image")
      ->required();
  sc_eval->add_option("--mask", eval_args.mask, "foreground mask")->required();
  sc_eval->add_option("--test", eval_args.tests, "name=path (repeatable)")
      ->required();
  sc_eval->add_option("--phase", eval_args.phases,
                      "name=path phase CSV (repeatable)");
  sc_eval->add_option("--phase-ref", eval_args.phase_ref,
                      "reference phase CSV");
  sc_eval->add_option("--out-report", eval_args.out_report, "report JSON path")
      ->required();

  try {
    app.parse(argc, argv);
    if (sc_phantom->parsed()) cmd_phantom(phantom_args);
    if (sc_sim->parsed()) cmd_simulate(sim_args);
    if (sc_mkds->parsed()) cmd_make_dataset(mkds_args);
    if (sc_train->parsed()) cmd_train(train_args);
    if (sc_est->parsed()) cmd_estimate(est_args);
    if (sc_corr->parsed()) cmd_correct(corr_args);
    if (sc_eval->parsed()) cmd_evaluate(eval_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 4;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
