// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// mcss CLI: batch front door over the C API (mcss.h only, no C++ core).
// Subcommands: simulate, separate, evaluate, features.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcss.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliFailure {
  int exit_code;
  std::string message;
};

[[noreturn]] void FailUsage(const std::string& msg) {
  throw CliFailure{2, msg};
}

int ExitCodeFor(mcss_status status) {
  switch (status) {
    case MCSS_OK: return 0;
    case MCSS_ERR_INVALID_ARGUMENT: return 3;
    case MCSS_ERR_IO: return 3;
    case MCSS_ERR_NUMERIC: return 4;
    case MCSS_ERR_INTERNAL: return 1;
  }
  return 1;
}

void Check(mcss_status status, const std::string& context) {
  if (status != MCSS_OK) {
    throw CliFailure{ExitCodeFor(status),
                     context + ": " + mcss_last_error()};
  }
}

template <typename T, void (*FreeFn)(T*)>
class Handle {
 public:
  Handle() = default;
  explicit Handle(T* p) : ptr_(p) {}
  ~Handle() { FreeFn(ptr_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : ptr_(other.release()) {}
  Handle& operator=(Handle&& other) noexcept {
    if (this != &other) {
      FreeFn(ptr_);
      ptr_ = other.release();
    }
    return *this;
  }

  T** out() {
    FreeFn(ptr_);
    ptr_ = nullptr;
    return &ptr_;
  }
  T* get() const { return ptr_; }
  operator T*() const { return ptr_; }
  T* release() {
    T* p = ptr_;
    ptr_ = nullptr;
    return p;
  }

 private:
  T* ptr_ = nullptr;
};

using ConfigH = Handle<mcss_config, mcss_config_free>;
using GeometryH = Handle<mcss_geometry, mcss_geometry_free>;
using WaveH = Handle<mcss_wave, mcss_wave_free>;
using SpecH = Handle<mcss_spec, mcss_spec_free>;
using TensorH = Handle<mcss_tensor, mcss_tensor_free>;
using ScenarioH = Handle<mcss_scenario, mcss_scenario_free>;
using BundleH = Handle<mcss_bundle, mcss_bundle_free>;

uint64_t Fnv1a64File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CliFailure{3, "cannot open " + path + " for hashing"};
  }
  uint64_t h = 0xcbf29ce484222325ull;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::string HashString(uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, h);
  return buf;
}

// One manifest per run: command echo, input hashes, config snapshot,
// per-utterance metric records.
struct Manifest {
  json root;

  Manifest(const std::string& subcommand, const std::vector<std::string>& args) {
    root["tool"] = "mcss";
    root["version"] = mcss_version();
    root["command"] = json::array({subcommand});
    for (const auto& a : args) root["command"].push_back(a);
    root["inputs"] = json::object();
    root["config"] = json::object();
    root["records"] = json::array();
  }

  void AddInput(const std::string& path) {
    root["inputs"][path] = HashString(Fnv1a64File(path));
  }

  void Write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
      throw CliFailure{3, "cannot write manifest " + path};
    }
    out << root.dump(2) << "\n";
  }
};

std::string MetricLine(double si_snr_db, double snr_db, uint64_t length) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "{\"si_snr_db\":%.6f,\"snr_db\":%.6f,\"length_samples\":%" PRIu64
                "}",
                si_snr_db, snr_db, length);
  return buf;
}

ConfigH MakeConfig(uint32_t sample_rate, uint32_t window, uint32_t hop) {
  ConfigH config;
  Check(mcss_config_create(sample_rate, window, hop, 343.0, config.out()),
        "config");
  return config;
}

GeometryH LoadGeometryOrDefault(const std::string& path, Manifest* manifest) {
  GeometryH geometry;
  if (path.empty()) {
    Check(mcss_geometry_create_default(geometry.out()), "geometry");
  } else {
    Check(mcss_geometry_load(path.c_str(), geometry.out()), path);
    if (manifest) manifest->AddInput(path);
  }
  return geometry;
}

WaveH ReadWave(const std::string& path, Manifest* manifest) {
  WaveH wave;
  Check(mcss_wave_read_wav(path.c_str(), wave.out()), path);
  if (manifest) manifest->AddInput(path);
  return wave;
}

// A bundle directory is recognized by its mixture.wav.
bool IsBundleDir(const std::string& input) {
  return fs::is_directory(input) && fs::exists(fs::path(input) / "mixture.wav");
}

TensorH LoadMaskBtf(const std::string& path, Manifest* manifest) {
  TensorH t;
  Check(mcss_tensor_read_btf(path.c_str(), t.out()), path);
  if (manifest) manifest->AddInput(path);
  return t;
}

// ------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::vector<std::string> scenarios;
  std::string out_dir;
  unsigned jobs = 1;
};

void RunSimulateOne(const std::string& scenario_path, const std::string& out_dir,
                    json* record) {
  ScenarioH scenario;
  Check(mcss_scenario_load(scenario_path.c_str(), scenario.out()),
        scenario_path);
  BundleH bundle;
  Check(mcss_simulate(scenario, bundle.out()), scenario_path);
  Check(mcss_bundle_write(bundle, out_dir.c_str()), out_dir);
  *record = json::parse(mcss_bundle_meta_json(bundle));
  (*record)["scenario_file"] = scenario_path;
  (*record)["out_dir"] = out_dir;
}

int RunSimulate(const SimulateArgs& args,
                const std::vector<std::string>& raw_args) {
  Manifest manifest("simulate", raw_args);
  manifest.root["config"]["jobs"] = args.jobs;
  for (const auto& s : args.scenarios) manifest.AddInput(s);

  const bool multi = args.scenarios.size() > 1;
  std::vector<std::string> out_dirs(args.scenarios.size());
  for (size_t i = 0; i < args.scenarios.size(); ++i) {
    out_dirs[i] = multi ? (fs::path(args.out_dir) /
                           fs::path(args.scenarios[i]).stem().string())
                              .string()
                        : args.out_dir;
  }

  std::vector<json> records(args.scenarios.size());
  std::vector<std::optional<CliFailure>> failures(args.scenarios.size());
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(args.jobs,
                                      static_cast<unsigned>(args.scenarios.size())));
  if (jobs == 1) {
    for (size_t i = 0; i < args.scenarios.size(); ++i) {
      RunSimulateOne(args.scenarios[i], out_dirs[i], &records[i]);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < args.scenarios.size();
             i = next.fetch_add(1)) {
          try {
            RunSimulateOne(args.scenarios[i], out_dirs[i], &records[i]);
          } catch (const CliFailure& f) {
            failures[i] = f;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures) {
      if (f) throw *f;
    }
  }

  for (auto& r : records) manifest.root["records"].push_back(r);
  const std::string manifest_path =
      (fs::path(args.out_dir) / "manifest.json").string();
  fs::create_directories(args.out_dir);
  manifest.Write(manifest_path);
  for (const auto& r : records) {
    std::printf("wrote bundle %s (achieved_sir_db=%.6f)\n",
                r["out_dir"].get<std::string>().c_str(),
                r["achieved_sir_db"].get<double>());
  }
  return 0;
}

// ------------------------------------------------------------------
// separate

struct SeparateArgs {
  std::string input;
  std::string out_wav;
  std::string method;
  std::string mask_source = "oracle";
  std::string mask_kind = "cm";
  std::string weights_path;
  std::string geometry_path;
  std::string manifest_path;
  double clip = 10.0;
  double theta = -1.0;
  bool have_theta = false;
  unsigned reference = 1;  // 1-based on the CLI
  uint32_t window = 512;
  uint32_t hop = 256;
};

struct OracleSpecs {
  SpecH target_ref;
  SpecH interferer_ref;
};

// Splits "btf:a.btf,b.btf" -> {"a.btf", "b.btf"}.
std::vector<std::string> ParseBtfSource(const std::string& source) {
  std::vector<std::string> paths;
  std::string rest = source.substr(4);
  size_t pos = 0;
  while ((pos = rest.find(',')) != std::string::npos) {
    paths.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 1);
  }
  if (!rest.empty()) paths.push_back(rest);
  return paths;
}

int RunSeparate(const SeparateArgs& args,
                const std::vector<std::string>& raw_args) {
  Manifest manifest("separate", raw_args);
  manifest.root["config"] = {
      {"method", args.method},     {"mask_source", args.mask_source},
      {"mask_kind", args.mask_kind}, {"clip", args.clip},
      {"reference", args.reference}, {"window", args.window},
      {"hop", args.hop},
  };

  const bool bundle = IsBundleDir(args.input);
  const std::string mixture_path =
      bundle ? (fs::path(args.input) / "mixture.wav").string() : args.input;
  const bool oracle = args.mask_source == "oracle";
  const bool needs_masks = args.method == "tf-mask" || args.method == "mvdr";
  if (needs_masks && oracle && !bundle) {
    FailUsage("--mask-source oracle requires a bundle directory input "
              "(with target.wav" +
              std::string(args.method == "mvdr" ? " and interferer.wav" : "") +
              ")");
  }

  WaveH mixture = ReadWave(mixture_path, &manifest);
  const uint32_t sample_rate = mcss_wave_sample_rate(mixture);
  const uint64_t mix_len = mcss_wave_length(mixture);
  ConfigH config = MakeConfig(sample_rate, args.window, args.hop);
  if (args.reference < 1 || args.reference > mcss_wave_channels(mixture)) {
    FailUsage("--reference must be a 1-based channel index");
  }
  const uint32_t ref = args.reference - 1;

  SpecH mix_spec;
  Check(mcss_stft(mixture, config, mix_spec.out()), "stft(mixture)");
  SpecH mix_ref;
  Check(mcss_spec_select_channel(mix_spec, ref, mix_ref.out()), "reference");

  auto stft_bundle_channel = [&](const char* name) -> SpecH {
    const std::string path = (fs::path(args.input) / name).string();
    WaveH w = ReadWave(path, &manifest);
    SpecH full;
    Check(mcss_stft(w, config, full.out()), std::string("stft(") + name + ")");
    SpecH one;
    Check(mcss_spec_select_channel(full, ref, one.out()), name);
    return one;
  };

  auto oracle_mask = [&](const char* source_wav) -> TensorH {
    SpecH src_ref = stft_bundle_channel(source_wav);
    TensorH mask;
    if (args.mask_kind == "cm") {
      Check(mcss_ideal_complex_mask(src_ref, mix_ref, args.clip, mask.out()),
            "ideal complex mask");
    } else if (args.mask_kind == "irm") {
      // IRM needs the competing source, always derived from the bundle.
      SpecH other = stft_bundle_channel(
          std::string(source_wav) == "target.wav" ? "interferer.wav"
                                                  : "target.wav");
      Check(mcss_ideal_ratio_mask(src_ref, other, mask.out()),
            "ideal ratio mask");
    } else {
      FailUsage("--mask-kind must be cm or irm");
    }
    return mask;
  };

  SpecH separated;
  if (args.method == "delay-sum") {
    if (!args.have_theta) {
      FailUsage("delay-sum requires --theta (ground-truth DOA in degrees)");
    }
    GeometryH geometry = LoadGeometryOrDefault(args.geometry_path, &manifest);
    Check(mcss_delay_and_sum(mix_spec, geometry, args.theta, config,
                             separated.out()),
          "delay&sum");
  } else if (args.method == "tf-mask") {
    TensorH mask;
    if (oracle) {
      mask = oracle_mask("target.wav");
    } else if (args.mask_source.rfind("btf:", 0) == 0) {
      const auto paths = ParseBtfSource(args.mask_source);
      if (paths.size() != 1) FailUsage("tf-mask expects --mask-source btf:PATH");
      mask = LoadMaskBtf(paths[0], &manifest);
    } else {
      FailUsage("--mask-source must be oracle or btf:PATH");
    }
    Check(mcss_apply_mask(mask, mix_ref, separated.out()), "apply mask");
  } else if (args.method == "filter-sum") {
    if (args.weights_path.empty()) {
      FailUsage("filter-sum requires --weights PATH (BTF, (I,T,F) or (I,F))");
    }
    TensorH weights = LoadMaskBtf(args.weights_path, &manifest);
    Check(mcss_filter_and_sum(mix_spec, weights, separated.out()),
          "filter&sum");
  } else if (args.method == "mvdr") {
    TensorH mask_s, mask_n;
    if (oracle) {
      mask_s = oracle_mask("target.wav");
      mask_n = oracle_mask("interferer.wav");
    } else if (args.mask_source.rfind("btf:", 0) == 0) {
      const auto paths = ParseBtfSource(args.mask_source);
      if (paths.size() != 2) {
        FailUsage("mvdr expects --mask-source btf:TARGET.btf,INTERFERENCE.btf");
      }
      mask_s = LoadMaskBtf(paths[0], &manifest);
      mask_n = LoadMaskBtf(paths[1], &manifest);
    } else {
      FailUsage("--mask-source must be oracle or btf:PATH,PATH");
    }
    Check(mcss_mvdr_pipeline(mix_spec, mask_s, mask_n, ref, separated.out()),
          "mvdr");
  } else {
    FailUsage("--method must be one of delay-sum, tf-mask, filter-sum, mvdr");
  }

  WaveH out_wave;
  Check(mcss_istft(separated, config, static_cast<int64_t>(mix_len),
                   out_wave.out()),
        "istft");
  Check(mcss_wave_write_wav(args.out_wav.c_str(), out_wave, MCSS_WAV_FLOAT32),
        args.out_wav);

  // Metric record whenever the bundle carries the reference target.
  if (bundle && fs::exists(fs::path(args.input) / "target.wav")) {
    WaveH target = ReadWave((fs::path(args.input) / "target.wav").string(),
                            &manifest);
    WaveH target_ref;
    Check(mcss_wave_select_channel(target, ref, target_ref.out()),
          "target reference channel");
    double si = 0.0, snr = 0.0;
    Check(mcss_si_snr(out_wave, target_ref, &si), "si-snr");
    Check(mcss_snr(out_wave, target_ref, &snr), "snr");
    const std::string line = MetricLine(si, snr, mix_len);
    std::printf("%s\n", line.c_str());
    manifest.root["records"].push_back(json::parse(line));
  } else {
    std::printf("wrote %s\n", args.out_wav.c_str());
  }

  const std::string manifest_path = args.manifest_path.empty()
                                        ? args.out_wav + ".manifest.json"
                                        : args.manifest_path;
  manifest.Write(manifest_path);
  return 0;
}

// ------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string estimate;
  std::string reference;
  std::string manifest_path;
};

int RunEvaluate(const EvaluateArgs& args,
                const std::vector<std::string>& raw_args) {
  Manifest manifest("evaluate", raw_args);
  WaveH est = ReadWave(args.estimate, &manifest);
  WaveH ref = ReadWave(args.reference, &manifest);
  if (mcss_wave_sample_rate(est) != mcss_wave_sample_rate(ref)) {
    throw CliFailure{3, "sample rates differ between estimate and reference"};
  }
  WaveH est0, ref0;
  Check(mcss_wave_select_channel(est, 0, est0.out()), args.estimate);
  Check(mcss_wave_select_channel(ref, 0, ref0.out()), args.reference);
  double si = 0.0, snr = 0.0;
  Check(mcss_si_snr(est0, ref0, &si), "si-snr");
  Check(mcss_snr(est0, ref0, &snr), "snr");
  const std::string line = MetricLine(si, snr, mcss_wave_length(est0));
  std::printf("%s\n", line.c_str());
  if (!args.manifest_path.empty()) {
    manifest.root["records"].push_back(json::parse(line));
    manifest.Write(args.manifest_path);
  }
  return 0;
}

// ------------------------------------------------------------------
// features

struct FeaturesArgs {
  std::string input;
  std::string out_dir;
  std::string geometry_path;
  std::string pairs;  // "1-15,2-14" (1-based) overrides the geometry list
  double theta = -1.0;
  bool have_theta = false;
  uint32_t window = 512;
  uint32_t hop = 256;
};

std::vector<std::pair<uint32_t, uint32_t>> ParsePairs(const std::string& text) {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  std::string rest = text;
  while (!rest.empty()) {
    const size_t comma = rest.find(',');
    const std::string item = rest.substr(0, comma);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    const size_t dash = item.find('-');
    if (dash == std::string::npos) FailUsage("--pairs expects i-j,i-j (1-based)");
    try {
      const long a = std::stol(item.substr(0, dash));
      const long b = std::stol(item.substr(dash + 1));
      if (a < 1 || b < 1) FailUsage("--pairs indices are 1-based");
      pairs.emplace_back(static_cast<uint32_t>(a - 1),
                         static_cast<uint32_t>(b - 1));
    } catch (const std::logic_error&) {
      FailUsage("--pairs expects i-j,i-j (1-based)");
    }
  }
  return pairs;
}

int RunFeatures(const FeaturesArgs& args,
                const std::vector<std::string>& raw_args) {
  Manifest manifest("features", raw_args);
  manifest.root["config"] = {{"window", args.window}, {"hop", args.hop}};

  const std::string wav_path =
      IsBundleDir(args.input) ? (fs::path(args.input) / "mixture.wav").string()
                              : args.input;
  WaveH wave = ReadWave(wav_path, &manifest);
  if (mcss_wave_channels(wave) < 2) {
    throw CliFailure{3, "NoPairs: features need a multi-channel input"};
  }
  ConfigH config = MakeConfig(mcss_wave_sample_rate(wave), args.window, args.hop);
  GeometryH geometry = LoadGeometryOrDefault(args.geometry_path, &manifest);

  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  if (!args.pairs.empty()) {
    pairs = ParsePairs(args.pairs);
  } else {
    const uint32_t n = mcss_geometry_pair_count(geometry);
    for (uint32_t p = 0; p < n; ++p) {
      uint32_t i = 0, j = 0;
      Check(mcss_geometry_pair(geometry, p, &i, &j), "geometry pair");
      pairs.emplace_back(i, j);
    }
  }
  if (pairs.empty()) {
    throw CliFailure{3, "NoPairs: geometry has no pair list"};
  }
  if (!args.have_theta) {
    FailUsage("features requires --theta for the angle feature map");
  }

  SpecH spec;
  Check(mcss_stft(wave, config, spec.out()), "stft");
  fs::create_directories(args.out_dir);

  for (const auto& [i, j] : pairs) {
    TensorH ipd;
    Check(mcss_compute_ipd(spec, i, j, ipd.out()), "ipd");
    const std::string name =
        "ipd_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + ".btf";
    const std::string path = (fs::path(args.out_dir) / name).string();
    Check(mcss_tensor_write_btf(path.c_str(), ipd), path);
    manifest.root["records"].push_back({{"feature", name}});
  }

  // The AF map uses the same pair list; a --pairs override rebuilds the
  // default ULA geometry with the requested pairs (a geometry file already
  // carries its own pair list).
  GeometryH af_geometry;
  if (!args.pairs.empty()) {
    if (!args.geometry_path.empty()) {
      throw CliFailure{2,
                       "--pairs cannot override a geometry file; edit the "
                       "file's pair list instead"};
    }
    std::vector<uint32_t> flat_pairs;
    for (const auto& [i, j] : pairs) {
      flat_pairs.push_back(i);
      flat_pairs.push_back(j);
    }
    std::vector<double> positions;
    for (uint32_t m = 0; m < 15; ++m) {
      positions.push_back(0.04 * m);
      positions.push_back(0.0);
      positions.push_back(0.0);
    }
    Check(mcss_geometry_create(positions.data(), 15, flat_pairs.data(),
                               static_cast<uint32_t>(pairs.size()), 0,
                               af_geometry.out()),
          "geometry with --pairs");
  }

  TensorH af;
  Check(mcss_compute_angle_feature(
            spec, af_geometry.get() ? af_geometry.get() : geometry.get(),
            args.theta, config, af.out()),
        "angle feature");
  char af_name[64];
  std::snprintf(af_name, sizeof(af_name), "af_%g.btf", args.theta);
  const std::string af_path = (fs::path(args.out_dir) / af_name).string();
  Check(mcss_tensor_write_btf(af_path.c_str(), af), af_path);
  manifest.root["records"].push_back({{"feature", af_name}});

  manifest.Write((fs::path(args.out_dir) / "manifest.json").string());
  std::printf("wrote %zu IPD maps + 1 AF map to %s\n", pairs.size(),
              args.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcss: multi-channel overlapped speech separation toolkit"};
  app.set_version_flag("--version", mcss_version());
  app.require_subcommand(1);

  std::vector<std::string> raw_args;
  for (int i = 1; i < argc; ++i) raw_args.emplace_back(argv[i]);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Render a deterministic two-speaker scene bundle");
  sim_cmd->add_option("scenario", sim.scenarios, "Scenario JSON file(s)")
      ->required()
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("out_dir", sim.out_dir,
                      "Bundle directory (root when several scenarios)")
      ->required();
  sim_cmd->add_option("--jobs", sim.jobs, "Parallel workers over scenarios")
      ->check(CLI::Range(1u, 64u));

  SeparateArgs sep;
  auto* sep_cmd = app.add_subcommand(
      "separate", "Separate the target speaker from a mixture");
  sep_cmd->add_option("input", sep.input, "Bundle directory or WAV file")
      ->required();
  sep_cmd->add_option("out_wav", sep.out_wav, "Separated mono WAV")->required();
  sep_cmd
      ->add_option("--method", sep.method,
                   "delay-sum | tf-mask | filter-sum | mvdr")
      ->required();
  sep_cmd->add_option("--mask-source", sep.mask_source,
                      "oracle | btf:PATH (tf-mask) | btf:S,N (mvdr)");
  sep_cmd->add_option("--mask-kind", sep.mask_kind, "cm | irm (oracle masks)");
  sep_cmd->add_option("--clip", sep.clip, "Complex mask magnitude clip");
  sep_cmd->add_option("--weights", sep.weights_path,
                      "BTF beamformer weights for filter-sum");
  sep_cmd->add_option("--geometry", sep.geometry_path, "Geometry JSON");
  sep_cmd->add_option("--theta", sep.theta, "Target DOA in degrees")
      ->each([&sep](const std::string&) { sep.have_theta = true; });
  sep_cmd->add_option("--reference", sep.reference,
                      "Reference channel (1-based)");
  sep_cmd->add_option("--window", sep.window, "STFT window length");
  sep_cmd->add_option("--hop", sep.hop, "STFT hop length");
  sep_cmd->add_option("--manifest", sep.manifest_path,
                      "Manifest path (default OUT.manifest.json)");

  EvaluateArgs eval;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Si-SNR / SNR of estimate vs reference");
  eval_cmd->add_option("estimate", eval.estimate, "Estimate WAV")->required();
  eval_cmd->add_option("reference", eval.reference, "Reference WAV")
      ->required();
  eval_cmd->add_option("--manifest", eval.manifest_path,
                       "Also write a manifest JSON here");

  FeaturesArgs feat;
  auto* feat_cmd = app.add_subcommand(
      "features", "Dump IPD and angle-feature maps as BTF tensors");
  feat_cmd->add_option("input", feat.input, "Bundle directory or WAV file")
      ->required();
  feat_cmd->add_option("out_dir", feat.out_dir, "Output directory")->required();
  feat_cmd->add_option("--geometry", feat.geometry_path, "Geometry JSON");
  feat_cmd->add_option("--pairs", feat.pairs,
                       "Override pair list, 1-based: 1-15,2-14,...");
  feat_cmd->add_option("--theta", feat.theta, "Target DOA for the AF map")
      ->each([&feat](const std::string&) { feat.have_theta = true; });
  feat_cmd->add_option("--window", feat.window, "STFT window length");
  feat_cmd->add_option("--hop", feat.hop, "STFT hop length");

  try {
    app.parse(argc, argv);
    if (sim_cmd->parsed()) return RunSimulate(sim, raw_args);
    if (sep_cmd->parsed()) return RunSeparate(sep, raw_args);
    if (eval_cmd->parsed()) return RunEvaluate(eval, raw_args);
    if (feat_cmd->parsed()) return RunFeatures(feat, raw_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.exit_code;
  }
  return 0;
}
