// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "fft.hpp"
#include "json.hpp"
#include "mcss/tensorio.hpp"

namespace mcss {

namespace {

std::array<double, 3> LookDirection(double theta_deg) {
  const double rad = theta_deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad), 0.0};
}

double Dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void ValidateAngle(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) {
    throw Error(ErrorCode::kInvalidAngle,
                "theta must be in [0, 180] degrees, got " +
                    std::to_string(theta_deg));
  }
}

uint64_t NextPow2(uint64_t v) {
  uint64_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Standard normal via a fixed Box-Muller transform; std::normal_distribution
// has an implementation-defined sequence and would break the portable
// seed -> bundle determinism contract.
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : rng_(seed) {}

  double Next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = NextUnitOpen();
    const double u2 = NextUnitOpen();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double NextUnitOpen() {
    // (0, 1]: never feeds log() a zero.
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

MultiChannelWaveform GenerateWhiteNoise(uint32_t channels, uint64_t length,
                                        uint32_t sample_rate_hz, double sigma,
                                        uint64_t seed) {
  MultiChannelWaveform noise(channels, length, sample_rate_hz);
  std::mt19937_64 master(seed);
  for (uint32_t c = 0; c < channels; ++c) {
    GaussianStream g(master());
    auto span = noise.channel_span(c);
    for (uint64_t i = 0; i < length; ++i) span[i] = sigma * g.Next();
  }
  return noise;
}

double ReferenceEnergy(const MultiChannelWaveform& mc, uint32_t reference) {
  double e = 0.0;
  for (double v : mc.channel_span(reference)) e += v * v;
  return e;
}

// [first, last] envelope of nonzero samples; nullopt when silent.
std::optional<std::pair<uint64_t, uint64_t>> NonzeroSupport(
    std::span<const double> x) {
  uint64_t first = 0, last = 0;
  bool found = false;
  for (uint64_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      if (!found) first = i;
      last = i;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  return std::make_pair(first, last);
}

}  // namespace

void Scenario::Validate() const {
  if (target_wav_path.empty() || interferer_wav_path.empty()) {
    throw Error(ErrorCode::kMissingInput,
                "scenario needs target_wav_path and interferer_wav_path");
  }
  ValidateAngle(theta_target_deg);
  ValidateAngle(theta_interferer_deg);
  if (!(overlap_ratio >= 0.0 && overlap_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "overlap_ratio must be in [0, 1], got " +
                    std::to_string(overlap_ratio));
  }
  if (!std::isfinite(sir_db)) {
    throw Error(ErrorCode::kInvalidArgument, "sir_db must be finite");
  }
  if (noise_snr_db && !std::isfinite(*noise_snr_db)) {
    throw Error(ErrorCode::kInvalidArgument, "noise_snr_db must be finite");
  }
  if (sample_rate_hz == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_rate_hz must be positive");
  }
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, path + ": " + e.what());
  }

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) -> std::string {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  Scenario sc;
  try {
    sc.target_wav_path = resolve(j.at("target_wav_path").get<std::string>());
    sc.interferer_wav_path =
        resolve(j.at("interferer_wav_path").get<std::string>());
    sc.theta_target_deg = j.at("theta_target_deg").get<double>();
    sc.theta_interferer_deg = j.at("theta_interferer_deg").get<double>();
    sc.sir_db = j.value("sir_db", 1.5);
    sc.overlap_ratio = j.value("overlap_ratio", 0.8);
    if (j.contains("noise_snr_db") && !j.at("noise_snr_db").is_null()) {
      sc.noise_snr_db = j.at("noise_snr_db").get<double>();
    }
    sc.seed = j.value("seed", uint64_t{0});
    sc.geometry_path = resolve(j.value("geometry_path", std::string{}));
    sc.sample_rate_hz = j.value("sample_rate_hz", uint32_t{16000});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, path + ": " + e.what());
  }
  sc.Validate();
  return sc;
}

MultiChannelWaveform RenderPlaneWave(const Waveform& source,
                                     const ArrayGeometry& geometry,
                                     double theta_deg,
                                     const SignalConfig& config) {
  config.Validate();
  geometry.Validate();
  ValidateAngle(theta_deg);
  source.RequireFinite();
  const uint64_t len = source.length();
  if (len == 0) {
    throw Error(ErrorCode::kInvalidArgument, "source is empty");
  }

  const auto u = LookDirection(theta_deg);
  const uint32_t channels = geometry.mic_count();
  const auto& ref_pos = geometry.mic_positions_m[geometry.reference_channel];
  std::vector<double> delay_samples(channels);
  double max_abs_delay = 0.0;
  for (uint32_t i = 0; i < channels; ++i) {
    const auto& p = geometry.mic_positions_m[i];
    const double tau =
        (Dot(ref_pos, u) - Dot(p, u)) / config.sound_speed_m_per_s;
    delay_samples[i] = tau * config.sample_rate_hz;
    max_abs_delay = std::max(max_abs_delay, std::abs(delay_samples[i]));
  }

  MultiChannelWaveform out(channels, len, config.sample_rate_hz);

  // Generous padding keeps the circular tails of the fractional-delay
  // interpolation out of the signal region (wrap error ~ 1/(pi * pad)).
  const uint64_t pad =
      std::max<uint64_t>(static_cast<uint64_t>(std::ceil(max_abs_delay)) + 64,
                         std::max<uint64_t>(len, 4096));
  const uint64_t fft_len = NextPow2(len + pad);
  RealFft fft(fft_len);
  std::vector<double> padded(fft_len, 0.0);
  std::copy(source.samples().begin(), source.samples().end(), padded.begin());
  std::vector<cdouble> spectrum(fft.bins());
  fft.Forward(padded.data(), spectrum.data());

  std::vector<cdouble> shifted(fft.bins());
  std::vector<double> channel_time(fft_len);
  for (uint32_t i = 0; i < channels; ++i) {
    const double d = delay_samples[i];
    auto dst = out.channel_span(i);
    if (d == 0.0) {
      // Reference channel (and broadside peers) must equal the source
      // bit-exactly, not through the transform round trip.
      std::copy(source.samples().begin(), source.samples().end(), dst.begin());
      continue;
    }
    const double base = -2.0 * std::numbers::pi * d / fft_len;
    for (size_t k = 0; k + 1 < fft.bins(); ++k) {
      shifted[k] = spectrum[k] * std::polar(1.0, base * k);
    }
    // Nyquist bin keeps only the real part of the ramp so the inverse
    // transform stays real.
    shifted[fft.bins() - 1] =
        spectrum[fft.bins() - 1] * std::cos(std::numbers::pi * d);
    fft.Inverse(shifted.data(), channel_time.data());
    std::copy(channel_time.begin(), channel_time.begin() + len, dst.begin());
  }
  return out;
}

MixResult MixAtSir(const MultiChannelWaveform& target_img,
                   const MultiChannelWaveform& interferer_img, double sir_db,
                   uint32_t reference,
                   std::optional<std::pair<uint64_t, uint64_t>> region) {
  if (target_img.length() != interferer_img.length()) {
    throw Error(ErrorCode::kLengthMismatch,
                "image lengths differ: " + std::to_string(target_img.length()) +
                    " vs " + std::to_string(interferer_img.length()));
  }
  if (target_img.channels() != interferer_img.channels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image channel counts differ");
  }
  if (reference >= target_img.channels()) {
    throw Error(ErrorCode::kInvalidArgument, "reference channel out of range");
  }

  uint64_t first = 0, count = target_img.length();
  if (region) {
    first = region->first;
    count = region->second;
    if (first + count > target_img.length()) {
      throw Error(ErrorCode::kInvalidArgument, "overlap region out of range");
    }
  } else {
    // Default: intersection of the two reference channels' nonzero-support
    // envelopes; falls back to the full range when disjoint or silent.
    const auto st = NonzeroSupport(target_img.channel_span(reference));
    const auto si = NonzeroSupport(interferer_img.channel_span(reference));
    if (st && si) {
      const uint64_t lo = std::max(st->first, si->first);
      const uint64_t hi = std::min(st->second, si->second);
      if (lo <= hi) {
        first = lo;
        count = hi - lo + 1;
      }
    }
  }

  double target_energy = 0.0, interferer_energy = 0.0;
  {
    auto t = target_img.channel_span(reference);
    auto i = interferer_img.channel_span(reference);
    for (uint64_t m = first; m < first + count; ++m) {
      target_energy += t[m] * t[m];
      interferer_energy += i[m] * i[m];
    }
  }
  if (target_energy <= 0.0 || interferer_energy <= 0.0) {
    throw Error(ErrorCode::kSilentSource,
                "zero reference-channel energy over the overlapped region");
  }

  const double gain =
      std::sqrt(target_energy / (interferer_energy * std::pow(10.0, sir_db / 10.0)));

  MixResult result;
  result.gain = gain;
  result.interferer_scaled = interferer_img;
  for (double& v : result.interferer_scaled.data()) v *= gain;
  result.mixture = target_img;
  for (size_t m = 0; m < result.mixture.data().size(); ++m) {
    result.mixture.data()[m] += result.interferer_scaled.data()[m];
  }
  result.achieved_sir_db =
      10.0 * std::log10(target_energy / (gain * gain * interferer_energy));
  return result;
}

MultiChannelWaveform AddSensorNoise(const MultiChannelWaveform& mc,
                                    double snr_db, uint64_t seed) {
  if (!std::isfinite(snr_db)) {
    throw Error(ErrorCode::kInvalidArgument, "snr_db must be finite");
  }
  const uint32_t reference = 0;
  const double ref_energy = ReferenceEnergy(mc, reference);
  const double sigma =
      std::sqrt(ref_energy / (static_cast<double>(mc.length()) *
                              std::pow(10.0, snr_db / 10.0)));
  const MultiChannelWaveform noise = GenerateWhiteNoise(
      mc.channels(), mc.length(), mc.sample_rate_hz(), sigma, seed);
  MultiChannelWaveform out = mc;
  for (size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] += noise.data()[i];
  }
  return out;
}

SceneBundle SimulateScenario(const Scenario& scenario) {
  scenario.Validate();
  const ArrayGeometry geometry = scenario.geometry_path.empty()
                                     ? ArrayGeometry::DefaultUla15()
                                     : LoadGeometry(scenario.geometry_path);
  geometry.Validate();

  SignalConfig config;
  config.sample_rate_hz = scenario.sample_rate_hz;

  auto load_mono = [&](const std::string& path) -> Waveform {
    const MultiChannelWaveform w = ReadWav(path);
    if (w.channels() != 1) {
      throw Error(ErrorCode::kUnsupportedFormat,
                  path + ": scenario sources must be mono, got " +
                      std::to_string(w.channels()) + " channels");
    }
    if (w.sample_rate_hz() != scenario.sample_rate_hz) {
      throw Error(ErrorCode::kInvalidArgument,
                  path + ": sample rate " + std::to_string(w.sample_rate_hz()) +
                      " does not match scenario rate " +
                      std::to_string(scenario.sample_rate_hz));
    }
    return w.ExtractChannel(0);
  };

  const Waveform target = load_mono(scenario.target_wav_path);
  const Waveform interferer = load_mono(scenario.interferer_wav_path);
  if (target.length() == 0 || interferer.length() == 0) {
    throw Error(ErrorCode::kSilentSource, "scenario source is empty");
  }

  // Overlap placement: the interferer starts at target_len - overlap so the
  // requested overlap is realized exactly; with equal-length sources the
  // overlapped span is centered in the mixture.
  const uint64_t lt = target.length();
  const uint64_t li = interferer.length();
  const uint64_t overlap = static_cast<uint64_t>(
      std::llround(scenario.overlap_ratio * static_cast<double>(std::min(lt, li))));
  const uint64_t onset = lt - overlap;
  const uint64_t total = std::max(lt, onset + li);

  Waveform placed_target(std::vector<double>(total, 0.0),
                         scenario.sample_rate_hz);
  std::copy(target.samples().begin(), target.samples().end(),
            placed_target.samples().begin());
  Waveform placed_interferer(std::vector<double>(total, 0.0),
                             scenario.sample_rate_hz);
  std::copy(interferer.samples().begin(), interferer.samples().end(),
            placed_interferer.samples().begin() + onset);

  const MultiChannelWaveform target_image = RenderPlaneWave(
      placed_target, geometry, scenario.theta_target_deg, config);
  const MultiChannelWaveform interferer_image = RenderPlaneWave(
      placed_interferer, geometry, scenario.theta_interferer_deg, config);

  const uint64_t region_len = overlap > 0 ? overlap : total;
  const uint64_t region_first = overlap > 0 ? onset : 0;
  MixResult mixed =
      MixAtSir(target_image, interferer_image, scenario.sir_db,
               geometry.reference_channel,
               std::make_pair(region_first, region_len));

  SceneBundle bundle;
  bundle.scenario = scenario;
  bundle.target_image = target_image;
  bundle.interferer_image = std::move(mixed.interferer_scaled);
  bundle.achieved_sir_db = mixed.achieved_sir_db;
  bundle.interferer_gain = mixed.gain;
  bundle.overlap_onset = region_first;
  bundle.overlap_length = region_len;

  if (scenario.noise_snr_db) {
    const double ref_energy =
        ReferenceEnergy(mixed.mixture, geometry.reference_channel);
    bundle.noise_sigma =
        std::sqrt(ref_energy / (static_cast<double>(total) *
                                std::pow(10.0, *scenario.noise_snr_db / 10.0)));
    bundle.noise = GenerateWhiteNoise(target_image.channels(), total,
                                      scenario.sample_rate_hz,
                                      bundle.noise_sigma, scenario.seed);
  } else {
    bundle.noise = MultiChannelWaveform(target_image.channels(), total,
                                        scenario.sample_rate_hz);
  }

  bundle.mixture = std::move(mixed.mixture);
  for (size_t i = 0; i < bundle.mixture.data().size(); ++i) {
    bundle.mixture.data()[i] += bundle.noise.data()[i];
  }
  return bundle;
}

std::string SceneBundle::MetaJson() const {
  nlohmann::json j;
  j["scenario"] = {
      {"target_wav_path", scenario.target_wav_path},
      {"interferer_wav_path", scenario.interferer_wav_path},
      {"theta_target_deg", scenario.theta_target_deg},
      {"theta_interferer_deg", scenario.theta_interferer_deg},
      {"sir_db", scenario.sir_db},
      {"overlap_ratio", scenario.overlap_ratio},
      {"seed", scenario.seed},
      {"geometry_path", scenario.geometry_path},
      {"sample_rate_hz", scenario.sample_rate_hz},
  };
  if (scenario.noise_snr_db) {
    j["scenario"]["noise_snr_db"] = *scenario.noise_snr_db;
  }
  j["achieved_sir_db"] = achieved_sir_db;
  j["interferer_gain"] = interferer_gain;
  j["noise_sigma"] = noise_sigma;
  j["overlap_onset"] = overlap_onset;
  j["overlap_length"] = overlap_length;
  j["channels"] = mixture.channels();
  j["length_samples"] = mixture.length();
  return j.dump(2);
}

void WriteBundle(const SceneBundle& bundle, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError, "cannot create " + dir + ": " + ec.message());
  }
  const std::filesystem::path base(dir);
  WriteWav((base / "mixture.wav").string(), bundle.mixture);
  WriteWav((base / "target.wav").string(), bundle.target_image);
  WriteWav((base / "interferer.wav").string(), bundle.interferer_image);
  std::ofstream meta(base / "meta");
  if (!meta) {
    throw Error(ErrorCode::kIoError, "cannot write meta in " + dir);
  }
  meta << bundle.MetaJson() << "\n";
}

}  // namespace mcss
