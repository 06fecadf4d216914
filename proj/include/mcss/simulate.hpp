// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_SIMULATE_HPP_
#define MCSS_SIMULATE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "mcss/types.hpp"

namespace mcss {

// Deterministic far-field scene description. Paths are resolved relative to
// the scenario file's directory when loaded from disk.
struct Scenario {
  std::string target_wav_path;
  std::string interferer_wav_path;
  double theta_target_deg = 0.0;
  double theta_interferer_deg = 0.0;
  double sir_db = 1.5;
  double overlap_ratio = 0.8;
  std::optional<double> noise_snr_db;
  uint64_t seed = 0;
  std::string geometry_path;  // empty -> built-in 15-mic ULA
  uint32_t sample_rate_hz = 16000;

  void Validate() const;
};

// Loads the documented JSON scenario schema; relative wav/geometry paths are
// resolved against the scenario file location.
Scenario LoadScenario(const std::string& path);

struct SceneBundle {
  MultiChannelWaveform mixture;
  MultiChannelWaveform target_image;      // target as received, unscaled
  MultiChannelWaveform interferer_image;  // post-SIR-scaling
  MultiChannelWaveform noise;             // all-zero when no noise requested
  double achieved_sir_db = 0.0;
  double interferer_gain = 1.0;
  double noise_sigma = 0.0;
  uint64_t overlap_onset = 0;   // first sample of the overlapped region
  uint64_t overlap_length = 0;  // samples
  Scenario scenario;            // echo of the inputs

  // Scenario echo plus achieved values, serialized deterministically.
  std::string MetaJson() const;
};

// Renders the source as a plane wave from theta: each channel is the source
// delayed by its far-field geometric delay relative to the reference channel,
// realized as a frequency-domain phase ramp on the zero-padded full-length
// transform. The reference channel (and any zero-delay channel) equals the
// source exactly.
MultiChannelWaveform RenderPlaneWave(const Waveform& source,
                                     const ArrayGeometry& geometry,
                                     double theta_deg,
                                     const SignalConfig& config);

struct MixResult {
  MultiChannelWaveform mixture;
  MultiChannelWaveform interferer_scaled;
  double gain = 1.0;
  double achieved_sir_db = 0.0;
};

// Scales the interferer by g so that the reference-channel energy ratio over
// the overlapped region equals sir_db exactly, then sums sample-exactly.
// When no region is given it defaults to the intersection of the two
// reference channels' nonzero-support envelopes (full range if disjoint).
// Throws kSilentSource if either reference-channel energy is zero.
MixResult MixAtSir(const MultiChannelWaveform& target_img,
                   const MultiChannelWaveform& interferer_img, double sir_db,
                   uint32_t reference,
                   std::optional<std::pair<uint64_t, uint64_t>> region =
                       std::nullopt);  // [first, first+length)

// Adds independent white Gaussian noise per channel, scaled so that the
// reference-channel SNR equals snr_db; deterministic per seed (fixed
// Box-Muller over mt19937_64, portable across platforms).
MultiChannelWaveform AddSensorNoise(const MultiChannelWaveform& mc,
                                    double snr_db, uint64_t seed);

// render x2 (with overlap placement), SIR mixing, optional sensor noise.
// Deterministic given the seed; mixture = target_image + interferer_image +
// noise holds sample-exactly.
SceneBundle SimulateScenario(const Scenario& scenario);

// Writes mixture.wav / target.wav / interferer.wav (float32, multi-channel)
// plus the `meta` JSON file into dir (created if missing).
void WriteBundle(const SceneBundle& bundle, const std::string& dir);

}  // namespace mcss

#endif  // MCSS_SIMULATE_HPP_
