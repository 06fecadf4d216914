// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/types.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mcss {

const char* ErrorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInputTooShort: return "InputTooShort";
    case ErrorCode::kInvalidPair: return "InvalidPair";
    case ErrorCode::kInvalidAngle: return "InvalidAngle";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kNoPairs: return "NoPairs";
    case ErrorCode::kDegenerateMask: return "DegenerateMask";
    case ErrorCode::kSingularPsd: return "SingularPsd";
    case ErrorCode::kDegenerateTrace: return "DegenerateTrace";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroReference: return "ZeroReference";
    case ErrorCode::kSilentSource: return "SilentSource";
    case ErrorCode::kMissingInput: return "MissingInput";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kUnsupportedDtype: return "UnsupportedDtype";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kDimsMismatch: return "DimsMismatch";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

ErrorCategory CategoryOf(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInputTooShort:
    case ErrorCode::kInvalidPair:
    case ErrorCode::kInvalidAngle:
    case ErrorCode::kEmptyGrid:
    case ErrorCode::kNoPairs:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kMissingInput:
      return ErrorCategory::kArgument;
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kUnsupportedDtype:
    case ErrorCode::kCorruptFile:
    case ErrorCode::kBadMagic:
    case ErrorCode::kDimsMismatch:
    case ErrorCode::kTruncated:
    case ErrorCode::kIoError:
    case ErrorCode::kZeroReference:
    case ErrorCode::kSilentSource:
      return ErrorCategory::kData;
    case ErrorCode::kDegenerateMask:
    case ErrorCode::kSingularPsd:
    case ErrorCode::kDegenerateTrace:
      return ErrorCategory::kNumeric;
    case ErrorCode::kInternal:
      return ErrorCategory::kInternal;
  }
  return ErrorCategory::kInternal;
}

namespace {

void CheckFiniteSpan(const double* data, uint64_t n, const char* what) {
  for (uint64_t i = 0; i < n; ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " contains a non-finite value at index " +
                      std::to_string(i));
    }
  }
}

void CheckFiniteSpan(const cdouble* data, uint64_t n, const char* what) {
  for (uint64_t i = 0; i < n; ++i) {
    if (!std::isfinite(data[i].real()) || !std::isfinite(data[i].imag())) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " contains a non-finite value at index " +
                      std::to_string(i));
    }
  }
}

}  // namespace

void SignalConfig::Validate() const {
  if (sample_rate_hz == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_rate_hz must be positive");
  }
  if (window_len_samples == 0 || window_len_samples % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "window_len_samples must be positive and even, got " +
                    std::to_string(window_len_samples));
  }
  if (hop_len_samples == 0 || hop_len_samples > window_len_samples) {
    throw Error(ErrorCode::kInvalidArgument,
                "hop_len_samples must satisfy 0 < hop <= window_len");
  }
  if (!(sound_speed_m_per_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sound speed must be positive");
  }
}

Waveform::Waveform(std::vector<double> samples, uint32_t sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (sample_rate_hz_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
}

void Waveform::RequireFinite() const {
  CheckFiniteSpan(samples_.data(), samples_.size(), "waveform");
}

MultiChannelWaveform::MultiChannelWaveform(uint32_t channels, uint64_t length,
                                           uint32_t sample_rate_hz)
    : channels_(channels), length_(length), sample_rate_hz_(sample_rate_hz) {
  if (channels_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "channel count must be >= 1");
  }
  if (sample_rate_hz_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
  data_.assign(static_cast<size_t>(channels_) * length_, 0.0);
}

MultiChannelWaveform MultiChannelWaveform::FromChannels(
    std::vector<Waveform> channels) {
  if (channels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "channel list is empty");
  }
  const uint64_t len = channels.front().length();
  const uint32_t rate = channels.front().sample_rate_hz();
  for (size_t c = 1; c < channels.size(); ++c) {
    if (channels[c].length() != len) {
      throw Error(ErrorCode::kLengthMismatch,
                  "channel " + std::to_string(c) + " has length " +
                      std::to_string(channels[c].length()) + ", expected " +
                      std::to_string(len));
    }
    if (channels[c].sample_rate_hz() != rate) {
      throw Error(ErrorCode::kInvalidArgument,
                  "channel sample rates differ");
    }
  }
  MultiChannelWaveform out(static_cast<uint32_t>(channels.size()), len, rate);
  for (size_t c = 0; c < channels.size(); ++c) {
    std::copy(channels[c].samples().begin(), channels[c].samples().end(),
              out.channel_span(static_cast<uint32_t>(c)).begin());
  }
  return out;
}

Waveform MultiChannelWaveform::ExtractChannel(uint32_t channel) const {
  if (channel >= channels_) {
    throw Error(ErrorCode::kInvalidArgument,
                "channel " + std::to_string(channel) + " out of range [0, " +
                    std::to_string(channels_) + ")");
  }
  auto span = channel_span(channel);
  return Waveform(std::vector<double>(span.begin(), span.end()),
                  sample_rate_hz_);
}

void MultiChannelWaveform::RequireFinite() const {
  CheckFiniteSpan(data_.data(), data_.size(), "multi-channel waveform");
}

ComplexSpectrogram::ComplexSpectrogram(uint32_t channels, uint32_t frames,
                                       uint32_t bins)
    : channels_(channels), frames_(frames), bins_(bins) {
  if (channels_ == 0 || frames_ == 0 || bins_ == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "spectrogram dims must all be >= 1, got (" +
                    std::to_string(channels) + ", " + std::to_string(frames) +
                    ", " + std::to_string(bins) + ")");
  }
  data_.assign(static_cast<size_t>(channels_) * frames_ * bins_, cdouble{});
}

ComplexSpectrogram ComplexSpectrogram::SelectChannel(uint32_t channel) const {
  if (channel >= channels_) {
    throw Error(ErrorCode::kInvalidArgument,
                "channel " + std::to_string(channel) + " out of range [0, " +
                    std::to_string(channels_) + ")");
  }
  ComplexSpectrogram out(1, frames_, bins_);
  const uint64_t plane = static_cast<uint64_t>(frames_) * bins_;
  std::copy(data_.begin() + channel * plane,
            data_.begin() + (channel + 1) * plane, out.data_.begin());
  return out;
}

void ComplexSpectrogram::RequireFinite() const {
  CheckFiniteSpan(data_.data(), data_.size(), "spectrogram");
}

TimeFrequencyMask::TimeFrequencyMask(uint32_t frames, uint32_t bins)
    : frames_(frames), bins_(bins) {
  if (frames_ == 0 || bins_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask dims must be >= 1");
  }
  data_.assign(static_cast<size_t>(frames_) * bins_, cdouble{});
}

void TimeFrequencyMask::RequireFinite() const {
  CheckFiniteSpan(data_.data(), data_.size(), "mask");
}

void ArrayGeometry::Validate() const {
  if (mic_positions_m.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "geometry has no microphones");
  }
  for (const auto& p : mic_positions_m) {
    CheckFiniteSpan(p.data(), 3, "mic position");
  }
  const uint32_t n = mic_count();
  for (const auto& [i, j] : pairs) {
    if (i >= n || j >= n) {
      throw Error(ErrorCode::kInvalidPair,
                  "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") out of range for " + std::to_string(n) + " mics");
    }
  }
  if (reference_channel >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "reference channel " + std::to_string(reference_channel) +
                    " out of range for " + std::to_string(n) + " mics");
  }
}

ArrayGeometry ArrayGeometry::DefaultUla15() {
  ArrayGeometry g;
  g.mic_positions_m.resize(15);
  for (int i = 0; i < 15; ++i) {
    g.mic_positions_m[i] = {0.04 * i, 0.0, 0.0};
  }
  // 1-based (1,15) (2,14) (3,13) (1,7) (12,4) (11,5) (12,8) (7,10) (8,9),
  // chosen to sample different inter-mic spacings.
  g.pairs = {{0, 14}, {1, 13}, {2, 12}, {0, 6}, {11, 3},
             {10, 4}, {11, 7}, {6, 9},  {7, 8}};
  g.reference_channel = 0;
  return g;
}

namespace {

nlohmann::json LoadJsonFile(const std::string& path) {
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
  return j;
}

}  // namespace

ArrayGeometry LoadGeometry(const std::string& path) {
  const nlohmann::json j = LoadJsonFile(path);
  ArrayGeometry g;
  try {
    for (const auto& pos : j.at("mic_positions_m")) {
      if (!pos.is_array() || pos.size() != 3) {
        throw Error(ErrorCode::kCorruptFile,
                    path + ": mic positions must be [x, y, z] triples");
      }
      g.mic_positions_m.push_back({pos[0].get<double>(), pos[1].get<double>(),
                                   pos[2].get<double>()});
    }
    if (j.contains("pairs")) {
      for (const auto& pr : j.at("pairs")) {
        const int64_t a = pr.at(0).get<int64_t>();
        const int64_t b = pr.at(1).get<int64_t>();
        if (a < 1 || b < 1) {
          throw Error(ErrorCode::kInvalidPair,
                      path + ": pair indices are 1-based and must be >= 1");
        }
        g.pairs.emplace_back(static_cast<uint32_t>(a - 1),
                             static_cast<uint32_t>(b - 1));
      }
    }
    const int64_t ref = j.value("reference_channel", int64_t{1});
    if (ref < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  path + ": reference_channel is 1-based and must be >= 1");
    }
    g.reference_channel = static_cast<uint32_t>(ref - 1);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, path + ": " + e.what());
  }
  g.Validate();
  return g;
}

void SaveGeometry(const std::string& path, const ArrayGeometry& geometry) {
  geometry.Validate();
  nlohmann::json j;
  for (const auto& p : geometry.mic_positions_m) {
    j["mic_positions_m"].push_back({p[0], p[1], p[2]});
  }
  j["pairs"] = nlohmann::json::array();
  for (const auto& [a, b] : geometry.pairs) {
    j["pairs"].push_back({a + 1, b + 1});
  }
  j["reference_channel"] = geometry.reference_channel + 1;
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
  out << j.dump(2) << "\n";
}

BeamformerWeights::BeamformerWeights(uint32_t channels, uint32_t bins)
    : kind_(WeightsKind::kTimeInvariant),
      channels_(channels),
      frames_(1),
      bins_(bins) {
  if (channels_ == 0 || bins_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "weights dims must be >= 1");
  }
  data_.assign(static_cast<size_t>(channels_) * bins_, cdouble{});
}

BeamformerWeights::BeamformerWeights(uint32_t channels, uint32_t frames,
                                     uint32_t bins)
    : kind_(WeightsKind::kTimeVarying),
      channels_(channels),
      frames_(frames),
      bins_(bins) {
  if (channels_ == 0 || frames_ == 0 || bins_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "weights dims must be >= 1");
  }
  data_.assign(static_cast<size_t>(channels_) * frames_ * bins_, cdouble{});
}

void BeamformerWeights::RequireFinite() const {
  CheckFiniteSpan(data_.data(), data_.size(), "beamformer weights");
}

void ValidateDims(const ComplexSpectrogram& spec,
                  const ArrayGeometry& geometry) {
  if (spec.channels() != geometry.mic_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "spectrogram has " + std::to_string(spec.channels()) +
                    " channels, geometry has " +
                    std::to_string(geometry.mic_count()) + " mics");
  }
}

}  // namespace mcss
