// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_TYPES_HPP_
#define MCSS_TYPES_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcss {

using cdouble = std::complex<double>;

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kInputTooShort,
  kInvalidPair,
  kInvalidAngle,
  kEmptyGrid,
  kNoPairs,
  kDegenerateMask,
  kSingularPsd,
  kDegenerateTrace,
  kLengthMismatch,
  kZeroReference,
  kSilentSource,
  kMissingInput,
  kUnsupportedFormat,
  kUnsupportedDtype,
  kCorruptFile,
  kBadMagic,
  kDimsMismatch,
  kTruncated,
  kIoError,
  kInternal,
};

// Coarse classes used for C-API status codes and CLI exit codes.
enum class ErrorCategory {
  kArgument,  // inputs do not fit together / out of range
  kData,      // files unreadable, corrupt, wrong format
  kNumeric,   // mid-computation numerical failure
  kInternal,
};

const char* ErrorCodeName(ErrorCode code) noexcept;
ErrorCategory CategoryOf(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return CategoryOf(code_); }

 private:
  ErrorCode code_;
};

// Global framing and physics constants shared by every TF-domain operation.
struct SignalConfig {
  uint32_t sample_rate_hz = 16000;
  uint32_t window_len_samples = 512;  // 32 ms at 16 kHz
  uint32_t hop_len_samples = 256;     // 16 ms frame rate
  double sound_speed_m_per_s = 343.0;

  uint32_t n_freq_bins() const { return window_len_samples / 2 + 1; }

  // Throws kInvalidArgument unless window_len is even and positive,
  // 0 < hop <= window_len, sample_rate > 0 and sound speed > 0.
  void Validate() const;
};

// Single-channel time-domain signal. Amplitude is nominally [-1, 1] but not
// clamped; only finiteness is enforced on validated paths.
class Waveform {
 public:
  Waveform() = default;
  Waveform(std::vector<double> samples, uint32_t sample_rate_hz);

  uint64_t length() const { return samples_.size(); }
  uint32_t sample_rate_hz() const { return sample_rate_hz_; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }

  // Throws kInvalidArgument on any NaN/Inf sample.
  void RequireFinite() const;

 private:
  std::vector<double> samples_;
  uint32_t sample_rate_hz_ = 0;
};

// I equal-length channels, channel-major storage: data[c * length + n].
class MultiChannelWaveform {
 public:
  MultiChannelWaveform() = default;
  MultiChannelWaveform(uint32_t channels, uint64_t length,
                       uint32_t sample_rate_hz);
  static MultiChannelWaveform FromChannels(std::vector<Waveform> channels);

  uint32_t channels() const { return channels_; }
  uint64_t length() const { return length_; }
  uint32_t sample_rate_hz() const { return sample_rate_hz_; }

  double& at(uint32_t channel, uint64_t n) {
    return data_[channel * length_ + n];
  }
  double at(uint32_t channel, uint64_t n) const {
    return data_[channel * length_ + n];
  }
  std::span<const double> channel_span(uint32_t channel) const {
    return {data_.data() + channel * length_, length_};
  }
  std::span<double> channel_span(uint32_t channel) {
    return {data_.data() + channel * length_, length_};
  }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Waveform ExtractChannel(uint32_t channel) const;
  void RequireFinite() const;

 private:
  uint32_t channels_ = 0;
  uint64_t length_ = 0;
  uint32_t sample_rate_hz_ = 0;
  std::vector<double> data_;
};

// Complex TF grid, dims (I, T, F). Index convention is fixed repo-wide:
// channel-major, then time, then frequency; see FlatIndex/UnflatIndex.
class ComplexSpectrogram {
 public:
  ComplexSpectrogram() = default;
  ComplexSpectrogram(uint32_t channels, uint32_t frames, uint32_t bins);

  uint32_t channels() const { return channels_; }
  uint32_t frames() const { return frames_; }
  uint32_t bins() const { return bins_; }

  static uint64_t FlatIndex(uint32_t c, uint32_t t, uint32_t f, uint32_t frames,
                            uint32_t bins) {
    return (static_cast<uint64_t>(c) * frames + t) * bins + f;
  }
  // Inverse of FlatIndex; round-trips exactly for any in-range index.
  static std::array<uint32_t, 3> UnflatIndex(uint64_t flat, uint32_t frames,
                                             uint32_t bins) {
    const uint32_t f = static_cast<uint32_t>(flat % bins);
    const uint64_t ct = flat / bins;
    return {static_cast<uint32_t>(ct / frames),
            static_cast<uint32_t>(ct % frames), f};
  }

  cdouble& at(uint32_t c, uint32_t t, uint32_t f) {
    return data_[FlatIndex(c, t, f, frames_, bins_)];
  }
  cdouble at(uint32_t c, uint32_t t, uint32_t f) const {
    return data_[FlatIndex(c, t, f, frames_, bins_)];
  }
  const std::vector<cdouble>& data() const { return data_; }
  std::vector<cdouble>& data() { return data_; }

  ComplexSpectrogram SelectChannel(uint32_t channel) const;
  void RequireFinite() const;

 private:
  uint32_t channels_ = 0;
  uint32_t frames_ = 0;
  uint32_t bins_ = 0;
  std::vector<cdouble> data_;
};

// Complex mask grid, dims (T, F). Real-valued masks are stored with zero
// imaginary parts so that one type feeds both masking and PSD estimation.
class TimeFrequencyMask {
 public:
  TimeFrequencyMask() = default;
  TimeFrequencyMask(uint32_t frames, uint32_t bins);

  uint32_t frames() const { return frames_; }
  uint32_t bins() const { return bins_; }

  cdouble& at(uint32_t t, uint32_t f) {
    return data_[static_cast<uint64_t>(t) * bins_ + f];
  }
  cdouble at(uint32_t t, uint32_t f) const {
    return data_[static_cast<uint64_t>(t) * bins_ + f];
  }
  const std::vector<cdouble>& data() const { return data_; }
  std::vector<cdouble>& data() { return data_; }

  void RequireFinite() const;

 private:
  uint32_t frames_ = 0;
  uint32_t bins_ = 0;
  std::vector<cdouble> data_;
};

// Microphone positions in meters plus the pair list used by spatial features.
// Indices are 0-based here; file/CLI surfaces use 1-based numbering.
struct ArrayGeometry {
  std::vector<std::array<double, 3>> mic_positions_m;
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  uint32_t reference_channel = 0;

  uint32_t mic_count() const {
    return static_cast<uint32_t>(mic_positions_m.size());
  }

  // Throws kInvalidArgument / kInvalidPair on out-of-range indices.
  void Validate() const;

  // 15 mics, 4 cm spacing along the x axis, reference channel 0, and the
  // default 9-pair list sampling different inter-mic spacings.
  static ArrayGeometry DefaultUla15();
};

// Loads/saves the documented JSON geometry schema (positions in meters,
// 1-based pairs and reference channel).
ArrayGeometry LoadGeometry(const std::string& path);
void SaveGeometry(const std::string& path, const ArrayGeometry& geometry);

enum class WeightsKind { kTimeInvariant, kTimeVarying };

// Beamforming filters: (I, F) per-frequency vectors when time-invariant,
// (I, T, F) per-TF filters when time-varying. Storage order matches
// ComplexSpectrogram (channel-major, then time, then frequency).
class BeamformerWeights {
 public:
  BeamformerWeights() = default;
  // Time-invariant (frames == 1 internally).
  BeamformerWeights(uint32_t channels, uint32_t bins);
  // Time-varying.
  BeamformerWeights(uint32_t channels, uint32_t frames, uint32_t bins);

  WeightsKind kind() const { return kind_; }
  uint32_t channels() const { return channels_; }
  uint32_t frames() const { return frames_; }
  uint32_t bins() const { return bins_; }

  // Time-invariant accessor.
  cdouble& at(uint32_t c, uint32_t f) {
    return data_[static_cast<uint64_t>(c) * bins_ + f];
  }
  cdouble at(uint32_t c, uint32_t f) const {
    return data_[static_cast<uint64_t>(c) * bins_ + f];
  }
  // Time-varying accessor.
  cdouble& at(uint32_t c, uint32_t t, uint32_t f) {
    return data_[(static_cast<uint64_t>(c) * frames_ + t) * bins_ + f];
  }
  cdouble at(uint32_t c, uint32_t t, uint32_t f) const {
    return data_[(static_cast<uint64_t>(c) * frames_ + t) * bins_ + f];
  }
  const std::vector<cdouble>& data() const { return data_; }
  std::vector<cdouble>& data() { return data_; }

  void RequireFinite() const;

 private:
  WeightsKind kind_ = WeightsKind::kTimeInvariant;
  uint32_t channels_ = 0;
  uint32_t frames_ = 1;
  uint32_t bins_ = 0;
  std::vector<cdouble> data_;
};

// Succeeds iff the spectrogram channel count equals the geometry mic count.
void ValidateDims(const ComplexSpectrogram& spec, const ArrayGeometry& geometry);

}  // namespace mcss

#endif  // MCSS_TYPES_HPP_
