// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace mcss {

namespace {

// Verifies sum_t w^2[m - t*hop] is constant over the fully covered interior.
void CheckSquaredCola(const std::vector<double>& window, uint32_t hop) {
  const size_t n = window.size();
  // Enough shifts that [n, 2n) sees full overlap coverage.
  std::vector<double> acc(3 * n, 0.0);
  for (size_t start = 0; start + n <= acc.size(); start += hop) {
    for (size_t m = 0; m < n; ++m) acc[start + m] += window[m] * window[m];
  }
  double lo = acc[n], hi = acc[n];
  for (size_t m = n; m < 2 * n; ++m) {
    lo = std::min(lo, acc[m]);
    hi = std::max(hi, acc[m]);
  }
  if (!(lo > 0.0) || (hi - lo) > 1e-6 * hi) {
    throw Error(ErrorCode::kInvalidArgument,
                "window does not satisfy the squared constant-overlap-add "
                "property at hop " +
                    std::to_string(hop));
  }
}

}  // namespace

StftPlan StftPlan::Create(const SignalConfig& config) {
  config.Validate();
  const uint32_t n = config.window_len_samples;
  std::vector<double> window(n);
  for (uint32_t m = 0; m < n; ++m) {
    window[m] = std::sin(std::numbers::pi * m / n);  // periodic sqrt-Hann
  }
  return WithWindow(config, std::move(window));
}

StftPlan StftPlan::WithWindow(const SignalConfig& config,
                              std::vector<double> window) {
  config.Validate();
  if (window.size() != config.window_len_samples) {
    throw Error(ErrorCode::kDimensionMismatch,
                "window length " + std::to_string(window.size()) +
                    " does not match config window_len " +
                    std::to_string(config.window_len_samples));
  }
  CheckSquaredCola(window, config.hop_len_samples);
  return StftPlan{config, std::move(window)};
}

uint32_t StftFrameCount(uint64_t length, const SignalConfig& config) {
  if (length < config.window_len_samples) return 0;
  return static_cast<uint32_t>(
      1 + (length - config.window_len_samples) / config.hop_len_samples);
}

ComplexSpectrogram Stft(const MultiChannelWaveform& wave,
                        const StftPlan& plan) {
  const SignalConfig& cfg = plan.config;
  const uint32_t n = cfg.window_len_samples;
  const uint32_t hop = cfg.hop_len_samples;
  const uint64_t len = wave.length();
  if (len < n) {
    throw Error(ErrorCode::kInputTooShort,
                "input length " + std::to_string(len) +
                    " is shorter than one window of " + std::to_string(n));
  }
  const uint32_t frames = StftFrameCount(len, cfg);
  const uint32_t bins = cfg.n_freq_bins();
  ComplexSpectrogram out(wave.channels(), frames, bins);

  RealFft fft(n);
  std::vector<double> frame(n);
  std::vector<cdouble> spec(bins);
  for (uint32_t c = 0; c < wave.channels(); ++c) {
    auto samples = wave.channel_span(c);
    for (uint32_t t = 0; t < frames; ++t) {
      const uint64_t start = static_cast<uint64_t>(t) * hop;
      for (uint32_t m = 0; m < n; ++m) {
        frame[m] = samples[start + m] * plan.window[m];
      }
      fft.Forward(frame.data(), spec.data());
      for (uint32_t f = 0; f < bins; ++f) out.at(c, t, f) = spec[f];
    }
  }
  return out;
}

MultiChannelWaveform Istft(const ComplexSpectrogram& spec, const StftPlan& plan,
                           int64_t out_len) {
  const SignalConfig& cfg = plan.config;
  const uint32_t n = cfg.window_len_samples;
  const uint32_t hop = cfg.hop_len_samples;
  if (spec.bins() != cfg.n_freq_bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "spectrogram has " + std::to_string(spec.bins()) +
                    " bins, plan expects " + std::to_string(cfg.n_freq_bins()));
  }
  const uint32_t frames = spec.frames();
  const uint64_t natural_len = n + static_cast<uint64_t>(frames - 1) * hop;

  // Window-squared normalization denominator, shared by all channels.
  std::vector<double> denom(natural_len, 0.0);
  for (uint32_t t = 0; t < frames; ++t) {
    const uint64_t start = static_cast<uint64_t>(t) * hop;
    for (uint32_t m = 0; m < n; ++m) {
      denom[start + m] += plan.window[m] * plan.window[m];
    }
  }

  MultiChannelWaveform out(spec.channels(), natural_len, cfg.sample_rate_hz);
  RealFft fft(n);
  std::vector<cdouble> bins(spec.bins());
  std::vector<double> frame(n);
  for (uint32_t c = 0; c < spec.channels(); ++c) {
    auto acc = out.channel_span(c);
    for (uint32_t t = 0; t < frames; ++t) {
      for (uint32_t f = 0; f < spec.bins(); ++f) bins[f] = spec.at(c, t, f);
      fft.Inverse(bins.data(), frame.data());
      const uint64_t start = static_cast<uint64_t>(t) * hop;
      for (uint32_t m = 0; m < n; ++m) {
        acc[start + m] += plan.window[m] * frame[m];
      }
    }
    for (uint64_t m = 0; m < natural_len; ++m) {
      acc[m] = denom[m] > 1e-12 ? acc[m] / denom[m] : 0.0;
    }
  }

  if (out_len >= 0 && static_cast<uint64_t>(out_len) != natural_len) {
    MultiChannelWaveform trimmed(spec.channels(),
                                 static_cast<uint64_t>(out_len),
                                 cfg.sample_rate_hz);
    const uint64_t copy_len =
        std::min<uint64_t>(natural_len, static_cast<uint64_t>(out_len));
    for (uint32_t c = 0; c < spec.channels(); ++c) {
      auto src = out.channel_span(c);
      auto dst = trimmed.channel_span(c);
      std::copy(src.begin(), src.begin() + copy_len, dst.begin());
    }
    return trimmed;
  }
  return out;
}

}  // namespace mcss
