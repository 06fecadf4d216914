// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_STFT_HPP_
#define MCSS_STFT_HPP_

#include <cstdint>
#include <vector>

#include "mcss/types.hpp"

namespace mcss {

// Analysis/synthesis plan. The window must satisfy the squared
// constant-overlap-add property at the configured hop (sum of squared
// shifted windows constant within 1e-6 relative over the covered interior),
// which the default periodic sqrt-Hann window does exactly at 50% overlap.
struct StftPlan {
  SignalConfig config;
  std::vector<double> window;

  // Periodic sqrt-Hann (sine) window of config.window_len_samples.
  static StftPlan Create(const SignalConfig& config);
  // Custom window; validates length and the squared-COLA invariant.
  static StftPlan WithWindow(const SignalConfig& config,
                             std::vector<double> window);
};

// Frame count for an input of `length` samples: 1 + floor((L - win) / hop).
// No center padding; the trailing partial frame is dropped.
uint32_t StftFrameCount(uint64_t length, const SignalConfig& config);

// Forward transform, dims (I, T, F); bin f sits at f * fs / window_len Hz.
// Throws kInputTooShort when the input is shorter than one window.
ComplexSpectrogram Stft(const MultiChannelWaveform& wave, const StftPlan& plan);

// Overlap-add synthesis with squared-window normalization. For unmodified
// spectra this reconstructs the interior of the analyzed signal exactly.
// out_len < 0 keeps the natural length window + (T-1) * hop; otherwise the
// output is truncated or zero-padded to out_len.
MultiChannelWaveform Istft(const ComplexSpectrogram& spec, const StftPlan& plan,
                           int64_t out_len = -1);

}  // namespace mcss

#endif  // MCSS_STFT_HPP_
