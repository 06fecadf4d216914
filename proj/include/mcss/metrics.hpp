// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_METRICS_HPP_
#define MCSS_METRICS_HPP_

#include <cstdint>
#include <span>

#include "mcss/types.hpp"

namespace mcss {

struct MetricReport {
  double si_snr_db = 0.0;
  double snr_db = 0.0;
  uint64_t length_samples = 0;
};

// Scale-invariant SNR in dB. Both signals are zero-meaned, the estimate is
// projected onto the reference (alpha = <est,ref>/<ref,ref>), and the result
// 10*log10((|s_t|^2 + eps) / (|e|^2 + eps)) with eps = 1e-8 is clamped to
// [-80, +80]. Throws kLengthMismatch / kZeroReference.
double SiSnrDb(std::span<const double> estimate,
               std::span<const double> reference);

// Plain SNR: 10*log10((|ref|^2 + eps) / (|est - ref|^2 + eps)), clamped.
double SnrDb(std::span<const double> estimate,
             std::span<const double> reference);

MetricReport Evaluate(const Waveform& estimate, const Waveform& reference);

}  // namespace mcss

#endif  // MCSS_METRICS_HPP_
