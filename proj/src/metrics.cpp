// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mcss {

namespace {

constexpr double kEps = 1e-8;
constexpr double kClampDb = 80.0;

double ClampDb(double v) { return std::clamp(v, -kClampDb, kClampDb); }

void RequireEqualLengths(size_t a, size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                "signal lengths differ: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace

double SiSnrDb(std::span<const double> estimate,
               std::span<const double> reference) {
  RequireEqualLengths(estimate.size(), reference.size());
  if (estimate.empty()) {
    throw Error(ErrorCode::kZeroReference, "empty reference");
  }
  const size_t n = estimate.size();
  double mean_est = 0.0, mean_ref = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_est += estimate[i];
    mean_ref += reference[i];
  }
  mean_est /= static_cast<double>(n);
  mean_ref /= static_cast<double>(n);

  double dot = 0.0, ref_energy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double e = estimate[i] - mean_est;
    const double r = reference[i] - mean_ref;
    dot += e * r;
    ref_energy += r * r;
  }
  if (ref_energy < 1e-30) {
    throw Error(ErrorCode::kZeroReference,
                "reference has no energy about its mean");
  }
  const double alpha = dot / ref_energy;
  double target_energy = 0.0, error_energy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = reference[i] - mean_ref;
    const double s = alpha * r;
    const double err = (estimate[i] - mean_est) - s;
    target_energy += s * s;
    error_energy += err * err;
  }
  return ClampDb(10.0 *
                 std::log10((target_energy + kEps) / (error_energy + kEps)));
}

double SnrDb(std::span<const double> estimate,
             std::span<const double> reference) {
  RequireEqualLengths(estimate.size(), reference.size());
  double ref_energy = 0.0, error_energy = 0.0;
  for (size_t i = 0; i < estimate.size(); ++i) {
    ref_energy += reference[i] * reference[i];
    const double err = estimate[i] - reference[i];
    error_energy += err * err;
  }
  return ClampDb(10.0 * std::log10((ref_energy + kEps) / (error_energy + kEps)));
}

MetricReport Evaluate(const Waveform& estimate, const Waveform& reference) {
  MetricReport report;
  report.si_snr_db = SiSnrDb(estimate.samples(), reference.samples());
  report.snr_db = SnrDb(estimate.samples(), reference.samples());
  report.length_samples = estimate.length();
  return report;
}

}  // namespace mcss
