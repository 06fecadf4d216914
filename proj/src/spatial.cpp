// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mcss {

namespace {

constexpr double kSilentBinMagnitude = 1e-12;

void ValidateAngle(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) {
    throw Error(ErrorCode::kInvalidAngle,
                "theta must be in [0, 180] degrees, got " +
                    std::to_string(theta_deg));
  }
}

std::array<double, 3> LookDirection(double theta_deg) {
  const double rad = theta_deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad), 0.0};
}

double Dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void ValidatePair(const ArrayGeometry& geometry,
                  std::pair<uint32_t, uint32_t> pair) {
  const uint32_t n = geometry.mic_count();
  if (pair.first >= n || pair.second >= n) {
    throw Error(ErrorCode::kInvalidPair,
                "pair (" + std::to_string(pair.first) + ", " +
                    std::to_string(pair.second) + ") out of range for " +
                    std::to_string(n) + " mics");
  }
}

// Propagation delay of channel i relative to the reference for a plane wave
// from theta; a mic farther from the source receives later (positive delay).
double RelativeDelaySeconds(const ArrayGeometry& g, uint32_t channel,
                            const std::array<double, 3>& u, double c) {
  const auto& pi = g.mic_positions_m[channel];
  const auto& pr = g.mic_positions_m[g.reference_channel];
  return (Dot(pr, u) - Dot(pi, u)) / c;
}

}  // namespace

std::vector<double> PhaseDelay(const ArrayGeometry& geometry,
                               std::pair<uint32_t, uint32_t> pair,
                               double theta_deg, const SignalConfig& config) {
  config.Validate();
  ValidatePair(geometry, pair);
  ValidateAngle(theta_deg);
  const auto u = LookDirection(theta_deg);
  const auto& pi = geometry.mic_positions_m[pair.first];
  const auto& pj = geometry.mic_positions_m[pair.second];
  const std::array<double, 3> diff = {pi[0] - pj[0], pi[1] - pj[1],
                                      pi[2] - pj[2]};
  // Signed along-look projection; reduces to d_ij*cos(theta) on an x-axis
  // array with d_ij the signed x offset.
  const double tau = Dot(diff, u) / config.sound_speed_m_per_s;
  const uint32_t bins = config.n_freq_bins();
  const double base = 2.0 * std::numbers::pi * config.sample_rate_hz * tau /
                      config.window_len_samples;
  std::vector<double> pd(bins);
  for (uint32_t f = 0; f < bins; ++f) pd[f] = base * f;
  return pd;
}

FeatureMap ComputeIpd(const ComplexSpectrogram& spec,
                      std::pair<uint32_t, uint32_t> pair) {
  if (pair.first >= spec.channels() || pair.second >= spec.channels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pair (" + std::to_string(pair.first) + ", " +
                    std::to_string(pair.second) + ") out of range for " +
                    std::to_string(spec.channels()) + " channels");
  }
  FeatureMap map;
  map.frames = spec.frames();
  map.bins = spec.bins();
  map.data.assign(static_cast<size_t>(map.frames) * map.bins, 0.0);
  map.label = "ipd_" + std::to_string(pair.first + 1) + "_" +
              std::to_string(pair.second + 1);
  for (uint32_t t = 0; t < map.frames; ++t) {
    for (uint32_t f = 0; f < map.bins; ++f) {
      const cdouble xi = spec.at(pair.first, t, f);
      const cdouble xj = spec.at(pair.second, t, f);
      if (std::abs(xi) < kSilentBinMagnitude ||
          std::abs(xj) < kSilentBinMagnitude) {
        continue;  // degenerate quotient, defined as 0
      }
      map.at(t, f) = std::arg(xi * std::conj(xj));
    }
  }
  return map;
}

FeatureMap ComputeAngleFeature(const ComplexSpectrogram& spec,
                               const ArrayGeometry& geometry, double theta_deg,
                               const SignalConfig& config) {
  if (geometry.pairs.empty()) {
    throw Error(ErrorCode::kNoPairs, "geometry pair list is empty");
  }
  if (spec.bins() != config.n_freq_bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "spectrogram bins do not match config");
  }
  FeatureMap af;
  af.frames = spec.frames();
  af.bins = spec.bins();
  af.data.assign(static_cast<size_t>(af.frames) * af.bins, 0.0);
  af.label = "af_" + std::to_string(theta_deg);
  for (const auto& pair : geometry.pairs) {
    const auto pd = PhaseDelay(geometry, pair, theta_deg, config);
    const FeatureMap ipd = ComputeIpd(spec, pair);
    for (uint32_t t = 0; t < af.frames; ++t) {
      for (uint32_t f = 0; f < af.bins; ++f) {
        af.at(t, f) += std::cos(pd[f] - ipd.at(t, f));
      }
    }
  }
  return af;
}

SteeringMatrix ComputeSteeringVector(const ArrayGeometry& geometry,
                                     double theta_deg,
                                     const SignalConfig& config) {
  config.Validate();
  geometry.Validate();
  ValidateAngle(theta_deg);
  const auto u = LookDirection(theta_deg);
  SteeringMatrix sv;
  sv.channels = geometry.mic_count();
  sv.bins = config.n_freq_bins();
  sv.data.assign(static_cast<size_t>(sv.channels) * sv.bins, cdouble{});
  for (uint32_t i = 0; i < sv.channels; ++i) {
    const double tau =
        RelativeDelaySeconds(geometry, i, u, config.sound_speed_m_per_s);
    const double base = -2.0 * std::numbers::pi * config.sample_rate_hz * tau /
                        config.window_len_samples;
    for (uint32_t f = 0; f < sv.bins; ++f) {
      sv.data[static_cast<uint64_t>(i) * sv.bins + f] =
          tau == 0.0 ? cdouble{1.0, 0.0} : std::polar(1.0, base * f);
    }
  }
  return sv;
}

double EstimateDoa(const ComplexSpectrogram& spec,
                   const ArrayGeometry& geometry,
                   std::span<const double> grid_deg,
                   const SignalConfig& config) {
  if (grid_deg.empty()) {
    throw Error(ErrorCode::kEmptyGrid, "DOA grid is empty");
  }
  if (geometry.pairs.empty()) {
    throw Error(ErrorCode::kNoPairs, "geometry pair list is empty");
  }
  ValidateDims(spec, geometry);
  for (double a : grid_deg) ValidateAngle(a);

  double energy = 0.0;
  for (const cdouble& v : spec.data()) energy += std::norm(v);
  if (energy == 0.0) {
    return *std::min_element(grid_deg.begin(), grid_deg.end());
  }

  // mean_t cos(pd - IPD) = cos(pd) mean_t cos(IPD) + sin(pd) mean_t sin(IPD):
  // fold the frame axis once, then sweep angles over per-bin sums only.
  const uint32_t frames = spec.frames();
  const uint32_t bins = spec.bins();
  const size_t pair_count = geometry.pairs.size();
  std::vector<double> sum_cos(pair_count * bins, 0.0);
  std::vector<double> sum_sin(pair_count * bins, 0.0);
  for (size_t m = 0; m < pair_count; ++m) {
    const FeatureMap ipd = ComputeIpd(spec, geometry.pairs[m]);
    for (uint32_t t = 0; t < frames; ++t) {
      for (uint32_t f = 0; f < bins; ++f) {
        sum_cos[m * bins + f] += std::cos(ipd.at(t, f));
        sum_sin[m * bins + f] += std::sin(ipd.at(t, f));
      }
    }
  }

  double best_af = -std::numeric_limits<double>::infinity();
  double best_angle = grid_deg.front();
  for (double angle : grid_deg) {
    double total = 0.0;
    for (size_t m = 0; m < pair_count; ++m) {
      const auto pd = PhaseDelay(geometry, geometry.pairs[m], angle, config);
      for (uint32_t f = 0; f < bins; ++f) {
        total += std::cos(pd[f]) * sum_cos[m * bins + f] +
                 std::sin(pd[f]) * sum_sin[m * bins + f];
      }
    }
    const double mean_af = total / (static_cast<double>(frames) * bins);
    if (mean_af > best_af || (mean_af == best_af && angle < best_angle)) {
      best_af = mean_af;
      best_angle = angle;
    }
  }
  return best_angle;
}

std::vector<double> DefaultDoaGrid() {
  std::vector<double> grid(181);
  for (int a = 0; a <= 180; ++a) grid[a] = a;
  return grid;
}

}  // namespace mcss
