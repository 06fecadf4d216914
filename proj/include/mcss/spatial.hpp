// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_SPATIAL_HPP_
#define MCSS_SPATIAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcss/types.hpp"

namespace mcss {

// Real-valued per-TF feature grid, dims (T, F).
struct FeatureMap {
  uint32_t frames = 0;
  uint32_t bins = 0;
  std::vector<double> data;
  std::string label;

  double& at(uint32_t t, uint32_t f) {
    return data[static_cast<uint64_t>(t) * bins + f];
  }
  double at(uint32_t t, uint32_t f) const {
    return data[static_cast<uint64_t>(t) * bins + f];
  }
};

// Angle convention, fixed repo-wide: theta is measured from the positive
// x axis in the horizontal plane, so 90 deg is broadside to an x-axis ULA.
// Valid range [0, 180].

// Far-field phase delay between the pair's microphones for a plane wave from
// theta: pd[f] = w_f * (p_i - p_j) . u(theta) / c with w_f = 2*pi*f*fs/N.
// For an x-axis array this is 2*pi*f*fs*d_ij*cos(theta) / (2*(F-1)*c) with
// d_ij the signed x offset. Time-invariant; length F.
std::vector<double> PhaseDelay(const ArrayGeometry& geometry,
                               std::pair<uint32_t, uint32_t> pair,
                               double theta_deg, const SignalConfig& config);

// IPD[t,f] = arg(x_i / x_j), principal value in (-pi, pi]. Bins where either
// channel magnitude is below 1e-12 are defined as 0.
FeatureMap ComputeIpd(const ComplexSpectrogram& spec,
                      std::pair<uint32_t, uint32_t> pair);

// AF[t,f] = sum over pairs of <e^pd, e^IPD> with e^(.) = [cos(.), sin(.)],
// i.e. sum of cos(pd - IPD); bounded by the pair count M in magnitude.
FeatureMap ComputeAngleFeature(const ComplexSpectrogram& spec,
                               const ArrayGeometry& geometry, double theta_deg,
                               const SignalConfig& config);

// Per-bin steering phasors, dims (I, F), relative to the reference channel:
// v[i][f] = exp(-j * 2*pi*f*fs/N * tau_i), tau_i the far-field delay of
// channel i relative to the reference. Reference row is identically 1.
struct SteeringMatrix {
  uint32_t channels = 0;
  uint32_t bins = 0;
  std::vector<cdouble> data;

  cdouble at(uint32_t c, uint32_t f) const {
    return data[static_cast<uint64_t>(c) * bins + f];
  }
};

SteeringMatrix ComputeSteeringVector(const ArrayGeometry& geometry,
                                     double theta_deg,
                                     const SignalConfig& config);

// Argmax over the grid of the mean angle feature; ties break toward the
// smaller angle. An all-zero spectrogram returns the smallest grid angle
// (degenerate input, every IPD is 0 by convention).
double EstimateDoa(const ComplexSpectrogram& spec,
                   const ArrayGeometry& geometry,
                   std::span<const double> grid_deg,
                   const SignalConfig& config);

// 0..180 degrees, 1 degree steps.
std::vector<double> DefaultDoaGrid();

}  // namespace mcss

#endif  // MCSS_SPATIAL_HPP_
