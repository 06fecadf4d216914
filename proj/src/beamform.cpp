// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/beamform.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>

namespace mcss {

namespace {

using ComplexMatrix =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMatrix = Eigen::Map<ComplexMatrix>;
using ConstMapMatrix = Eigen::Map<const ComplexMatrix>;

constexpr double kDiagonalLoading = 1e-6;
constexpr double kMaskEnergyFloor = 1e-20;
constexpr double kTraceFloor = 1e-12;

void RequireTfMatch(const ComplexSpectrogram& spec,
                    const TimeFrequencyMask& mask) {
  if (spec.frames() != mask.frames() || spec.bins() != mask.bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask grid (" + std::to_string(mask.frames()) + ", " +
                    std::to_string(mask.bins()) +
                    ") does not match spectrogram (" +
                    std::to_string(spec.frames()) + ", " +
                    std::to_string(spec.bins()) + ")");
  }
}

}  // namespace

ComplexSpectrogram DelayAndSum(const ComplexSpectrogram& spec,
                               const SteeringMatrix& steering) {
  if (steering.channels != spec.channels() || steering.bins != spec.bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "steering matrix (" + std::to_string(steering.channels) +
                    ", " + std::to_string(steering.bins) +
                    ") does not match spectrogram (" +
                    std::to_string(spec.channels()) + ", " +
                    std::to_string(spec.bins()) + ")");
  }
  ComplexSpectrogram out(1, spec.frames(), spec.bins());
  const double scale = 1.0 / spec.channels();
  for (uint32_t t = 0; t < spec.frames(); ++t) {
    for (uint32_t f = 0; f < spec.bins(); ++f) {
      cdouble acc{};
      for (uint32_t i = 0; i < spec.channels(); ++i) {
        acc += std::conj(steering.at(i, f)) * spec.at(i, t, f);
      }
      out.at(0, t, f) = acc * scale;
    }
  }
  return out;
}

ComplexSpectrogram FilterAndSum(const ComplexSpectrogram& spec,
                                const BeamformerWeights& weights) {
  if (weights.kind() != WeightsKind::kTimeVarying) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter&sum requires time-varying weights");
  }
  if (weights.channels() != spec.channels() ||
      weights.frames() != spec.frames() || weights.bins() != spec.bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weights dims (" + std::to_string(weights.channels()) + ", " +
                    std::to_string(weights.frames()) + ", " +
                    std::to_string(weights.bins()) +
                    ") do not match spectrogram (" +
                    std::to_string(spec.channels()) + ", " +
                    std::to_string(spec.frames()) + ", " +
                    std::to_string(spec.bins()) + ")");
  }
  ComplexSpectrogram out(1, spec.frames(), spec.bins());
  for (uint32_t t = 0; t < spec.frames(); ++t) {
    for (uint32_t f = 0; f < spec.bins(); ++f) {
      cdouble acc{};
      for (uint32_t i = 0; i < spec.channels(); ++i) {
        acc += weights.at(i, t, f) * spec.at(i, t, f);  // no conjugation
      }
      out.at(0, t, f) = acc;
    }
  }
  return out;
}

PsdMatrices EstimatePsd(const ComplexSpectrogram& spec,
                        const TimeFrequencyMask& mask) {
  RequireTfMatch(spec, mask);
  const uint32_t channels = spec.channels();
  const uint32_t frames = spec.frames();
  const uint32_t bins = spec.bins();
  PsdMatrices psd;
  psd.bins = bins;
  psd.channels = channels;
  psd.data.assign(static_cast<size_t>(bins) * channels * channels, cdouble{});

  std::vector<cdouble> x(channels);
  for (uint32_t f = 0; f < bins; ++f) {
    double mask_energy = 0.0;
    for (uint32_t t = 0; t < frames; ++t) {
      const double w = std::norm(mask.at(t, f));
      mask_energy += w;
      if (w == 0.0) continue;
      for (uint32_t i = 0; i < channels; ++i) x[i] = spec.at(i, t, f);
      // Lower triangle of w * x x^H; the mask phase cancels in the product.
      for (uint32_t r = 0; r < channels; ++r) {
        for (uint32_t c = 0; c < r; ++c) {
          psd.at(f, r, c) += w * x[r] * std::conj(x[c]);
        }
        psd.at(f, r, r) += cdouble{w * std::norm(x[r]), 0.0};
      }
    }
    if (mask_energy < kMaskEnergyFloor) {
      throw Error(ErrorCode::kDegenerateMask,
                  "mask energy underflow at bin " + std::to_string(f));
    }
    const double inv = 1.0 / mask_energy;
    for (uint32_t r = 0; r < channels; ++r) {
      for (uint32_t c = 0; c < r; ++c) {
        psd.at(f, r, c) *= inv;
        psd.at(f, c, r) = std::conj(psd.at(f, r, c));
      }
      psd.at(f, r, r) *= inv;
    }
  }
  return psd;
}

BeamformerWeights MvdrWeights(const PsdSet& psd, uint32_t reference_channel) {
  const PsdMatrices& target = psd.target;
  const PsdMatrices& noise = psd.interference;
  if (target.bins != noise.bins || target.channels != noise.channels) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target and interference PSD sets have different dims");
  }
  const uint32_t channels = target.channels;
  const uint32_t bins = target.bins;
  if (reference_channel >= channels) {
    throw Error(ErrorCode::kInvalidArgument,
                "reference channel " + std::to_string(reference_channel) +
                    " out of range for " + std::to_string(channels) +
                    " channels");
  }

  BeamformerWeights weights(channels, bins);
  const uint64_t stride = static_cast<uint64_t>(channels) * channels;
  for (uint32_t f = 0; f < bins; ++f) {
    ConstMapMatrix phi_s(target.data.data() + f * stride, channels, channels);
    ConstMapMatrix phi_n(noise.data.data() + f * stride, channels, channels);

    const double trace_n = phi_n.trace().real();
    if (!(trace_n > 0.0) || !std::isfinite(trace_n)) {
      throw Error(ErrorCode::kSingularPsd,
                  "interference PSD has non-positive trace at bin " +
                      std::to_string(f));
    }
    ComplexMatrix loaded = phi_n;
    const double load = kDiagonalLoading * trace_n / channels;
    for (uint32_t i = 0; i < channels; ++i) loaded(i, i) += load;

    Eigen::LDLT<ComplexMatrix> ldlt(loaded);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingularPsd,
                  "interference PSD not invertible after loading at bin " +
                      std::to_string(f));
    }
    const ComplexMatrix solved = ldlt.solve(phi_s);  // Phi_n^-1 Phi_s
    const cdouble trace = solved.trace();
    if (std::abs(trace) < kTraceFloor || !std::isfinite(std::abs(trace))) {
      throw Error(ErrorCode::kDegenerateTrace,
                  "trace magnitude " + std::to_string(std::abs(trace)) +
                      " below tolerance at bin " + std::to_string(f));
    }
    for (uint32_t i = 0; i < channels; ++i) {
      const cdouble w = solved(i, reference_channel) / trace;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        throw Error(ErrorCode::kSingularPsd,
                    "non-finite weight at bin " + std::to_string(f));
      }
      weights.at(i, f) = w;
    }
  }
  return weights;
}

ComplexSpectrogram ApplyBeamformer(const BeamformerWeights& weights,
                                   const ComplexSpectrogram& spec) {
  if (weights.kind() != WeightsKind::kTimeInvariant) {
    throw Error(ErrorCode::kInvalidArgument,
                "apply_beamformer requires time-invariant weights");
  }
  if (weights.channels() != spec.channels() || weights.bins() != spec.bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weights dims (" + std::to_string(weights.channels()) + ", " +
                    std::to_string(weights.bins()) +
                    ") do not match spectrogram (" +
                    std::to_string(spec.channels()) + ", " +
                    std::to_string(spec.bins()) + ")");
  }
  ComplexSpectrogram out(1, spec.frames(), spec.bins());
  for (uint32_t t = 0; t < spec.frames(); ++t) {
    for (uint32_t f = 0; f < spec.bins(); ++f) {
      cdouble acc{};
      for (uint32_t i = 0; i < spec.channels(); ++i) {
        acc += std::conj(weights.at(i, f)) * spec.at(i, t, f);
      }
      out.at(0, t, f) = acc;
    }
  }
  return out;
}

ComplexSpectrogram MvdrPipeline(const ComplexSpectrogram& spec,
                                const TimeFrequencyMask& mask_target,
                                const TimeFrequencyMask& mask_interference,
                                uint32_t reference_channel) {
  PsdSet psd;
  psd.target = EstimatePsd(spec, mask_target);
  psd.interference = EstimatePsd(spec, mask_interference);
  const BeamformerWeights weights = MvdrWeights(psd, reference_channel);
  return ApplyBeamformer(weights, spec);
}

}  // namespace mcss
