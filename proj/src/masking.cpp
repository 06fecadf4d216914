// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/masking.hpp"

#include <cmath>

namespace mcss {

namespace {

constexpr double kSilentBinMagnitude = 1e-12;

void RequireSingleChannel(const ComplexSpectrogram& spec, const char* name) {
  if (spec.channels() != 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(name) + " must be single-channel, got " +
                    std::to_string(spec.channels()) + " channels");
  }
}

void RequireSameGrid(const ComplexSpectrogram& a, const ComplexSpectrogram& b) {
  if (a.frames() != b.frames() || a.bins() != b.bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "TF grids differ: (" + std::to_string(a.frames()) + ", " +
                    std::to_string(a.bins()) + ") vs (" +
                    std::to_string(b.frames()) + ", " +
                    std::to_string(b.bins()) + ")");
  }
}

}  // namespace

TimeFrequencyMask IdealComplexMask(const ComplexSpectrogram& target_ref,
                                   const ComplexSpectrogram& mix_ref,
                                   double clip) {
  RequireSingleChannel(target_ref, "target");
  RequireSingleChannel(mix_ref, "mixture");
  RequireSameGrid(target_ref, mix_ref);
  if (!(clip > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask clip bound must be > 0");
  }
  TimeFrequencyMask mask(mix_ref.frames(), mix_ref.bins());
  for (uint32_t t = 0; t < mask.frames(); ++t) {
    for (uint32_t f = 0; f < mask.bins(); ++f) {
      const cdouble x = mix_ref.at(0, t, f);
      if (std::abs(x) < kSilentBinMagnitude) continue;  // m = 0
      cdouble m = target_ref.at(0, t, f) / x;
      const double mag = std::abs(m);
      if (mag > clip) m *= clip / mag;  // clip magnitude, keep phase
      mask.at(t, f) = m;
    }
  }
  return mask;
}

TimeFrequencyMask IdealRatioMask(const ComplexSpectrogram& target_ref,
                                 const ComplexSpectrogram& interferer_ref) {
  RequireSingleChannel(target_ref, "target");
  RequireSingleChannel(interferer_ref, "interferer");
  RequireSameGrid(target_ref, interferer_ref);
  TimeFrequencyMask mask(target_ref.frames(), target_ref.bins());
  for (uint32_t t = 0; t < mask.frames(); ++t) {
    for (uint32_t f = 0; f < mask.bins(); ++f) {
      const double s = std::abs(target_ref.at(0, t, f));
      const double n = std::abs(interferer_ref.at(0, t, f));
      mask.at(t, f) = (s + n) > 0.0 ? cdouble{s / (s + n), 0.0} : cdouble{};
    }
  }
  return mask;
}

ComplexSpectrogram ApplyMask(const TimeFrequencyMask& mask,
                             const ComplexSpectrogram& mix_ref) {
  RequireSingleChannel(mix_ref, "mixture");
  if (mask.frames() != mix_ref.frames() || mask.bins() != mix_ref.bins()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask grid (" + std::to_string(mask.frames()) + ", " +
                    std::to_string(mask.bins()) +
                    ") does not match spectrogram (" +
                    std::to_string(mix_ref.frames()) + ", " +
                    std::to_string(mix_ref.bins()) + ")");
  }
  ComplexSpectrogram out(1, mix_ref.frames(), mix_ref.bins());
  for (uint32_t t = 0; t < out.frames(); ++t) {
    for (uint32_t f = 0; f < out.bins(); ++f) {
      out.at(0, t, f) = mask.at(t, f) * mix_ref.at(0, t, f);
    }
  }
  return out;
}

}  // namespace mcss
