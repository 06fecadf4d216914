// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_MASKING_HPP_
#define MCSS_MASKING_HPP_

#include "mcss/types.hpp"

namespace mcss {

struct MaskSpec {
  enum class Kind { kComplexIdeal, kRatioIdeal, kExternal };
  Kind kind = Kind::kComplexIdeal;
  double clip = 10.0;  // magnitude bound for oracle complex masks
};

// Oracle complex mask m = s / x on the reference channel, magnitude clipped
// to <= clip with phase preserved; bins with |x| < 1e-12 get m = 0. Both
// inputs must be single-channel (1, T, F) with matching dims.
TimeFrequencyMask IdealComplexMask(const ComplexSpectrogram& target_ref,
                                   const ComplexSpectrogram& mix_ref,
                                   double clip = 10.0);

// Oracle ratio mask m = |s| / (|s| + |n|) in [0, 1], stored complex with zero
// imaginary part; 0/0 is defined as 0.
TimeFrequencyMask IdealRatioMask(const ComplexSpectrogram& target_ref,
                                 const ComplexSpectrogram& interferer_ref);

// Elementwise complex product y = m * x on a single-channel spectrogram.
ComplexSpectrogram ApplyMask(const TimeFrequencyMask& mask,
                             const ComplexSpectrogram& mix_ref);

}  // namespace mcss

#endif  // MCSS_MASKING_HPP_
