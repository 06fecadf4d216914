// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_BEAMFORM_HPP_
#define MCSS_BEAMFORM_HPP_

#include <cstdint>
#include <vector>

#include "mcss/spatial.hpp"
#include "mcss/types.hpp"

namespace mcss {

// Per-bin I x I Hermitian spatial covariance matrices, dims (F, I, I),
// row-major within each bin: data[(f * I + row) * I + col].
struct PsdMatrices {
  uint32_t bins = 0;
  uint32_t channels = 0;
  std::vector<cdouble> data;

  cdouble& at(uint32_t f, uint32_t row, uint32_t col) {
    return data[(static_cast<uint64_t>(f) * channels + row) * channels + col];
  }
  cdouble at(uint32_t f, uint32_t row, uint32_t col) const {
    return data[(static_cast<uint64_t>(f) * channels + row) * channels + col];
  }
};

struct PsdSet {
  PsdMatrices target;
  PsdMatrices interference;
};

// Classical delay & sum: y[t,f] = (1/I) * sum_i conj(steer[i,f]) * x[i,t,f].
ComplexSpectrogram DelayAndSum(const ComplexSpectrogram& spec,
                               const SteeringMatrix& steering);

// Filter & sum with per-TF filters: y[t,f] = sum_i w[i,t,f] * x[i,t,f]
// (no conjugation; the bridge to ApplyBeamformer is w_fs = conj(w_ti)).
ComplexSpectrogram FilterAndSum(const ComplexSpectrogram& spec,
                                const BeamformerWeights& weights);

// Mask-weighted spatial covariance per bin:
//   Phi_f = sum_t (m[t,f]*x[t,f]) (m[t,f]*x[t,f])^H / sum_t |m[t,f]|^2,
// accumulated as |m|^2 * x x^H (the mask phase cancels in the outer product).
// Hermitian PSD by construction; summation order fixed (t ascending).
// Throws kDegenerateMask(f) when a bin's mask energy underflows (< 1e-20).
PsdMatrices EstimatePsd(const ComplexSpectrogram& spec,
                        const TimeFrequencyMask& mask);

// Trace-normalized MVDR solution per bin:
//   w_f = (Phi_n^-1 Phi_s / Trace(Phi_n^-1 Phi_s)) u,
// u the one-hot vector of reference_channel. Phi_n gets diagonal loading
// 1e-6 * trace/I before the LDLT solve. Throws kSingularPsd(f) when Phi_n is
// not invertible after loading, kDegenerateTrace(f) when |trace| < 1e-12.
BeamformerWeights MvdrWeights(const PsdSet& psd, uint32_t reference_channel);

// y[t,f] = w_f^H x[t,f] = sum_i conj(w[i,f]) * x[i,t,f].
ComplexSpectrogram ApplyBeamformer(const BeamformerWeights& weights,
                                   const ComplexSpectrogram& spec);

// EstimatePsd x2 -> MvdrWeights -> ApplyBeamformer, bit-identical to calling
// the three operations manually.
ComplexSpectrogram MvdrPipeline(const ComplexSpectrogram& spec,
                                const TimeFrequencyMask& mask_target,
                                const TimeFrequencyMask& mask_interference,
                                uint32_t reference_channel);

}  // namespace mcss

#endif  // MCSS_BEAMFORM_HPP_
