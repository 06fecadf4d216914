// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_SRC_FFT_HPP_
#define MCSS_SRC_FFT_HPP_

#include <cstddef>
#include <vector>

#include "mcss/types.hpp"

namespace mcss {

// One-sided real FFT of a fixed size backed by FFTW. Forward is the plain
// DFT; Inverse includes the 1/n normalization so Inverse(Forward(x)) == x.
// Plan creation is serialized internally (FFTW planning is not thread-safe);
// a constructed instance must not be shared across threads concurrently
// because it executes through member buffers.
class RealFft {
 public:
  explicit RealFft(size_t n);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  size_t size() const { return n_; }
  size_t bins() const { return n_ / 2 + 1; }

  void Forward(const double* in, cdouble* out);
  void Inverse(const cdouble* in, double* out);

 private:
  size_t n_;
  void* buf_real_;  // fftw-allocated
  void* buf_cplx_;
  void* plan_fwd_;
  void* plan_inv_;
};

}  // namespace mcss

#endif  // MCSS_SRC_FFT_HPP_
