// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace mcss {

namespace {
std::mutex& PlanMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(size_t n) : n_(n) {
  if (n == 0 || n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "FFT size must be positive and even, got " + std::to_string(n));
  }
  buf_real_ = fftw_malloc(sizeof(double) * n_);
  buf_cplx_ = fftw_malloc(sizeof(fftw_complex) * bins());
  std::lock_guard<std::mutex> lock(PlanMutex());
  plan_fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_),
                                   static_cast<double*>(buf_real_),
                                   static_cast<fftw_complex*>(buf_cplx_),
                                   FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_),
                                   static_cast<fftw_complex*>(buf_cplx_),
                                   static_cast<double*>(buf_real_),
                                   FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlanMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(buf_real_);
  fftw_free(buf_cplx_);
}

void RealFft::Forward(const double* in, cdouble* out) {
  std::memcpy(buf_real_, in, sizeof(double) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const auto* c = static_cast<const fftw_complex*>(buf_cplx_);
  for (size_t k = 0; k < bins(); ++k) out[k] = cdouble(c[k][0], c[k][1]);
}

void RealFft::Inverse(const cdouble* in, double* out) {
  auto* c = static_cast<fftw_complex*>(buf_cplx_);
  for (size_t k = 0; k < bins(); ++k) {
    c[k][0] = in[k].real();
    c[k][1] = in[k].imag();
  }
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double scale = 1.0 / static_cast<double>(n_);
  const auto* r = static_cast<const double*>(buf_real_);
  for (size_t m = 0; m < n_; ++m) out[m] = r[m] * scale;
}

}  // namespace mcss
