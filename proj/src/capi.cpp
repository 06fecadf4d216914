// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss.h"

#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "mcss/beamform.hpp"
#include "mcss/masking.hpp"
#include "mcss/metrics.hpp"
#include "mcss/simulate.hpp"
#include "mcss/spatial.hpp"
#include "mcss/stft.hpp"
#include "mcss/tensorio.hpp"
#include "mcss/types.hpp"

struct mcss_config {
  mcss::SignalConfig v;
};
struct mcss_geometry {
  mcss::ArrayGeometry v;
};
struct mcss_wave {
  mcss::MultiChannelWaveform v;
};
struct mcss_tensor {
  mcss::Tensor v;
};
struct mcss_spec {
  mcss::ComplexSpectrogram v;
};
struct mcss_scenario {
  mcss::Scenario v;
};
struct mcss_bundle {
  mcss::SceneBundle v;
  std::string meta;
};

namespace {

thread_local std::string g_last_error;

mcss_status StatusFromCategory(mcss::ErrorCategory category) {
  switch (category) {
    case mcss::ErrorCategory::kArgument: return MCSS_ERR_INVALID_ARGUMENT;
    case mcss::ErrorCategory::kData: return MCSS_ERR_IO;
    case mcss::ErrorCategory::kNumeric: return MCSS_ERR_NUMERIC;
    case mcss::ErrorCategory::kInternal: return MCSS_ERR_INTERNAL;
  }
  return MCSS_ERR_INTERNAL;
}

mcss_status Fail(mcss_status status, const char* msg) {
  g_last_error = msg;
  return status;
}

template <typename Fn>
mcss_status Guard(Fn&& fn) {
  try {
    fn();
    return MCSS_OK;
  } catch (const mcss::Error& e) {
    g_last_error = e.what();
    return StatusFromCategory(e.category());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MCSS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MCSS_ERR_INTERNAL;
  }
}

template <typename... Ptr>
bool AnyNull(Ptr... p) {
  return ((p == nullptr) || ...);
}

mcss::Tensor TensorFromFloats(mcss_dtype dtype, uint32_t ndim,
                              const uint64_t* dims, const float* data) {
  mcss::Tensor t;
  t.dtype = static_cast<mcss::TensorDtype>(dtype);
  t.dims.assign(dims, dims + ndim);
  t.data.assign(data, data + t.element_count() * t.floats_per_element());
  t.Validate();
  return t;
}

mcss::SteeringMatrix SteeringFromTensor(const mcss::Tensor& t) {
  t.Validate();
  if (t.dims.size() != 2 || t.dtype != mcss::TensorDtype::kComplex32) {
    throw mcss::Error(mcss::ErrorCode::kDimsMismatch,
                      "steering tensor must be (I, F) complex");
  }
  mcss::SteeringMatrix sv;
  sv.channels = static_cast<uint32_t>(t.dims[0]);
  sv.bins = static_cast<uint32_t>(t.dims[1]);
  sv.data.resize(static_cast<size_t>(sv.channels) * sv.bins);
  for (size_t i = 0; i < sv.data.size(); ++i) {
    sv.data[i] = mcss::cdouble{t.data[2 * i], t.data[2 * i + 1]};
  }
  return sv;
}

mcss::Tensor TensorFromPsd(const mcss::PsdMatrices& psd) {
  mcss::Tensor t;
  t.dtype = mcss::TensorDtype::kComplex32;
  t.dims = {psd.bins, psd.channels, psd.channels};
  t.data.reserve(psd.data.size() * 2);
  for (const mcss::cdouble& v : psd.data) {
    t.data.push_back(static_cast<float>(v.real()));
    t.data.push_back(static_cast<float>(v.imag()));
  }
  return t;
}

mcss::PsdMatrices PsdFromTensor(const mcss::Tensor& t) {
  t.Validate();
  if (t.dims.size() != 3 || t.dims[1] != t.dims[2] ||
      t.dtype != mcss::TensorDtype::kComplex32) {
    throw mcss::Error(mcss::ErrorCode::kDimsMismatch,
                      "PSD tensor must be (F, I, I) complex");
  }
  mcss::PsdMatrices psd;
  psd.bins = static_cast<uint32_t>(t.dims[0]);
  psd.channels = static_cast<uint32_t>(t.dims[1]);
  psd.data.resize(static_cast<size_t>(psd.bins) * psd.channels * psd.channels);
  for (size_t i = 0; i < psd.data.size(); ++i) {
    psd.data[i] = mcss::cdouble{t.data[2 * i], t.data[2 * i + 1]};
  }
  return psd;
}

constexpr const char* kNullArg = "null argument";

mcss_status MetricGuard(const mcss_wave* estimate, const mcss_wave* reference,
                        double* out_db,
                        double (*fn)(std::span<const double>,
                                     std::span<const double>)) {
  if (AnyNull(estimate, reference, out_db)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  if (estimate->v.channels() != 1 || reference->v.channels() != 1) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT,
                "metrics expect single-channel waves");
  }
  return Guard([&] {
    *out_db = fn(estimate->v.channel_span(0), reference->v.channel_span(0));
  });
}

}  // namespace

extern "C" {

const char* mcss_status_name(mcss_status status) {
  switch (status) {
    case MCSS_OK: return "ok";
    case MCSS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MCSS_ERR_IO: return "io error";
    case MCSS_ERR_NUMERIC: return "numerical failure";
    case MCSS_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* mcss_last_error(void) { return g_last_error.c_str(); }

const char* mcss_version(void) { return "0.1.0"; }

/* ------------------------- config ------------------------- */

mcss_status mcss_config_create(uint32_t sample_rate_hz, uint32_t window_len,
                               uint32_t hop_len, double sound_speed_m_per_s,
                               mcss_config** out) {
  if (AnyNull(out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    mcss::SignalConfig cfg;
    cfg.sample_rate_hz = sample_rate_hz;
    cfg.window_len_samples = window_len;
    cfg.hop_len_samples = hop_len;
    cfg.sound_speed_m_per_s = sound_speed_m_per_s;
    cfg.Validate();
    *out = new mcss_config{cfg};
  });
}

mcss_status mcss_config_create_default(mcss_config** out) {
  if (AnyNull(out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { *out = new mcss_config{mcss::SignalConfig{}}; });
}

void mcss_config_free(mcss_config* config) { delete config; }

uint32_t mcss_config_sample_rate(const mcss_config* c) {
  return c ? c->v.sample_rate_hz : 0;
}
uint32_t mcss_config_window_len(const mcss_config* c) {
  return c ? c->v.window_len_samples : 0;
}
uint32_t mcss_config_hop_len(const mcss_config* c) {
  return c ? c->v.hop_len_samples : 0;
}
uint32_t mcss_config_n_freq_bins(const mcss_config* c) {
  return c ? c->v.n_freq_bins() : 0;
}
double mcss_config_sound_speed(const mcss_config* c) {
  return c ? c->v.sound_speed_m_per_s : 0.0;
}

/* ------------------------- geometry ------------------------- */

mcss_status mcss_geometry_load(const char* path, mcss_geometry** out) {
  if (AnyNull(path, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { *out = new mcss_geometry{mcss::LoadGeometry(path)}; });
}

mcss_status mcss_geometry_create_default(mcss_geometry** out) {
  if (AnyNull(out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard(
      [&] { *out = new mcss_geometry{mcss::ArrayGeometry::DefaultUla15()}; });
}

mcss_status mcss_geometry_create(const double* positions_m, uint32_t mic_count,
                                 const uint32_t* pairs, uint32_t pair_count,
                                 uint32_t reference_channel,
                                 mcss_geometry** out) {
  if (AnyNull(positions_m, out) || (pair_count > 0 && pairs == nullptr)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    mcss::ArrayGeometry g;
    g.mic_positions_m.resize(mic_count);
    for (uint32_t i = 0; i < mic_count; ++i) {
      g.mic_positions_m[i] = {positions_m[3 * i], positions_m[3 * i + 1],
                              positions_m[3 * i + 2]};
    }
    for (uint32_t p = 0; p < pair_count; ++p) {
      g.pairs.emplace_back(pairs[2 * p], pairs[2 * p + 1]);
    }
    g.reference_channel = reference_channel;
    g.Validate();
    *out = new mcss_geometry{std::move(g)};
  });
}

void mcss_geometry_free(mcss_geometry* geometry) { delete geometry; }

uint32_t mcss_geometry_mic_count(const mcss_geometry* g) {
  return g ? g->v.mic_count() : 0;
}
uint32_t mcss_geometry_pair_count(const mcss_geometry* g) {
  return g ? static_cast<uint32_t>(g->v.pairs.size()) : 0;
}
uint32_t mcss_geometry_reference_channel(const mcss_geometry* g) {
  return g ? g->v.reference_channel : 0;
}

mcss_status mcss_geometry_pair(const mcss_geometry* g, uint32_t index,
                               uint32_t* out_i, uint32_t* out_j) {
  if (AnyNull(g, out_i, out_j)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  if (index >= g->v.pairs.size()) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, "pair index out of range");
  }
  *out_i = g->v.pairs[index].first;
  *out_j = g->v.pairs[index].second;
  return MCSS_OK;
}

/* ------------------------- waves ------------------------- */

mcss_status mcss_wave_create(uint32_t channels, uint64_t length,
                             uint32_t sample_rate_hz, const double* samples,
                             mcss_wave** out) {
  if (AnyNull(samples, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    mcss::MultiChannelWaveform w(channels, length, sample_rate_hz);
    std::memcpy(w.data().data(), samples,
                sizeof(double) * static_cast<size_t>(channels) * length);
    w.RequireFinite();
    *out = new mcss_wave{std::move(w)};
  });
}

void mcss_wave_free(mcss_wave* wave) { delete wave; }

uint32_t mcss_wave_channels(const mcss_wave* w) {
  return w ? w->v.channels() : 0;
}
uint64_t mcss_wave_length(const mcss_wave* w) { return w ? w->v.length() : 0; }
uint32_t mcss_wave_sample_rate(const mcss_wave* w) {
  return w ? w->v.sample_rate_hz() : 0;
}

mcss_status mcss_wave_copy_samples(const mcss_wave* wave, double* out) {
  if (AnyNull(wave, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  std::memcpy(out, wave->v.data().data(),
              sizeof(double) * wave->v.data().size());
  return MCSS_OK;
}

mcss_status mcss_wave_select_channel(const mcss_wave* wave, uint32_t channel,
                                     mcss_wave** out) {
  if (AnyNull(wave, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    *out = new mcss_wave{mcss::MultiChannelWaveform::FromChannels(
        {wave->v.ExtractChannel(channel)})};
  });
}

mcss_status mcss_wave_read_wav(const char* path, mcss_wave** out) {
  if (AnyNull(path, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { *out = new mcss_wave{mcss::ReadWav(path)}; });
}

mcss_status mcss_wave_write_wav(const char* path, const mcss_wave* wave,
                                mcss_wav_encoding encoding) {
  if (AnyNull(path, wave)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    mcss::WriteWav(path, wave->v,
                   encoding == MCSS_WAV_PCM16 ? mcss::WavEncoding::kPcm16
                                              : mcss::WavEncoding::kFloat32);
  });
}

/* ------------------------- tensors ------------------------- */

mcss_status mcss_tensor_create(mcss_dtype dtype, uint32_t ndim,
                               const uint64_t* dims, const float* data,
                               mcss_tensor** out) {
  if (AnyNull(dims, data, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  if (ndim < 1 || ndim > 4) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, "ndim must be in [1, 4]");
  }
  if (dtype != MCSS_DTYPE_REAL32 && dtype != MCSS_DTYPE_COMPLEX32) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, "unknown dtype");
  }
  return Guard([&] {
    *out = new mcss_tensor{TensorFromFloats(dtype, ndim, dims, data)};
  });
}

void mcss_tensor_free(mcss_tensor* tensor) { delete tensor; }

mcss_dtype mcss_tensor_dtype(const mcss_tensor* t) {
  return t && t->v.dtype == mcss::TensorDtype::kComplex32
             ? MCSS_DTYPE_COMPLEX32
             : MCSS_DTYPE_REAL32;
}
uint32_t mcss_tensor_ndim(const mcss_tensor* t) {
  return t ? static_cast<uint32_t>(t->v.dims.size()) : 0;
}

mcss_status mcss_tensor_dims(const mcss_tensor* t, uint64_t* out) {
  if (AnyNull(t, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  std::memcpy(out, t->v.dims.data(), sizeof(uint64_t) * t->v.dims.size());
  return MCSS_OK;
}

uint64_t mcss_tensor_element_count(const mcss_tensor* t) {
  return t ? t->v.element_count() : 0;
}

const float* mcss_tensor_data(const mcss_tensor* t) {
  return t ? t->v.data.data() : nullptr;
}

mcss_status mcss_tensor_read_btf(const char* path, mcss_tensor** out) {
  if (AnyNull(path, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { *out = new mcss_tensor{mcss::ReadBtf(path)}; });
}

mcss_status mcss_tensor_write_btf(const char* path, const mcss_tensor* tensor) {
  if (AnyNull(path, tensor)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { mcss::WriteBtf(path, tensor->v); });
}

/* ------------------------- spectrograms ------------------------- */

mcss_status mcss_spec_create(uint32_t channels, uint32_t frames, uint32_t bins,
                             const double* data, mcss_spec** out) {
  if (AnyNull(data, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    mcss::ComplexSpectrogram s(channels, frames, bins);
    for (size_t i = 0; i < s.data().size(); ++i) {
      s.data()[i] = mcss::cdouble{data[2 * i], data[2 * i + 1]};
    }
    s.RequireFinite();
    *out = new mcss_spec{std::move(s)};
  });
}

void mcss_spec_free(mcss_spec* spec) { delete spec; }

uint32_t mcss_spec_channels(const mcss_spec* s) {
  return s ? s->v.channels() : 0;
}
uint32_t mcss_spec_frames(const mcss_spec* s) { return s ? s->v.frames() : 0; }
uint32_t mcss_spec_bins(const mcss_spec* s) { return s ? s->v.bins() : 0; }

mcss_status mcss_spec_copy_data(const mcss_spec* spec, double* out) {
  if (AnyNull(spec, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  const auto& d = spec->v.data();
  for (size_t i = 0; i < d.size(); ++i) {
    out[2 * i] = d[i].real();
    out[2 * i + 1] = d[i].imag();
  }
  return MCSS_OK;
}

mcss_status mcss_spec_select_channel(const mcss_spec* spec, uint32_t channel,
                                     mcss_spec** out) {
  if (AnyNull(spec, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard(
      [&] { *out = new mcss_spec{spec->v.SelectChannel(channel)}; });
}

mcss_status mcss_stft(const mcss_wave* wave, const mcss_config* config,
                      mcss_spec** out) {
  if (AnyNull(wave, config, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    const mcss::StftPlan plan = mcss::StftPlan::Create(config->v);
    *out = new mcss_spec{mcss::Stft(wave->v, plan)};
  });
}

mcss_status mcss_istft(const mcss_spec* spec, const mcss_config* config,
                       int64_t out_len, mcss_wave** out) {
  if (AnyNull(spec, config, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    const mcss::StftPlan plan = mcss::StftPlan::Create(config->v);
    *out = new mcss_wave{mcss::Istft(spec->v, plan, out_len)};
  });
}

mcss_status mcss_validate_dims(const mcss_spec* spec,
                               const mcss_geometry* geometry) {
  if (AnyNull(spec, geometry)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { mcss::ValidateDims(spec->v, geometry->v); });
}

/* ------------------------- spatial ------------------------- */

mcss_status mcss_phase_delay(const mcss_geometry* geometry, uint32_t mic_i,
                             uint32_t mic_j, double theta_deg,
                             const mcss_config* config, double* out) {
  if (AnyNull(geometry, config, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    const auto pd =
        mcss::PhaseDelay(geometry->v, {mic_i, mic_j}, theta_deg, config->v);
    std::memcpy(out, pd.data(), sizeof(double) * pd.size());
  });
}

mcss_status mcss_compute_ipd(const mcss_spec* spec, uint32_t mic_i,
                             uint32_t mic_j, mcss_tensor** out) {
  if (AnyNull(spec, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    *out = new mcss_tensor{mcss::TensorFromFeatureMap(
        mcss::ComputeIpd(spec->v, {mic_i, mic_j}))};
  });
}

mcss_status mcss_compute_angle_feature(const mcss_spec* spec,
                                       const mcss_geometry* geometry,
                                       double theta_deg,
                                       const mcss_config* config,
                                       mcss_tensor** out) {
  if (AnyNull(spec, geometry, config, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_tensor{mcss::TensorFromFeatureMap(mcss::ComputeAngleFeature(
        spec->v, geometry->v, theta_deg, config->v))};
  });
}

mcss_status mcss_steering_vector(const mcss_geometry* geometry,
                                 double theta_deg, const mcss_config* config,
                                 mcss_tensor** out) {
  if (AnyNull(geometry, config, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_tensor{mcss::TensorFromSteering(
        mcss::ComputeSteeringVector(geometry->v, theta_deg, config->v))};
  });
}

mcss_status mcss_estimate_doa(const mcss_spec* spec,
                              const mcss_geometry* geometry,
                              const mcss_config* config,
                              const double* grid_deg, size_t grid_len,
                              double* out_theta_deg) {
  if (AnyNull(spec, geometry, config, grid_deg, out_theta_deg)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out_theta_deg = mcss::EstimateDoa(spec->v, geometry->v,
                                       std::span<const double>(grid_deg, grid_len),
                                       config->v);
  });
}

/* ------------------------- masks ------------------------- */

mcss_status mcss_ideal_complex_mask(const mcss_spec* target_ref,
                                    const mcss_spec* mix_ref, double clip,
                                    mcss_tensor** out) {
  if (AnyNull(target_ref, mix_ref, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_tensor{mcss::TensorFromMask(
        mcss::IdealComplexMask(target_ref->v, mix_ref->v, clip))};
  });
}

mcss_status mcss_ideal_ratio_mask(const mcss_spec* target_ref,
                                  const mcss_spec* interferer_ref,
                                  mcss_tensor** out) {
  if (AnyNull(target_ref, interferer_ref, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_tensor{mcss::TensorFromMask(
        mcss::IdealRatioMask(target_ref->v, interferer_ref->v))};
  });
}

mcss_status mcss_apply_mask(const mcss_tensor* mask, const mcss_spec* mix_ref,
                            mcss_spec** out) {
  if (AnyNull(mask, mix_ref, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_spec{
        mcss::ApplyMask(mcss::MaskFromTensor(mask->v), mix_ref->v)};
  });
}

/* ------------------------- beamforming ------------------------- */

mcss_status mcss_delay_and_sum(const mcss_spec* spec,
                               const mcss_geometry* geometry, double theta_deg,
                               const mcss_config* config, mcss_spec** out) {
  if (AnyNull(spec, geometry, config, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    const mcss::SteeringMatrix sv =
        mcss::ComputeSteeringVector(geometry->v, theta_deg, config->v);
    *out = new mcss_spec{mcss::DelayAndSum(spec->v, sv)};
  });
}

mcss_status mcss_delay_and_sum_steered(const mcss_spec* spec,
                                       const mcss_tensor* steering,
                                       mcss_spec** out) {
  if (AnyNull(spec, steering, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_spec{
        mcss::DelayAndSum(spec->v, SteeringFromTensor(steering->v))};
  });
}

mcss_status mcss_filter_and_sum(const mcss_spec* spec,
                                const mcss_tensor* weights, mcss_spec** out) {
  if (AnyNull(spec, weights, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    mcss::BeamformerWeights w = mcss::WeightsFromTensor(weights->v);
    if (w.kind() == mcss::WeightsKind::kTimeInvariant) {
      // Broadcast (I,F) weights over the frame axis.
      mcss::BeamformerWeights tv(w.channels(), spec->v.frames(), w.bins());
      for (uint32_t c = 0; c < w.channels(); ++c) {
        for (uint32_t t = 0; t < spec->v.frames(); ++t) {
          for (uint32_t f = 0; f < w.bins(); ++f) {
            tv.at(c, t, f) = w.at(c, f);
          }
        }
      }
      w = std::move(tv);
    }
    *out = new mcss_spec{mcss::FilterAndSum(spec->v, w)};
  });
}

mcss_status mcss_estimate_psd(const mcss_spec* spec, const mcss_tensor* mask,
                              mcss_tensor** out) {
  if (AnyNull(spec, mask, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    *out = new mcss_tensor{TensorFromPsd(
        mcss::EstimatePsd(spec->v, mcss::MaskFromTensor(mask->v)))};
  });
}

mcss_status mcss_mvdr_weights(const mcss_tensor* psd_target,
                              const mcss_tensor* psd_interference,
                              uint32_t reference_channel, mcss_tensor** out) {
  if (AnyNull(psd_target, psd_interference, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    mcss::PsdSet psd;
    psd.target = PsdFromTensor(psd_target->v);
    psd.interference = PsdFromTensor(psd_interference->v);
    *out = new mcss_tensor{mcss::TensorFromWeights(
        mcss::MvdrWeights(psd, reference_channel))};
  });
}

mcss_status mcss_apply_beamformer(const mcss_tensor* weights,
                                  const mcss_spec* spec, mcss_spec** out) {
  if (AnyNull(weights, spec, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    const mcss::BeamformerWeights w = mcss::WeightsFromTensor(weights->v);
    if (w.kind() != mcss::WeightsKind::kTimeInvariant) {
      throw mcss::Error(mcss::ErrorCode::kDimsMismatch,
                        "apply_beamformer weights must be (I, F)");
    }
    *out = new mcss_spec{mcss::ApplyBeamformer(w, spec->v)};
  });
}

mcss_status mcss_mvdr_pipeline(const mcss_spec* spec,
                               const mcss_tensor* mask_target,
                               const mcss_tensor* mask_interference,
                               uint32_t reference_channel, mcss_spec** out) {
  if (AnyNull(spec, mask_target, mask_interference, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return Guard([&] {
    *out = new mcss_spec{mcss::MvdrPipeline(
        spec->v, mcss::MaskFromTensor(mask_target->v),
        mcss::MaskFromTensor(mask_interference->v), reference_channel)};
  });
}

/* ------------------------- metrics ------------------------- */

mcss_status mcss_si_snr(const mcss_wave* estimate, const mcss_wave* reference,
                        double* out_db) {
  return MetricGuard(estimate, reference, out_db, mcss::SiSnrDb);
}

mcss_status mcss_snr(const mcss_wave* estimate, const mcss_wave* reference,
                     double* out_db) {
  return MetricGuard(estimate, reference, out_db, mcss::SnrDb);
}

/* ------------------------- simulation ------------------------- */

mcss_status mcss_scenario_load(const char* path, mcss_scenario** out) {
  if (AnyNull(path, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { *out = new mcss_scenario{mcss::LoadScenario(path)}; });
}

void mcss_scenario_free(mcss_scenario* scenario) { delete scenario; }

uint64_t mcss_scenario_seed(const mcss_scenario* scenario) {
  return scenario ? scenario->v.seed : 0;
}

mcss_status mcss_simulate(const mcss_scenario* scenario, mcss_bundle** out) {
  if (AnyNull(scenario, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    auto* b = new mcss_bundle{mcss::SimulateScenario(scenario->v), {}};
    b->meta = b->v.MetaJson();
    *out = b;
  });
}

void mcss_bundle_free(mcss_bundle* bundle) { delete bundle; }

mcss_status mcss_bundle_get_wave(const mcss_bundle* bundle,
                                 mcss_bundle_part part, mcss_wave** out) {
  if (AnyNull(bundle, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] {
    switch (part) {
      case MCSS_BUNDLE_MIXTURE: *out = new mcss_wave{bundle->v.mixture}; return;
      case MCSS_BUNDLE_TARGET:
        *out = new mcss_wave{bundle->v.target_image};
        return;
      case MCSS_BUNDLE_INTERFERER:
        *out = new mcss_wave{bundle->v.interferer_image};
        return;
      case MCSS_BUNDLE_NOISE: *out = new mcss_wave{bundle->v.noise}; return;
    }
    throw mcss::Error(mcss::ErrorCode::kInvalidArgument,
                      "unknown bundle part");
  });
}

const char* mcss_bundle_meta_json(const mcss_bundle* bundle) {
  return bundle ? bundle->meta.c_str() : "";
}

mcss_status mcss_bundle_write(const mcss_bundle* bundle, const char* dir) {
  if (AnyNull(bundle, dir)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard([&] { mcss::WriteBundle(bundle->v, dir); });
}

mcss_status mcss_render_plane_wave(const mcss_wave* source,
                                   const mcss_geometry* geometry,
                                   double theta_deg, const mcss_config* config,
                                   mcss_wave** out) {
  if (AnyNull(source, geometry, config, out)) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  }
  if (source->v.channels() != 1) {
    return Fail(MCSS_ERR_INVALID_ARGUMENT,
                "plane-wave source must be single-channel");
  }
  return Guard([&] {
    *out = new mcss_wave{mcss::RenderPlaneWave(
        source->v.ExtractChannel(0), geometry->v, theta_deg, config->v)};
  });
}

mcss_status mcss_add_sensor_noise(const mcss_wave* wave, double snr_db,
                                  uint64_t seed, mcss_wave** out) {
  if (AnyNull(wave, out)) return Fail(MCSS_ERR_INVALID_ARGUMENT, kNullArg);
  return Guard(
      [&] { *out = new mcss_wave{mcss::AddSensorNoise(wave->v, snr_db, seed)}; });
}

} /* extern "C" */
