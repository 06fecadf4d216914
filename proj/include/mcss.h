/* Copyright 2026 The mcss authors
 * License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
 *
 * mcss — multi-channel overlapped speech separation toolkit, C API.
 *
 * Conventions:
 *   - Every function returns an mcss_status; MCSS_OK means success. On
 *     failure mcss_last_error() returns a thread-local message describing
 *     the most recent failure on the calling thread.
 *   - Objects are opaque handles created by mcss_*_create/load functions
 *     and released with the matching mcss_*_free (NULL-safe).
 *   - All indices (channels, pairs, reference) are 0-based here; the CLI
 *     and the JSON config files use the 1-based numbering instead.
 *   - Angles are degrees in [0, 180], measured from the positive x axis
 *     (90 = broadside to an x-axis linear array).
 *   - Tensors carry float32 payloads (real, or complex interleaved re,im)
 *     and map 1:1 onto the BTF file format. Dim orders: mask (T,F) complex;
 *     weights (I,F) or (I,T,F) complex; feature maps (T,F) real; steering
 *     (I,F) complex; PSD sets (F,I,I) complex.
 */

#ifndef MCSS_H
#define MCSS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcss_status {
  MCSS_OK = 0,
  MCSS_ERR_INVALID_ARGUMENT = 1, /* inputs malformed or inconsistent */
  MCSS_ERR_IO = 2,               /* unreadable, corrupt or unsupported data */
  MCSS_ERR_NUMERIC = 3,          /* numerical failure (singular PSD, ...) */
  MCSS_ERR_INTERNAL = 4
} mcss_status;

const char* mcss_status_name(mcss_status status);
const char* mcss_last_error(void);
const char* mcss_version(void);

/* ------------------------------------------------------------------ */
/* Signal configuration                                                */

typedef struct mcss_config mcss_config;

/* window_len must be even; n_freq_bins = window_len/2 + 1. */
mcss_status mcss_config_create(uint32_t sample_rate_hz, uint32_t window_len,
                               uint32_t hop_len, double sound_speed_m_per_s,
                               mcss_config** out);
/* 16 kHz, 512/256 (32 ms window, 16 ms hop), c = 343 m/s. */
mcss_status mcss_config_create_default(mcss_config** out);
void mcss_config_free(mcss_config* config);
uint32_t mcss_config_sample_rate(const mcss_config* config);
uint32_t mcss_config_window_len(const mcss_config* config);
uint32_t mcss_config_hop_len(const mcss_config* config);
uint32_t mcss_config_n_freq_bins(const mcss_config* config);
double mcss_config_sound_speed(const mcss_config* config);

/* ------------------------------------------------------------------ */
/* Array geometry                                                      */

typedef struct mcss_geometry mcss_geometry;

/* Loads the JSON geometry file (positions in meters, 1-based pairs and
 * reference channel in the file; exposed 0-based through this API). */
mcss_status mcss_geometry_load(const char* path, mcss_geometry** out);
/* Built-in default: 15-mic uniform linear array, 4 cm spacing, x axis,
 * reference channel 0, 9 standard pairs. */
mcss_status mcss_geometry_create_default(mcss_geometry** out);
/* positions: mic_count x 3 doubles (x,y,z); pairs: pair_count x 2 0-based
 * indices (may be NULL when pair_count is 0). */
mcss_status mcss_geometry_create(const double* positions_m, uint32_t mic_count,
                                 const uint32_t* pairs, uint32_t pair_count,
                                 uint32_t reference_channel,
                                 mcss_geometry** out);
void mcss_geometry_free(mcss_geometry* geometry);
uint32_t mcss_geometry_mic_count(const mcss_geometry* geometry);
uint32_t mcss_geometry_pair_count(const mcss_geometry* geometry);
uint32_t mcss_geometry_reference_channel(const mcss_geometry* geometry);
mcss_status mcss_geometry_pair(const mcss_geometry* geometry, uint32_t index,
                               uint32_t* out_i, uint32_t* out_j);

/* ------------------------------------------------------------------ */
/* Waveforms                                                           */

typedef struct mcss_wave mcss_wave;

/* samples: channel-major, channels x length doubles. */
mcss_status mcss_wave_create(uint32_t channels, uint64_t length,
                             uint32_t sample_rate_hz, const double* samples,
                             mcss_wave** out);
void mcss_wave_free(mcss_wave* wave);
uint32_t mcss_wave_channels(const mcss_wave* wave);
uint64_t mcss_wave_length(const mcss_wave* wave);
uint32_t mcss_wave_sample_rate(const mcss_wave* wave);
/* Copies channels x length doubles, channel-major. */
mcss_status mcss_wave_copy_samples(const mcss_wave* wave, double* out);
mcss_status mcss_wave_select_channel(const mcss_wave* wave, uint32_t channel,
                                     mcss_wave** out);

typedef enum mcss_wav_encoding {
  MCSS_WAV_FLOAT32 = 0, /* bit-exact round trip */
  MCSS_WAV_PCM16 = 1    /* 1 LSB quantization */
} mcss_wav_encoding;

mcss_status mcss_wave_read_wav(const char* path, mcss_wave** out);
mcss_status mcss_wave_write_wav(const char* path, const mcss_wave* wave,
                                mcss_wav_encoding encoding);

/* ------------------------------------------------------------------ */
/* Tensors (BTF interchange)                                           */

typedef enum mcss_dtype {
  MCSS_DTYPE_REAL32 = 1,
  MCSS_DTYPE_COMPLEX32 = 2
} mcss_dtype;

typedef struct mcss_tensor mcss_tensor;

/* data: element_count floats for real, 2x interleaved re,im for complex. */
mcss_status mcss_tensor_create(mcss_dtype dtype, uint32_t ndim,
                               const uint64_t* dims, const float* data,
                               mcss_tensor** out);
void mcss_tensor_free(mcss_tensor* tensor);
mcss_dtype mcss_tensor_dtype(const mcss_tensor* tensor);
uint32_t mcss_tensor_ndim(const mcss_tensor* tensor);
mcss_status mcss_tensor_dims(const mcss_tensor* tensor, uint64_t* out);
uint64_t mcss_tensor_element_count(const mcss_tensor* tensor);
/* Borrowed pointer, valid while the tensor lives. */
const float* mcss_tensor_data(const mcss_tensor* tensor);
mcss_status mcss_tensor_read_btf(const char* path, mcss_tensor** out);
mcss_status mcss_tensor_write_btf(const char* path, const mcss_tensor* tensor);

/* ------------------------------------------------------------------ */
/* Spectrograms and STFT                                               */

typedef struct mcss_spec mcss_spec;

/* data: interleaved re,im doubles, index ((c * T) + t) * F + f. */
mcss_status mcss_spec_create(uint32_t channels, uint32_t frames, uint32_t bins,
                             const double* data, mcss_spec** out);
void mcss_spec_free(mcss_spec* spec);
uint32_t mcss_spec_channels(const mcss_spec* spec);
uint32_t mcss_spec_frames(const mcss_spec* spec);
uint32_t mcss_spec_bins(const mcss_spec* spec);
/* Copies 2 * channels * frames * bins doubles (interleaved re,im). */
mcss_status mcss_spec_copy_data(const mcss_spec* spec, double* out);
mcss_status mcss_spec_select_channel(const mcss_spec* spec, uint32_t channel,
                                     mcss_spec** out);

/* T = 1 + floor((len - window) / hop); no center padding. */
mcss_status mcss_stft(const mcss_wave* wave, const mcss_config* config,
                      mcss_spec** out);
/* Squared-window-normalized overlap-add; out_len < 0 keeps the natural
 * window + (T-1)*hop samples. */
mcss_status mcss_istft(const mcss_spec* spec, const mcss_config* config,
                       int64_t out_len, mcss_wave** out);

/* Succeeds iff spectrogram channels == geometry mic count. */
mcss_status mcss_validate_dims(const mcss_spec* spec,
                               const mcss_geometry* geometry);

/* ------------------------------------------------------------------ */
/* Spatial features                                                    */

/* out: n_freq_bins doubles; pd[f] = 2*pi*f*fs*d_ij*cos(theta)/(2*(F-1)*c)
 * with d_ij the signed along-look mic offset. */
mcss_status mcss_phase_delay(const mcss_geometry* geometry, uint32_t mic_i,
                             uint32_t mic_j, double theta_deg,
                             const mcss_config* config, double* out);
/* IPD map, (T,F) real tensor, values in (-pi, pi]. */
mcss_status mcss_compute_ipd(const mcss_spec* spec, uint32_t mic_i,
                             uint32_t mic_j, mcss_tensor** out);
/* Angle feature map, (T,F) real tensor, values in [-M, M]. */
mcss_status mcss_compute_angle_feature(const mcss_spec* spec,
                                       const mcss_geometry* geometry,
                                       double theta_deg,
                                       const mcss_config* config,
                                       mcss_tensor** out);
/* Steering phasors, (I,F) complex tensor, reference row = 1. */
mcss_status mcss_steering_vector(const mcss_geometry* geometry,
                                 double theta_deg, const mcss_config* config,
                                 mcss_tensor** out);
/* Argmax of mean angle feature over the grid; ties toward smaller angle;
 * all-zero input returns the smallest grid angle. */
mcss_status mcss_estimate_doa(const mcss_spec* spec,
                              const mcss_geometry* geometry,
                              const mcss_config* config,
                              const double* grid_deg, size_t grid_len,
                              double* out_theta_deg);

/* ------------------------------------------------------------------ */
/* Masks                                                               */

/* m = s/x, magnitude clipped to clip, phase kept; |x| < 1e-12 -> 0. */
mcss_status mcss_ideal_complex_mask(const mcss_spec* target_ref,
                                    const mcss_spec* mix_ref, double clip,
                                    mcss_tensor** out);
/* m = |s| / (|s| + |n|) in [0,1]; 0/0 -> 0. */
mcss_status mcss_ideal_ratio_mask(const mcss_spec* target_ref,
                                  const mcss_spec* interferer_ref,
                                  mcss_tensor** out);
/* y = m * x elementwise on a single-channel spectrogram. */
mcss_status mcss_apply_mask(const mcss_tensor* mask, const mcss_spec* mix_ref,
                            mcss_spec** out);

/* ------------------------------------------------------------------ */
/* Beamforming                                                         */

/* y[t,f] = (1/I) sum_i conj(steer[i,f]) x[i,t,f]; steering is computed
 * internally from the geometry and DOA (full double precision). */
mcss_status mcss_delay_and_sum(const mcss_spec* spec,
                               const mcss_geometry* geometry, double theta_deg,
                               const mcss_config* config, mcss_spec** out);
/* As above with caller-provided (I,F) complex steering. */
mcss_status mcss_delay_and_sum_steered(const mcss_spec* spec,
                                       const mcss_tensor* steering,
                                       mcss_spec** out);
/* y[t,f] = sum_i w[i,t,f] x[i,t,f], no conjugation; weights (I,T,F), or
 * (I,F) broadcast over frames. */
mcss_status mcss_filter_and_sum(const mcss_spec* spec,
                                const mcss_tensor* weights, mcss_spec** out);
/* Mask-weighted PSD, (F,I,I) complex tensor; Hermitian PSD per bin. */
mcss_status mcss_estimate_psd(const mcss_spec* spec, const mcss_tensor* mask,
                              mcss_tensor** out);
/* Trace-normalized MVDR solution, (I,F) complex tensor. */
mcss_status mcss_mvdr_weights(const mcss_tensor* psd_target,
                              const mcss_tensor* psd_interference,
                              uint32_t reference_channel, mcss_tensor** out);
/* y[t,f] = sum_i conj(w[i,f]) x[i,t,f]; weights (I,F). */
mcss_status mcss_apply_beamformer(const mcss_tensor* weights,
                                  const mcss_spec* spec, mcss_spec** out);
/* estimate_psd x2 -> mvdr_weights -> apply_beamformer in full double
 * precision (masks are the only float32 inputs). */
mcss_status mcss_mvdr_pipeline(const mcss_spec* spec,
                               const mcss_tensor* mask_target,
                               const mcss_tensor* mask_interference,
                               uint32_t reference_channel, mcss_spec** out);

/* ------------------------------------------------------------------ */
/* Metrics                                                             */

/* Scale-invariant SNR in dB (zero-mean, projection-based), clamped to
 * [-80, 80]. Both waves must be single-channel and equally long. */
mcss_status mcss_si_snr(const mcss_wave* estimate, const mcss_wave* reference,
                        double* out_db);
mcss_status mcss_snr(const mcss_wave* estimate, const mcss_wave* reference,
                     double* out_db);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct mcss_scenario mcss_scenario;
typedef struct mcss_bundle mcss_bundle;

mcss_status mcss_scenario_load(const char* path, mcss_scenario** out);
void mcss_scenario_free(mcss_scenario* scenario);
uint64_t mcss_scenario_seed(const mcss_scenario* scenario);

/* Deterministic given the scenario seed. */
mcss_status mcss_simulate(const mcss_scenario* scenario, mcss_bundle** out);
void mcss_bundle_free(mcss_bundle* bundle);

typedef enum mcss_bundle_part {
  MCSS_BUNDLE_MIXTURE = 0,
  MCSS_BUNDLE_TARGET = 1,
  MCSS_BUNDLE_INTERFERER = 2,
  MCSS_BUNDLE_NOISE = 3
} mcss_bundle_part;

/* Returns a fresh copy owned by the caller. */
mcss_status mcss_bundle_get_wave(const mcss_bundle* bundle,
                                 mcss_bundle_part part, mcss_wave** out);
/* Borrowed string, valid while the bundle lives. */
const char* mcss_bundle_meta_json(const mcss_bundle* bundle);
/* Writes mixture.wav / target.wav / interferer.wav (float32) + meta. */
mcss_status mcss_bundle_write(const mcss_bundle* bundle, const char* dir);

/* Far-field plane-wave rendering of a mono source; reference channel
 * equals the source exactly. */
mcss_status mcss_render_plane_wave(const mcss_wave* source,
                                   const mcss_geometry* geometry,
                                   double theta_deg, const mcss_config* config,
                                   mcss_wave** out);
/* Adds per-channel independent white Gaussian noise at snr_db vs the
 * first channel; deterministic per seed. */
mcss_status mcss_add_sensor_noise(const mcss_wave* wave, double snr_db,
                                  uint64_t seed, mcss_wave** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MCSS_H */
