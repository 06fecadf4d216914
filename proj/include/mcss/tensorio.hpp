// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MCSS_TENSORIO_HPP_
#define MCSS_TENSORIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "mcss/spatial.hpp"
#include "mcss/types.hpp"

namespace mcss {

// BTF: minimal little-endian binary tensor interchange format.
//
//   offset  size  field
//   0       4     magic "BTF1"
//   4       1     dtype: 1 = real float32, 2 = complex float32 (re,im)
//   5       1     ndim: 1..4
//   6       2     reserved, must be zero
//   8       8*n   dims, unsigned 64-bit little-endian
//   ...           payload: row-major float32, little-endian; complex
//                 elements interleaved re,im. Payload size must equal
//                 product(dims) * element size exactly.
//
// Dim orders used by this repo: mask (T,F); weights (I,F) or (I,T,F);
// features (T,F); PSD sets (F,I,I).

enum class TensorDtype : uint8_t { kReal32 = 1, kComplex32 = 2 };

struct Tensor {
  TensorDtype dtype = TensorDtype::kReal32;
  std::vector<uint64_t> dims;
  std::vector<float> data;  // element_count() floats, or 2x for complex

  uint64_t element_count() const;
  uint32_t floats_per_element() const {
    return dtype == TensorDtype::kComplex32 ? 2 : 1;
  }
  void Validate() const;  // dims/payload consistency + finiteness
};

Tensor ReadBtf(const std::string& path);
void WriteBtf(const std::string& path, const Tensor& tensor);

// WAV I/O: RIFF/WAVE, PCM 16-bit or IEEE float 32-bit, any channel count.
// float32 round-trips are bit-exact; the 16-bit path quantizes to 1 LSB.
enum class WavEncoding { kFloat32, kPcm16 };

MultiChannelWaveform ReadWav(const std::string& path);
void WriteWav(const std::string& path, const MultiChannelWaveform& wave,
              WavEncoding encoding = WavEncoding::kFloat32);

// Conversions between the float32 interchange tensors and the double
// precision domain types.
Tensor TensorFromMask(const TimeFrequencyMask& mask);
TimeFrequencyMask MaskFromTensor(const Tensor& tensor);
Tensor TensorFromWeights(const BeamformerWeights& weights);
BeamformerWeights WeightsFromTensor(const Tensor& tensor);
Tensor TensorFromFeatureMap(const FeatureMap& map);
Tensor TensorFromSteering(const SteeringMatrix& steering);

}  // namespace mcss

#endif  // MCSS_TENSORIO_HPP_
