// Copyright 2026 The mcss authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "mcss/tensorio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace mcss {

namespace {

static_assert(std::endian::native == std::endian::little,
              "little-endian host assumed for BTF/WAV I/O");

constexpr uint64_t kMaxElements = uint64_t{1} << 32;  // allocation guard

std::vector<char> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<char> bytes(static_cast<size_t>(size));
  if (size > 0) in.read(bytes.data(), size);
  if (!in) {
    throw Error(ErrorCode::kIoError, "short read from " + path);
  }
  return bytes;
}

class ByteReader {
 public:
  ByteReader(const std::vector<char>& bytes, const std::string& path)
      : bytes_(bytes), path_(path) {}

  size_t offset() const { return offset_; }
  size_t remaining() const { return bytes_.size() - offset_; }

  template <typename T>
  T Read() {
    Require(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return v;
  }

  void ReadRaw(void* dst, size_t n) {
    Require(n);
    std::memcpy(dst, bytes_.data() + offset_, n);
    offset_ += n;
  }

  void Skip(size_t n) {
    Require(n);
    offset_ += n;
  }

  void Require(size_t n) const {
    if (remaining() < n) {
      throw Error(ErrorCode::kTruncated,
                  path_ + ": need " + std::to_string(n) + " bytes at offset " +
                      std::to_string(offset_) + ", have " +
                      std::to_string(remaining()));
    }
  }

 private:
  const std::vector<char>& bytes_;
  std::string path_;
  size_t offset_ = 0;
};

}  // namespace

uint64_t Tensor::element_count() const {
  uint64_t n = 1;
  for (uint64_t d : dims) n *= d;
  return n;
}

void Tensor::Validate() const {
  if (dtype != TensorDtype::kReal32 && dtype != TensorDtype::kComplex32) {
    throw Error(ErrorCode::kUnsupportedDtype, "unknown tensor dtype");
  }
  if (dims.empty() || dims.size() > 4) {
    throw Error(ErrorCode::kDimsMismatch,
                "tensor ndim must be in [1, 4], got " +
                    std::to_string(dims.size()));
  }
  for (uint64_t d : dims) {
    if (d == 0) {
      throw Error(ErrorCode::kDimsMismatch, "tensor dims must be >= 1");
    }
  }
  if (data.size() != element_count() * floats_per_element()) {
    throw Error(ErrorCode::kDimsMismatch,
                "tensor payload size does not match dims");
  }
  for (float v : data) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "tensor contains a non-finite value");
    }
  }
}

Tensor ReadBtf(const std::string& path) {
  const std::vector<char> bytes = ReadFileBytes(path);
  ByteReader r(bytes, path);

  char magic[4];
  r.ReadRaw(magic, 4);
  if (std::memcmp(magic, "BTF1", 4) != 0) {
    throw Error(ErrorCode::kBadMagic, path + ": bad magic");
  }
  const uint8_t dtype = r.Read<uint8_t>();
  const uint8_t ndim = r.Read<uint8_t>();
  const uint16_t reserved = r.Read<uint16_t>();
  if (dtype != 1 && dtype != 2) {
    throw Error(ErrorCode::kUnsupportedDtype,
                path + ": unsupported dtype byte " + std::to_string(dtype));
  }
  if (ndim < 1 || ndim > 4) {
    throw Error(ErrorCode::kDimsMismatch,
                path + ": ndim must be in [1, 4], got " + std::to_string(ndim));
  }
  if (reserved != 0) {
    throw Error(ErrorCode::kCorruptFile, path + ": reserved bytes not zero");
  }

  Tensor t;
  t.dtype = static_cast<TensorDtype>(dtype);
  uint64_t elements = 1;
  for (uint8_t d = 0; d < ndim; ++d) {
    const uint64_t dim = r.Read<uint64_t>();
    if (dim == 0 || elements > kMaxElements / std::max<uint64_t>(dim, 1)) {
      throw Error(ErrorCode::kDimsMismatch,
                  path + ": dim " + std::to_string(d) + " invalid or too large");
    }
    t.dims.push_back(dim);
    elements *= dim;
  }
  // Bound the allocation against the actual payload before reserving.
  const uint64_t payload_floats = elements * t.floats_per_element();
  const uint64_t payload_bytes = payload_floats * sizeof(float);
  if (r.remaining() != payload_bytes) {
    throw Error(r.remaining() < payload_bytes ? ErrorCode::kTruncated
                                              : ErrorCode::kDimsMismatch,
                path + ": payload is " + std::to_string(r.remaining()) +
                    " bytes at offset " + std::to_string(r.offset()) +
                    ", header implies " + std::to_string(payload_bytes));
  }
  t.data.resize(payload_floats);
  r.ReadRaw(t.data.data(), payload_bytes);
  t.Validate();
  return t;
}

void WriteBtf(const std::string& path, const Tensor& tensor) {
  tensor.Validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
  out.write("BTF1", 4);
  const uint8_t dtype = static_cast<uint8_t>(tensor.dtype);
  const uint8_t ndim = static_cast<uint8_t>(tensor.dims.size());
  const uint16_t reserved = 0;
  out.write(reinterpret_cast<const char*>(&dtype), 1);
  out.write(reinterpret_cast<const char*>(&ndim), 1);
  out.write(reinterpret_cast<const char*>(&reserved), 2);
  for (uint64_t d : tensor.dims) {
    out.write(reinterpret_cast<const char*>(&d), 8);
  }
  out.write(reinterpret_cast<const char*>(tensor.data.data()),
            static_cast<std::streamsize>(tensor.data.size() * sizeof(float)));
  if (!out) {
    throw Error(ErrorCode::kIoError, "write failed for " + path);
  }
}

MultiChannelWaveform ReadWav(const std::string& path) {
  const std::vector<char> bytes = ReadFileBytes(path);
  ByteReader r(bytes, path);

  char riff[4];
  r.ReadRaw(riff, 4);
  if (std::memcmp(riff, "RIFF", 4) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat, path + ": not a RIFF file");
  }
  r.Skip(4);  // riff size, trust chunk walking instead
  char wave[4];
  r.ReadRaw(wave, 4);
  if (std::memcmp(wave, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat, path + ": not a WAVE file");
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  std::vector<char> frames;

  while (r.remaining() >= 8) {
    char id[4];
    r.ReadRaw(id, 4);
    const uint32_t size = r.Read<uint32_t>();
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) {
        throw Error(ErrorCode::kCorruptFile,
                    path + ": fmt chunk too small at offset " +
                        std::to_string(r.offset()));
      }
      format = r.Read<uint16_t>();
      channels = r.Read<uint16_t>();
      sample_rate = r.Read<uint32_t>();
      r.Skip(6);  // byte rate + block align
      bits = r.Read<uint16_t>();
      r.Skip(size - 16 + (size % 2));
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      r.Require(size);
      frames.resize(size);
      r.ReadRaw(frames.data(), size);
      if (size % 2) r.Skip(1);
      break;
    } else {
      r.Skip(size + (size % 2));  // LIST, fact, etc.
    }
  }

  if (!have_fmt || frames.empty()) {
    throw Error(ErrorCode::kCorruptFile,
                path + ": missing fmt or data chunk (offset " +
                    std::to_string(r.offset()) + ")");
  }
  if (channels == 0 || sample_rate == 0) {
    throw Error(ErrorCode::kCorruptFile, path + ": zero channels or rate");
  }

  const bool is_pcm16 = format == 1 && bits == 16;
  const bool is_float32 = format == 3 && bits == 32;
  if (!is_pcm16 && !is_float32) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path + ": only PCM 16-bit and IEEE float 32-bit supported, "
                       "got format " +
                    std::to_string(format) + " / " + std::to_string(bits) +
                    " bits");
  }

  const size_t bytes_per_sample = is_pcm16 ? 2 : 4;
  const size_t frame_bytes = bytes_per_sample * channels;
  if (frames.size() % frame_bytes != 0) {
    throw Error(ErrorCode::kCorruptFile,
                path + ": data chunk size " + std::to_string(frames.size()) +
                    " is not a whole number of frames");
  }
  const uint64_t n = frames.size() / frame_bytes;
  MultiChannelWaveform out(channels, n, sample_rate);
  if (is_pcm16) {
    const int16_t* src = reinterpret_cast<const int16_t*>(frames.data());
    for (uint64_t i = 0; i < n; ++i) {
      for (uint16_t c = 0; c < channels; ++c) {
        out.at(c, i) = src[i * channels + c] / 32768.0;
      }
    }
  } else {
    const float* src = reinterpret_cast<const float*>(frames.data());
    for (uint64_t i = 0; i < n; ++i) {
      for (uint16_t c = 0; c < channels; ++c) {
        out.at(c, i) = src[i * channels + c];
      }
    }
  }
  out.RequireFinite();
  return out;
}

void WriteWav(const std::string& path, const MultiChannelWaveform& wave,
              WavEncoding encoding) {
  wave.RequireFinite();
  const uint16_t channels = static_cast<uint16_t>(wave.channels());
  const uint64_t n = wave.length();
  const bool f32 = encoding == WavEncoding::kFloat32;
  const uint16_t bits = f32 ? 32 : 16;
  const uint16_t block_align = channels * (bits / 8);
  const uint64_t data_bytes = n * block_align;
  // fact chunk is required for non-PCM formats.
  const uint64_t riff_size = 4 + (8 + 16) + (f32 ? 8 + 4 : 0) + 8 + data_bytes;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
  auto put16 = [&](uint16_t v) { out.write(reinterpret_cast<char*>(&v), 2); };
  auto put32 = [&](uint32_t v) { out.write(reinterpret_cast<char*>(&v), 4); };

  out.write("RIFF", 4);
  put32(static_cast<uint32_t>(riff_size));
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put32(16);
  put16(f32 ? 3 : 1);
  put16(channels);
  put32(wave.sample_rate_hz());
  put32(wave.sample_rate_hz() * block_align);
  put16(block_align);
  put16(bits);
  if (f32) {
    out.write("fact", 4);
    put32(4);
    put32(static_cast<uint32_t>(n));
  }
  out.write("data", 4);
  put32(static_cast<uint32_t>(data_bytes));

  if (f32) {
    std::vector<float> buf(channels);
    for (uint64_t i = 0; i < n; ++i) {
      for (uint16_t c = 0; c < channels; ++c) {
        buf[c] = static_cast<float>(wave.at(c, i));
      }
      out.write(reinterpret_cast<const char*>(buf.data()),
                channels * sizeof(float));
    }
  } else {
    std::vector<int16_t> buf(channels);
    for (uint64_t i = 0; i < n; ++i) {
      for (uint16_t c = 0; c < channels; ++c) {
        const double v = std::clamp(wave.at(c, i), -1.0, 32767.0 / 32768.0);
        buf[c] = static_cast<int16_t>(std::lrint(v * 32768.0));
      }
      out.write(reinterpret_cast<const char*>(buf.data()),
                channels * sizeof(int16_t));
    }
  }
  if (!out) {
    throw Error(ErrorCode::kIoError, "write failed for " + path);
  }
}

Tensor TensorFromMask(const TimeFrequencyMask& mask) {
  Tensor t;
  t.dtype = TensorDtype::kComplex32;
  t.dims = {mask.frames(), mask.bins()};
  t.data.reserve(mask.data().size() * 2);
  for (const cdouble& v : mask.data()) {
    t.data.push_back(static_cast<float>(v.real()));
    t.data.push_back(static_cast<float>(v.imag()));
  }
  return t;
}

TimeFrequencyMask MaskFromTensor(const Tensor& tensor) {
  tensor.Validate();
  if (tensor.dims.size() != 2) {
    throw Error(ErrorCode::kDimsMismatch,
                "mask tensor must be 2-D (T, F), got " +
                    std::to_string(tensor.dims.size()) + "-D");
  }
  TimeFrequencyMask mask(static_cast<uint32_t>(tensor.dims[0]),
                         static_cast<uint32_t>(tensor.dims[1]));
  const bool cplx = tensor.dtype == TensorDtype::kComplex32;
  for (size_t i = 0; i < mask.data().size(); ++i) {
    mask.data()[i] = cplx ? cdouble{tensor.data[2 * i], tensor.data[2 * i + 1]}
                          : cdouble{tensor.data[i], 0.0};
  }
  return mask;
}

Tensor TensorFromWeights(const BeamformerWeights& weights) {
  Tensor t;
  t.dtype = TensorDtype::kComplex32;
  if (weights.kind() == WeightsKind::kTimeInvariant) {
    t.dims = {weights.channels(), weights.bins()};
  } else {
    t.dims = {weights.channels(), weights.frames(), weights.bins()};
  }
  t.data.reserve(weights.data().size() * 2);
  for (const cdouble& v : weights.data()) {
    t.data.push_back(static_cast<float>(v.real()));
    t.data.push_back(static_cast<float>(v.imag()));
  }
  return t;
}

BeamformerWeights WeightsFromTensor(const Tensor& tensor) {
  tensor.Validate();
  if (tensor.dtype != TensorDtype::kComplex32) {
    throw Error(ErrorCode::kUnsupportedDtype,
                "weights tensor must be complex float32");
  }
  BeamformerWeights w;
  if (tensor.dims.size() == 2) {
    w = BeamformerWeights(static_cast<uint32_t>(tensor.dims[0]),
                          static_cast<uint32_t>(tensor.dims[1]));
  } else if (tensor.dims.size() == 3) {
    w = BeamformerWeights(static_cast<uint32_t>(tensor.dims[0]),
                          static_cast<uint32_t>(tensor.dims[1]),
                          static_cast<uint32_t>(tensor.dims[2]));
  } else {
    throw Error(ErrorCode::kDimsMismatch,
                "weights tensor must be (I, F) or (I, T, F)");
  }
  for (size_t i = 0; i < w.data().size(); ++i) {
    w.data()[i] = cdouble{tensor.data[2 * i], tensor.data[2 * i + 1]};
  }
  return w;
}

Tensor TensorFromFeatureMap(const FeatureMap& map) {
  Tensor t;
  t.dtype = TensorDtype::kReal32;
  t.dims = {map.frames, map.bins};
  t.data.reserve(map.data.size());
  for (double v : map.data) t.data.push_back(static_cast<float>(v));
  return t;
}

Tensor TensorFromSteering(const SteeringMatrix& steering) {
  Tensor t;
  t.dtype = TensorDtype::kComplex32;
  t.dims = {steering.channels, steering.bins};
  t.data.reserve(steering.data.size() * 2);
  for (const cdouble& v : steering.data) {
    t.data.push_back(static_cast<float>(v.real()));
    t.data.push_back(static_cast<float>(v.imag()));
  }
  return t;
}

}  // namespace mcss
