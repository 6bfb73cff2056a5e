#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "gsample/common.hpp"

namespace gsample {

/// Fixed-width little-endian encoder used by every sketch serializer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void u128(gsample::u128 v) {
    u64(static_cast<std::uint64_t>(v));
    u64(static_cast<std::uint64_t>(v >> 64));
  }
  void i128(gsample::i128 v) { u128(static_cast<gsample::u128>(v)); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
  }
  void raw(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

  const std::vector<std::uint8_t>& bytes() const& { return buf_; }
  std::vector<std::uint8_t> take() && { return std::move(buf_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  std::vector<std::uint8_t> buf_;
};

/// Bounds-checked reader; throws FormatError on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
  gsample::u128 u128() {
    const gsample::u128 lo = get(8);
    const gsample::u128 hi = get(8);
    return lo | (hi << 64);
  }
  gsample::i128 i128() { return static_cast<gsample::i128>(u128()); }
  double f64() {
    const std::uint64_t bits = get(8);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str() {
    const std::uint32_t len = u32();
    need(len);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), len);
    pos_ += len;
    return s;
  }
  /// Reads a length that must not exceed what is left in the buffer
  /// assuming each element takes at least `min_bytes` bytes.
  std::uint64_t count(std::size_t min_bytes) {
    const std::uint64_t n = u64();
    if (min_bytes > 0 && n > remaining() / min_bytes) throw FormatError("sketch data: implausible element count");
    return n;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw FormatError("sketch data truncated");
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

/// Envelope shared by every serialized sketch: magic, format version, type
/// tag. The payload that follows is type specific.
enum class SketchTag : std::uint8_t {
  counter = 1,
  xor_unique = 2,
  l0_sampler = 3,
  sparse_recovery = 4,
  sample_sketch = 5,
  pipeline = 6,
};

inline constexpr std::uint8_t kMagic[4] = {'G', 'S', 'M', 'P'};
inline constexpr std::uint16_t kFormatVersion = 1;

inline void write_envelope(ByteWriter& out, SketchTag tag) {
  out.raw(kMagic);
  out.u16(kFormatVersion);
  out.u8(static_cast<std::uint8_t>(tag));
}

/// True if the bytes start with the sketch magic.
inline bool has_sketch_magic(std::span<const std::uint8_t> data) {
  return data.size() >= 4 && std::memcmp(data.data(), kMagic, 4) == 0;
}

inline void read_envelope(ByteReader& in, SketchTag expected) {
  for (auto m : kMagic)
    if (in.u8() != m) throw FormatError("not a sketch file (bad magic)");
  const auto version = in.u16();
  if (version != kFormatVersion) throw FormatError("unsupported sketch format version " + std::to_string(version));
  const auto tag = in.u8();
  if (tag != static_cast<std::uint8_t>(expected)) throw FormatError("unexpected sketch type tag " + std::to_string(tag));
}

/// Whole-object helpers for any type with serialize/deserialize and a tag.
template <typename T>
std::vector<std::uint8_t> to_bytes(const T& obj) {
  ByteWriter out;
  write_envelope(out, T::kTag);
  obj.serialize(out);
  return std::move(out).take();
}

template <typename T>
T from_bytes(std::span<const std::uint8_t> data) {
  ByteReader in(data);
  read_envelope(in, T::kTag);
  T obj = T::deserialize(in);
  if (!in.done()) throw FormatError("trailing bytes after sketch payload");
  return obj;
}

}  // namespace gsample
