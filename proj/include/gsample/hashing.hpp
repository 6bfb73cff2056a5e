#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsample/binary_io.hpp"
#include "gsample/common.hpp"

namespace gsample {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t x);

/// Smallest prime strictly greater than x.
std::uint64_t next_prime_above(std::uint64_t x);

/// Member of the t-wise independent family
///   x -> ((sum_i coeff_i * x^i) mod p) mod b
/// over the prime field Z_p. Immutable once built.
class HashFn {
 public:
  /// Explicit construction. Requires p prime, p > b, p >= domain, and every
  /// coefficient in [0, p); at least two coefficients.
  HashFn(std::uint64_t prime_modulus, std::vector<std::uint64_t> coefficients, std::uint64_t range_b,
         std::uint64_t domain_n);

  std::uint32_t eval(VertexId x) const;
  /// Colors of a sorted vertex list as a sorted, duplicate-free set.
  ColorSet color_set(std::span<const VertexId> vertices) const;
  /// As color_set, reusing `out`'s storage.
  void color_set(std::span<const VertexId> vertices, ColorSet& out) const;

  std::uint64_t prime_modulus() const { return prime_; }
  const std::vector<std::uint64_t>& coefficients() const { return coeffs_; }
  std::uint64_t range() const { return range_; }
  std::uint64_t domain() const { return domain_; }
  std::uint32_t independence() const { return static_cast<std::uint32_t>(coeffs_.size()); }

  void serialize(ByteWriter& out) const;
  static HashFn deserialize(ByteReader& in);

  bool operator==(const HashFn&) const = default;

 private:
  std::uint64_t prime_;
  std::vector<std::uint64_t> coeffs_;
  std::uint64_t range_;
  std::uint64_t domain_;
  // floor((2^64 - 1) / p) for Barrett reduction when p < 2^31.
  std::uint64_t barrett_ = 0;
};

/// Draws a degree-(t-1) polynomial with coefficients from SplitMix64(seed)
/// over the smallest prime exceeding max(n, b).
HashFn new_hash(std::uint64_t seed, std::uint32_t t, std::uint64_t n, std::uint64_t b);

}  // namespace gsample
