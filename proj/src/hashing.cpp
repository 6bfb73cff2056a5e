#include "gsample/hashing.hpp"

#include <algorithm>
#include <string>

#include "gsample/rng.hpp"

namespace gsample {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= x;
    if (a == 0) continue;
    std::uint64_t y = powmod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_above(std::uint64_t x) {
  std::uint64_t c = x + 1;
  while (!is_prime(c)) ++c;
  return c;
}

HashFn::HashFn(std::uint64_t prime_modulus, std::vector<std::uint64_t> coefficients, std::uint64_t range_b,
               std::uint64_t domain_n)
    : prime_(prime_modulus), coeffs_(std::move(coefficients)), range_(range_b), domain_(domain_n) {
  if (!is_prime(prime_)) throw InputError("hash modulus is not prime");
  if (range_ == 0 || range_ >= prime_) throw InputError("hash range must be in [1, p)");
  if (range_ > (1ULL << 32)) throw InputError("hash range exceeds 2^32 colors");
  if (domain_ == 0 || domain_ > prime_) throw InputError("hash domain must be in [1, p]");
  if (coeffs_.size() < 2) throw InputError("hash independence must be at least 2");
  for (auto c : coeffs_)
    if (c >= prime_) throw InputError("hash coefficient outside the field");
  if (prime_ <= (1ULL << 31)) barrett_ = ~std::uint64_t{0} / prime_;
}

std::uint32_t HashFn::eval(VertexId x) const {
  if (x >= domain_) throw InputError("hash input " + std::to_string(x) + " outside domain");
  // Horner, highest degree first.
  std::uint64_t acc = 0;
  if (barrett_ != 0) {
    // acc, x < 2^31, so acc * x + c < 2^63 and the quotient estimate is
    // short by at most two.
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const std::uint64_t v = acc * x + *it;
      const auto q = static_cast<std::uint64_t>((static_cast<u128>(v) * barrett_) >> 64);
      acc = v - q * prime_;
      while (acc >= prime_) acc -= prime_;
    }
    return static_cast<std::uint32_t>(acc % range_);
  }
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = static_cast<std::uint64_t>((static_cast<u128>(acc) * x + *it) % prime_);
  }
  return static_cast<std::uint32_t>(acc % range_);
}

ColorSet HashFn::color_set(std::span<const VertexId> vertices) const {
  ColorSet out;
  color_set(vertices, out);
  return out;
}

void HashFn::color_set(std::span<const VertexId> vertices, ColorSet& out) const {
  out.clear();
  for (auto v : vertices) out.push_back(eval(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

void HashFn::serialize(ByteWriter& out) const {
  out.u64(prime_);
  out.u64(range_);
  out.u64(domain_);
  out.u32(static_cast<std::uint32_t>(coeffs_.size()));
  for (auto c : coeffs_) out.u64(c);
}

HashFn HashFn::deserialize(ByteReader& in) {
  const auto p = in.u64();
  const auto b = in.u64();
  const auto n = in.u64();
  const auto t = in.u32();
  if (t > in.remaining() / 8) throw FormatError("hash function: implausible coefficient count");
  std::vector<std::uint64_t> coeffs(t);
  for (auto& c : coeffs) c = in.u64();
  try {
    return HashFn(p, std::move(coeffs), b, n);
  } catch (const InputError& e) {
    throw FormatError(std::string("hash function: ") + e.what());
  }
}

HashFn new_hash(std::uint64_t seed, std::uint32_t t, std::uint64_t n, std::uint64_t b) {
  if (t < 2) throw InputError("hash independence must be at least 2");
  if (n == 0 || b == 0) throw InputError("hash domain and range must be positive");
  const std::uint64_t p = next_prime_above(std::max(n, b));
  SplitMix64 gen(seed);
  std::vector<std::uint64_t> coeffs(t);
  for (auto& c : coeffs) c = gen.below(p);
  return HashFn(p, std::move(coeffs), b, n);
}

}  // namespace gsample
