#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsample/binary_io.hpp"
#include "gsample/common.hpp"

namespace gsample {

/// Canonical integer identifier of an edge or hyperedge: the sorted vertex
/// list v_1 < ... < v_d read as base-n digits, sum v_i * n^(i-1).
struct EdgeKey {
  u128 value = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

/// Keys are kept below 2^120 so that signed 128-bit moment sums cannot
/// overflow for any realistic stream length.
inline constexpr int kMaxKeyBits = 120;

/// Throws InputError if the vertices are not sorted/unique, exceed n, or the
/// encoding does not fit in kMaxKeyBits.
EdgeKey encode_edge(std::span<const VertexId> sorted_vertices, std::uint64_t n);
Hyperedge decode_edge(EdgeKey key, std::uint64_t n);

/// Arithmetic in the fingerprint field Z_q, q = 2^61 - 1.
namespace field61 {
inline constexpr std::uint64_t kModulus = (1ULL << 61) - 1;
std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t pow(std::uint64_t base, u128 exponent);
/// Reduces a signed count into the field.
std::uint64_t from_signed(std::int64_t v);
}  // namespace field61

/// Signed count of net updates. Only the total survives.
class CounterSketch {
 public:
  static constexpr SketchTag kTag = SketchTag::counter;

  void update(EdgeKey, int delta) { count_ += delta; }
  void merge(const CounterSketch& other) { count_ += other.count_; }

  std::int64_t count() const { return count_; }
  std::int64_t net_count() const { return count_; }
  bool is_zero() const { return count_ == 0; }

  void serialize(ByteWriter& out) const { out.i64(count_); }
  static CounterSketch deserialize(ByteReader& in);

  bool operator==(const CounterSketch&) const = default;

 private:
  std::int64_t count_ = 0;
};

struct UniqueQuery {
  enum class Status { none, found, corrupt };
  Status status = Status::none;
  EdgeKey key;
};

/// Counter plus XOR of key encodings plus XOR of keyed fingerprints.
/// Recovers the key when exactly one key is live with multiplicity one.
class XorUniqueSketch {
 public:
  static constexpr SketchTag kTag = SketchTag::xor_unique;

  explicit XorUniqueSketch(std::uint64_t seed = 0) : seed_(seed) {}

  void update(EdgeKey key, int delta);
  /// Throws MergeError when seeds differ.
  void merge(const XorUniqueSketch& other);

  /// found when count is 1 and the checksum matches the XOR accumulator;
  /// corrupt when count is 1 but the checksum disagrees; none otherwise.
  UniqueQuery query() const;

  std::uint64_t seed() const { return seed_; }
  std::int64_t net_count() const { return count_; }
  bool is_zero() const { return count_ == 0 && xor_acc_ == 0 && checksum_ == 0; }

  void serialize(ByteWriter& out) const;
  static XorUniqueSketch deserialize(ByteReader& in);

  bool operator==(const XorUniqueSketch&) const = default;

 private:
  std::uint64_t fingerprint(EdgeKey key) const;

  std::uint64_t seed_;
  std::int64_t count_ = 0;
  u128 xor_acc_ = 0;
  std::uint64_t checksum_ = 0;
};

/// c0 = sum delta, c1 = sum delta*key, fp = sum delta*z^key (mod q).
struct OneSparseRecoverer {
  std::int64_t c0 = 0;
  i128 c1 = 0;
  std::uint64_t fp = 0;

  /// `zpow` must be z^key in the fingerprint field.
  void apply(EdgeKey key, std::int64_t delta, std::uint64_t zpow);
  void add(const OneSparseRecoverer& other);
  bool is_zero() const { return c0 == 0 && c1 == 0 && fp == 0; }
  /// (key, multiplicity) if the content verifies as a single key.
  std::optional<std::pair<EdgeKey, std::int64_t>> decode(std::uint64_t z) const;

  bool operator==(const OneSparseRecoverer&) const = default;
};

/// Randomness and dimensions of an s-sparse recovery table: `rows` rows of
/// 2s one-sparse buckets, bucket chosen by a per-row hash of the key.
struct RecoveryShape {
  std::uint64_t seed = 0;
  std::uint64_t capacity = 1;  // s
  std::uint32_t rows = 1;

  std::uint64_t width() const { return 2 * capacity; }
  std::uint64_t z() const;
  std::uint64_t bucket(EdgeKey key, std::uint32_t row) const;

  bool operator==(const RecoveryShape&) const = default;
};

struct SparseDecode {
  /// false when peeling stalls (overfull table or hash collisions).
  bool ok = true;
  /// Decoded support sorted by key; multiplicities are nonzero.
  std::vector<std::pair<EdgeKey, std::int64_t>> entries;
  /// Decoded support larger than the sparsity budget s.
  bool overflow = false;
};

/// Bucket contents of a recovery table; only nonzero buckets are stored, so
/// two tables with equal logical state compare and serialize identically.
class RecoveryTable {
 public:
  void apply(const RecoveryShape& shape, EdgeKey key, std::int64_t delta, std::uint64_t zpow);
  void merge(const RecoveryTable& other);
  SparseDecode decode(const RecoveryShape& shape) const;

  bool empty() const { return buckets_.empty(); }
  std::size_t nonzero_buckets() const { return buckets_.size(); }
  std::int64_t row_total(const RecoveryShape& shape, std::uint32_t row) const;

  void serialize(ByteWriter& out) const;
  static RecoveryTable deserialize(ByteReader& in);

  bool operator==(const RecoveryTable&) const = default;

 private:
  void add_bucket(std::uint64_t id, const OneSparseRecoverer& delta);

  std::unordered_map<std::uint64_t, OneSparseRecoverer> buckets_;
};

/// Linear sketch recovering any support of size <= s with probability
/// >= 1 - delta (rows = ceil(log2(1/delta))).
class SparseRecovery {
 public:
  static constexpr SketchTag kTag = SketchTag::sparse_recovery;

  SparseRecovery(std::uint64_t capacity_s, double delta, std::uint64_t seed);
  SparseRecovery(RecoveryShape shape) : shape_(shape) {}

  void update(EdgeKey key, int delta);
  void merge(const SparseRecovery& other);
  SparseDecode decode() const { return table_.decode(shape_); }

  const RecoveryShape& shape() const { return shape_; }
  std::size_t nonzero_buckets() const { return table_.nonzero_buckets(); }
  bool is_zero() const { return table_.empty(); }

  void serialize(ByteWriter& out) const;
  static SparseRecovery deserialize(ByteReader& in);

  bool operator==(const SparseRecovery&) const = default;

 private:
  RecoveryShape shape_;
  RecoveryTable table_;
};

struct L0Query {
  enum class Status { empty, fail, found };
  Status status = Status::empty;
  EdgeKey key;
};

/// l0-sampler: nested geometric subsampling by a level hash plus an
/// s0-sparse recovery table per level, s0 = ceil(4 log2(1/delta)). Levels
/// are materialized on first touch and dropped when they return to zero.
/// The query decodes the highest nonzero level and returns the key of
/// minimum level hash, which is the minimum over the whole support.
class L0Sampler {
 public:
  static constexpr SketchTag kTag = SketchTag::l0_sampler;
  static constexpr std::uint32_t kMaxLevel = 63;

  explicit L0Sampler(std::uint64_t seed = 0, double delta = 0.01);

  void update(EdgeKey key, int delta);
  void merge(const L0Sampler& other);
  L0Query query() const;

  std::uint64_t seed() const { return shape_.seed; }
  double delta() const { return delta_; }
  std::uint32_t sparsity() const { return static_cast<std::uint32_t>(shape_.capacity); }
  std::size_t active_levels() const { return levels_.size(); }
  std::size_t nonzero_buckets() const;
  /// Sum of deltas applied; read from level 0, which every key enters.
  std::int64_t net_count() const;
  bool is_zero() const { return levels_.empty(); }

  void serialize(ByteWriter& out) const;
  static L0Sampler deserialize(ByteReader& in);

  bool operator==(const L0Sampler&) const = default;

 private:
  std::uint64_t level_hash(EdgeKey key) const;
  std::uint32_t level_of(EdgeKey key) const;

  RecoveryShape shape_;
  double delta_;
  std::map<std::uint32_t, RecoveryTable> levels_;
};

}  // namespace gsample
