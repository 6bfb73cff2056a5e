#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsample {

using VertexId = std::uint64_t;
/// Sorted, duplicate-free vertex list. Arity 2 for ordinary edges.
using Hyperedge = std::vector<VertexId>;
using ColorSet = std::vector<std::uint32_t>;

using u128 = unsigned __int128;
using i128 = __int128;

/// One stream token.
struct EdgeUpdate {
  Hyperedge vertices;
  double weight = 1.0;
  int delta = +1;

  bool operator==(const EdgeUpdate&) const = default;
};

/// A dynamic stream over the fixed vertex set [0, n).
struct Stream {
  std::uint64_t n = 0;
  std::uint32_t max_arity = 2;
  bool weighted = false;
  std::vector<EdgeUpdate> updates;

  bool operator==(const Stream&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed update, out-of-range vertex, invalid parameter.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Attempt to merge sketches built with different parameters or seeds.
class MergeError : public Error {
 public:
  using Error::Error;
};

/// Malformed stream text or sketch file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Sorts and validates a vertex list; throws InputError on duplicates,
/// empty lists or ids >= n.
Hyperedge canonical_edge(Hyperedge vertices, std::uint64_t n);

}  // namespace gsample
