#include "gsample/common.hpp"

#include <algorithm>
#include <string>

namespace gsample {

Hyperedge canonical_edge(Hyperedge vertices, std::uint64_t n) {
  if (vertices.empty()) throw InputError("edge has no vertices");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw InputError("edge repeats a vertex");
  if (vertices.back() >= n)
    throw InputError("vertex id " + std::to_string(vertices.back()) + " out of range [0, " + std::to_string(n) + ")");
  return vertices;
}

}  // namespace gsample
