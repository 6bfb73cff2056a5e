#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gsample/common.hpp"

namespace gsample {

struct StreamHeader {
  std::uint64_t n = 0;
  std::uint32_t max_arity = 2;
  bool weighted = false;
};

/// Line-at-a-time reader for the text stream format:
///
///   # comment
///   n 500 arity 2 weighted 0
///   + 3 7
///   - 3 7 2.5
///   + 1 2 3 4 @1.5
///
/// A weight is written as `@w`, or as a trailing non-integer token, or, in
/// weighted streams of arity 2, as a third token. Errors carry the line number.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in);

  const StreamHeader& header() const { return header_; }
  /// False at end of input.
  bool next(EdgeUpdate& out);
  std::size_t line() const { return line_; }

 private:
  bool next_content_line(std::string& text);
  [[noreturn]] void fail(const std::string& why) const;

  std::istream& in_;
  StreamHeader header_;
  std::size_t line_ = 0;
  std::string pending_text_;
  bool pending_ = false;
};

Stream parse_stream(std::istream& in);
Stream parse_stream_text(const std::string& text);
Stream read_stream_file(const std::string& path);

void write_stream(std::ostream& out, const Stream& s);
std::string format_stream(const Stream& s);
void write_stream_file(const std::string& path, const Stream& s);

struct GeneratorSpec {
  /// planted_matching, planted_hitting_set, bounded_arboricity, tree, grid,
  /// bipartite_complete, random_gnm, layered, perfect_matching.
  std::string family = "planted_matching";
  std::uint64_t n = 100;
  std::uint32_t k = 4;
  std::uint32_t d = 3;
  std::uint32_t nu = 1;
  /// Side sizes for bipartite_complete; edge count for random_gnm.
  std::uint64_t a = 0, b = 0, m = 0;
  /// Fraction of inserts that are later deleted.
  double churn = 0;
  /// Number of distinct weights 1..W; 0 or 1 for unweighted.
  std::uint32_t weights = 0;
  std::uint64_t seed = 1;
};

struct Generated {
  Stream stream;
  /// Optimum values known by construction ("matching", "vertex_cover",
  /// "hitting_set", "arboricity_bound").
  std::map<std::string, double> known;
};

/// Throws InputError for unknown families or infeasible sizes.
Generated generate(const GeneratorSpec& spec);

}  // namespace gsample
