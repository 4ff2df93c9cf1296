#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "graphcorr/matrix.hpp"

namespace graphcorr {

/// Malformed edge-list input. `line()` is 1-based; 0 means "not tied to a line".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Edge-list text format:
//   # n=<count>        optional header fixing the vertex count
//   # anything else    comment
//   u v                one undirected edge per line, 0-indexed
// Without a header the vertex count is max index + 1. Duplicate and reversed
// edges collapse into one; self-loops are rejected.

AdjacencyMatrix parse_edge_list(std::istream& in);
AdjacencyMatrix read_edge_list(const std::string& path);

/// Writes the header followed by edges (u < v) in lexicographic order, so
/// output is canonical for a given graph.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& g);
void write_edge_list(const std::string& path, const AdjacencyMatrix& g);

}  // namespace graphcorr
