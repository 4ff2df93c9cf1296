#include "graphcorr/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace graphcorr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::size_t> parse_index(std::string_view token) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

// Recognizes "# n=<count>" (whitespace tolerant). Other comments yield nullopt.
std::optional<std::size_t> header_count(std::string_view body, std::size_t line_no) {
  body = trim(body);
  if (body.size() < 2 || body[0] != 'n') return std::nullopt;
  body = trim(body.substr(1));
  if (body.empty() || body[0] != '=') return std::nullopt;
  const auto count = parse_index(trim(body.substr(1)));
  if (!count) throw ParseError(line_no, "malformed vertex-count header");
  return count;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

AdjacencyMatrix parse_edge_list(std::istream& in) {
  std::optional<std::size_t> declared_n;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t max_index = 0;
  bool any_edge = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto n = header_count(line.substr(1), line_no)) {
        if (declared_n && *declared_n != *n) throw ParseError(line_no, "conflicting vertex-count headers");
        declared_n = n;
      }
      continue;
    }
    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) throw ParseError(line_no, "expected two vertex indices");
    const auto u = parse_index(trim(line.substr(0, split)));
    const auto v = parse_index(trim(line.substr(split)));
    if (!u || !v) throw ParseError(line_no, "expected two non-negative integer vertex indices");
    if (*u == *v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(*u));
    edges.emplace_back(std::min(*u, *v), std::max(*u, *v));
    max_index = std::max(max_index, std::max(*u, *v));
    any_edge = true;
    if (declared_n && max_index >= *declared_n) {
      throw ParseError(line_no, "vertex index " + std::to_string(max_index) + " >= n=" +
                                    std::to_string(*declared_n));
    }
  }
  if (in.bad()) throw ParseError(0, "read error");

  const std::size_t n = declared_n ? *declared_n : (any_edge ? max_index + 1 : 0);
  if (declared_n && any_edge && max_index >= n) {
    throw ParseError(0, "vertex index " + std::to_string(max_index) + " >= n=" + std::to_string(n));
  }
  AdjacencyMatrix g(n);
  for (const auto& [u, v] : edges) g.set_edge(u, v);
  return g;
}

AdjacencyMatrix read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& g) {
  out << "# n=" << g.size() << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto row = g.row(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (row[j]) out << i << ' ' << j << '\n';
    }
  }
}

void write_edge_list(const std::string& path, const AdjacencyMatrix& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_edge_list(out, g);
}

}  // namespace graphcorr
