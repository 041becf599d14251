#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coopbandits/graph.hpp"

namespace coopbandits {

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline long long parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected integer for " + what + ", got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected integer for " + what + ", got '" + s + "'");
  return value;
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected number for " + what + ", got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected number for " + what + ", got '" + s + "'");
  return value;
}

inline int positive_count(const std::string& s, const std::string& what) {
  const auto v = parse_int(s, what);
  if (v < 1 || v > 1'000'000) throw std::invalid_argument(what + " must be in [1, 1e6]");
  return static_cast<int>(v);
}

}  // namespace detail

/// Edge-list text: "u v" per line, '#' comments, optional leading "n <count>" header.
inline Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  int declared = -1;
  int max_index = -1;
  bool seen_content = false;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::string a, b, extra;
    row >> a >> b;
    if (row >> extra) throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": too many fields");
    const std::string where = "edge list line " + std::to_string(lineno);
    if (a == "n") {
      if (seen_content) throw std::invalid_argument(where + ": 'n' header must come first");
      declared = static_cast<int>(detail::parse_int(b, where));
      if (declared < 0) throw std::invalid_argument(where + ": negative vertex count");
      seen_content = true;
      continue;
    }
    if (b.empty()) throw std::invalid_argument(where + ": expected two vertex indices");
    seen_content = true;
    const auto u = detail::parse_int(a, where);
    const auto v = detail::parse_int(b, where);
    if (u < 0 || v < 0) throw std::invalid_argument(where + ": negative vertex index");
    if (u == v) throw std::invalid_argument(where + ": self-loop");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_index = std::max<int>(max_index, static_cast<int>(std::max(u, v)));
  }
  const int n = declared >= 0 ? declared : max_index + 1;
  if (max_index >= n)
    throw std::invalid_argument("edge list references vertex " + std::to_string(max_index) +
                                " but header declares n = " + std::to_string(n));
  return Graph(n, edges);
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return parse_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph make_path(int n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g = make_path(n);
  g.add_edge(n - 1, 0);
  return g;
}

inline Graph make_clique(int n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph make_star(int n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

inline Graph make_grid(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

/// Erdos-Renyi G(n, p); deterministic in `seed` within one build.
inline Graph make_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("er: p must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng) < p) g.add_edge(u, v);
  return g;
}

/// Clique on vertices 0..clique-1 with a path of `tail` extra vertices hanging off vertex clique-1.
inline Graph make_barbell(int clique, int tail) {
  Graph g(clique + tail);
  for (Vertex u = 0; u < clique; ++u)
    for (Vertex v = u + 1; v < clique; ++v) g.add_edge(u, v);
  for (Vertex v = clique; v < clique + tail; ++v) g.add_edge(v - 1, v);
  return g;
}

/// Builds a graph from "path:N", "cycle:N", "clique:N", "star:N", "grid:RxC",
/// "er:N:p:seed", "barbell:Nclique:Npath", "edgeless:N" or "file:path".
inline Graph make_graph(const std::string& spec) {
  const auto parts = detail::split(spec, ':');
  const std::string& kind = parts[0];
  auto need = [&](std::size_t count) {
    if (parts.size() != count)
      throw std::invalid_argument("graph spec '" + spec + "': expected " + std::to_string(count - 1) +
                                  " parameter(s)");
  };
  if (kind == "file") {
    if (parts.size() < 2) throw std::invalid_argument("graph spec 'file:' needs a path");
    return load_edge_list(spec.substr(5));
  }
  if (kind == "path") return need(2), make_path(detail::positive_count(parts[1], "path size"));
  if (kind == "cycle") return need(2), make_cycle(detail::positive_count(parts[1], "cycle size"));
  if (kind == "clique") return need(2), make_clique(detail::positive_count(parts[1], "clique size"));
  if (kind == "star") return need(2), make_star(detail::positive_count(parts[1], "star size"));
  if (kind == "edgeless") return need(2), Graph(detail::positive_count(parts[1], "vertex count"));
  if (kind == "grid") {
    need(2);
    const auto dims = detail::split(parts[1], 'x');
    if (dims.size() != 2) throw std::invalid_argument("grid spec must be grid:RxC");
    return make_grid(detail::positive_count(dims[0], "grid rows"), detail::positive_count(dims[1], "grid cols"));
  }
  if (kind == "er") {
    need(4);
    const auto seed = detail::parse_int(parts[3], "er seed");
    return make_erdos_renyi(detail::positive_count(parts[1], "er size"), detail::parse_double(parts[2], "er p"),
                            static_cast<std::uint64_t>(seed));
  }
  if (kind == "barbell") {
    need(3);
    const auto tail = detail::parse_int(parts[2], "barbell path length");
    if (tail < 0) throw std::invalid_argument("barbell path length must be >= 0");
    return make_barbell(detail::positive_count(parts[1], "barbell clique size"), static_cast<int>(tail));
  }
  throw std::invalid_argument("unknown graph spec '" + spec + "'");
}

}  // namespace coopbandits
