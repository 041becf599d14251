#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coopbandits {

using Vertex = int;

/// Undirected simple graph on vertices 0..n-1, stored as sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(check_count(n)) {}

  Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int num_vertices() const { return static_cast<int>(adj_.size()); }

  std::size_t num_edges() const {
    std::size_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
  }

  // Idempotent; self-loops are rejected.
  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
  }

  bool has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  /// Edges as (u, v) with u < v, lexicographically ordered.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < num_vertices(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  static int check_count(int n) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    return n;
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= num_vertices())
      throw std::out_of_range("vertex " + std::to_string(v) + " not in [0, " +
                              std::to_string(num_vertices()) + ")");
  }

  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  }

  std::vector<std::vector<Vertex>> adj_;
};

/// All-pairs hop distances. Unreachable pairs hold `kUnreachable`.
class DistanceMatrix {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  DistanceMatrix() = default;
  explicit DistanceMatrix(int n)
      : n_(n), dist_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kUnreachable) {}

  int size() const { return n_; }

  int operator()(Vertex u, Vertex v) const { return dist_[index(u, v)]; }
  int& at(Vertex u, Vertex v) { return dist_[index(u, v)]; }

  bool reachable(Vertex u, Vertex v) const { return (*this)(u, v) != kUnreachable; }

  bool connected() const {
    return std::find(dist_.begin(), dist_.end(), kUnreachable) == dist_.end();
  }

  /// Vertices within distance `radius` of v (v included), ascending.
  std::vector<Vertex> ball(Vertex v, int radius) const {
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
      if ((*this)(v, u) <= radius) out.push_back(u);
    return out;
  }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("distance index");
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<int> dist_;
};

inline DistanceMatrix bfs_distances(const Graph& g) {
  const int n = g.num_vertices();
  DistanceMatrix dist(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    queue.clear();
    queue.push_back(s);
    dist.at(s, s) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      const int du = dist(s, u);
      for (Vertex w : g.neighbors(u)) {
        if (dist(s, w) == DistanceMatrix::kUnreachable) {
          dist.at(s, w) = du + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return dist;
}

/// G_{<=d}: u ~ v iff 0 < dist(u, v) <= d. d = 0 yields the edgeless graph.
inline Graph power_graph(const Graph& g, const DistanceMatrix& dist, int d) {
  if (d < 0) throw std::invalid_argument("power_graph: d must be >= 0");
  const int n = g.num_vertices();
  if (dist.size() != n) throw std::invalid_argument("power_graph: distance matrix size mismatch");
  Graph out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (dist(u, v) <= d) out.add_edge(u, v);
  return out;
}

inline int diameter(const DistanceMatrix& dist) {
  int best = 0;
  for (Vertex u = 0; u < dist.size(); ++u)
    for (Vertex v = 0; v < dist.size(); ++v) {
      if (!dist.reachable(u, v))
        throw std::domain_error("diameter undefined: graph is disconnected");
      best = std::max(best, dist(u, v));
    }
  return best;
}

/// Worst case over connected graphs: alpha(G_{<=d}) <= ceil(2n / (d + 2)).
inline int alpha_upper_bound_connected(int n, int d) {
  if (n < 0 || d < 0) throw std::invalid_argument("alpha_upper_bound_connected: negative argument");
  return (2 * n + d + 1) / (d + 2);
}

/// Per-agent delay and time-to-live.
struct ParamSet {
  std::vector<int> delay;
  std::vector<int> ttl;

  static ParamSet uniform(int n, int d, int ttl_value) {
    return ParamSet{std::vector<int>(n, d), std::vector<int>(n, ttl_value)};
  }

  int size() const { return static_cast<int>(delay.size()); }

  double mean_delay() const {
    if (delay.empty()) return 0.0;
    double sum = 0.0;
    for (int d : delay) sum += d;
    return sum / static_cast<double>(delay.size());
  }

  int max_delay() const { return delay.empty() ? 0 : *std::max_element(delay.begin(), delay.end()); }
  int max_ttl() const { return ttl.empty() ? 0 : *std::max_element(ttl.begin(), ttl.end()); }

  void validate(int n) const {
    if (size() != n || static_cast<int>(ttl.size()) != n)
      throw std::invalid_argument("ParamSet: expected " + std::to_string(n) + " delay and ttl entries");
    for (int i = 0; i < n; ++i)
      if (delay[i] < 0 || ttl[i] < 0)
        throw std::invalid_argument("ParamSet: negative entry at vertex " + std::to_string(i));
  }
};

/// Directed communication graph G_P. Arc (u, v) means v uses messages originated by u.
class CommDigraph {
 public:
  CommDigraph() = default;
  explicit CommDigraph(int n) : in_(n), out_(n) {
    for (Vertex v = 0; v < n; ++v) add_arc(v, v);
  }

  int num_vertices() const { return static_cast<int>(in_.size()); }

  void add_arc(Vertex from, Vertex to) {
    check(from);
    check(to);
    insert_sorted(in_[to], from);
    insert_sorted(out_[from], to);
  }

  bool has_arc(Vertex from, Vertex to) const {
    check(from);
    check(to);
    return std::binary_search(in_[to].begin(), in_[to].end(), from);
  }

  /// N^-(v), self included, ascending.
  const std::vector<Vertex>& in_neighbors(Vertex v) const {
    check(v);
    return in_[v];
  }

  std::vector<std::pair<Vertex, Vertex>> arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex to = 0; to < num_vertices(); ++to)
      for (Vertex from : in_[to]) out.emplace_back(from, to);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Orientation and self-loops dropped.
  Graph undirected() const {
    Graph g(num_vertices());
    for (Vertex to = 0; to < num_vertices(); ++to)
      for (Vertex from : in_[to])
        if (from != to) g.add_edge(from, to);
    return g;
  }

  friend bool operator==(const CommDigraph&, const CommDigraph&) = default;

 private:
  void check(Vertex v) const {
    if (v < 0 || v >= num_vertices()) throw std::out_of_range("digraph vertex " + std::to_string(v));
  }

  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  }

  std::vector<std::vector<Vertex>> in_;
  std::vector<std::vector<Vertex>> out_;
};

/// Arc (u, v) iff dist(v, u) <= min{d(v), ttl(u)}.
inline CommDigraph build_comm_digraph(const DistanceMatrix& dist, const ParamSet& params) {
  const int n = dist.size();
  params.validate(n);
  CommDigraph g(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = 0; u < n; ++u) {
      const int reach = std::min(params.delay[v], params.ttl[u]);
      if (dist(v, u) <= reach) g.add_arc(u, v);
    }
  return g;
}

/// Bidirected G_{<=d} plus self-loops; the shared-delay special case of G_P.
inline CommDigraph neighborhood_digraph(const DistanceMatrix& dist, int d) {
  return build_comm_digraph(dist, ParamSet::uniform(dist.size(), d, d));
}

}  // namespace coopbandits
