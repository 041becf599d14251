#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopbandits/graph.hpp"

namespace coopbandits {

enum class AlphaMode { exact, greedy };

inline constexpr int kDefaultExactAlphaCap = 40;

/// Size of the independent set built by repeatedly taking a minimum-degree
/// vertex and deleting its closed neighborhood. Always a lower bound on alpha.
inline int greedy_independent_set_size(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<char> alive(n, 1);
  std::vector<int> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  int remaining = n;
  int size = 0;

  auto remove = [&](Vertex v) {
    alive[v] = 0;
    --remaining;
    for (Vertex w : g.neighbors(v))
      if (alive[w]) --deg[w];
  };

  while (remaining > 0) {
    Vertex pick = -1;
    for (Vertex v = 0; v < n; ++v)
      if (alive[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
    ++size;
    std::vector<Vertex> closed{pick};
    for (Vertex w : g.neighbors(pick))
      if (alive[w]) closed.push_back(w);
    for (Vertex v : closed) remove(v);
  }
  return size;
}

namespace detail {

using Mask = std::uint64_t;

class MaxIndependentSetSolver {
 public:
  explicit MaxIndependentSetSolver(const Graph& g) : n_(g.num_vertices()), nbr_(n_, 0) {
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex w : g.neighbors(v)) nbr_[v] |= Mask{1} << w;
  }

  int solve(int initial_bound) {
    best_ = initial_bound;
    const Mask all = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    search(all, 0);
    return best_;
  }

 private:
  void search(Mask candidates, int taken) {
    // Degree <= 1 vertices belong to some maximum independent set of the remaining subgraph.
    for (bool reduced = true; reduced;) {
      reduced = false;
      for (Mask scan = candidates; scan != 0; scan &= scan - 1) {
        const int v = std::countr_zero(scan);
        const Mask live = nbr_[v] & candidates;
        if (std::popcount(live) <= 1) {
          candidates &= ~(live | (Mask{1} << v));
          ++taken;
          reduced = true;
          break;
        }
      }
    }
    if (candidates == 0) {
      if (taken > best_) best_ = taken;
      return;
    }
    if (taken + std::popcount(candidates) <= best_) return;

    int pivot = -1;
    int pivot_degree = -1;
    for (Mask scan = candidates; scan != 0; scan &= scan - 1) {
      const int v = std::countr_zero(scan);
      const int deg = std::popcount(nbr_[v] & candidates);
      if (deg > pivot_degree) {
        pivot = v;
        pivot_degree = deg;
      }
    }
    const Mask bit = Mask{1} << pivot;
    search(candidates & ~(bit | nbr_[pivot]), taken + 1);
    search(candidates & ~bit, taken);
  }

  int n_;
  std::vector<Mask> nbr_;
  int best_ = 0;
};

}  // namespace detail

/// alpha(G). Exact mode is branch-and-bound and refuses graphs above `exact_cap`
/// vertices (never more than 64); greedy mode returns a lower bound.
inline int independence_number(const Graph& g, AlphaMode mode = AlphaMode::exact,
                               int exact_cap = kDefaultExactAlphaCap) {
  const int greedy = greedy_independent_set_size(g);
  if (mode == AlphaMode::greedy) return greedy;
  if (g.num_vertices() > exact_cap || g.num_vertices() > 64)
    throw std::invalid_argument("exact independence number limited to " +
                                std::to_string(std::min(exact_cap, 64)) + " vertices (graph has " +
                                std::to_string(g.num_vertices()) + "); use greedy mode");
  if (g.num_vertices() == 0) return 0;
  return detail::MaxIndependentSetSolver(g).solve(greedy);
}

inline int independence_number(const CommDigraph& g, AlphaMode mode = AlphaMode::exact,
                               int exact_cap = kDefaultExactAlphaCap) {
  return independence_number(g.undirected(), mode, exact_cap);
}

}  // namespace coopbandits
