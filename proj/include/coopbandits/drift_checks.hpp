#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "coopbandits/graph.hpp"
#include "coopbandits/independence.hpp"
#include "coopbandits/policy.hpp"

namespace coopbandits {

inline constexpr double kInequalitySlack = 1e-9;
inline constexpr double kMultiplicativeSlack = 1e-12;

/// Additive drift sandwich for one update p_t -> p_next.
///
/// delta == 0:  -eta p_t(i) l(i) <= p_next(i) - p_t(i) <= eta p_next(i) sum_j p_t(j) l(j)
/// delta  > 0:  -p_t(i) (eta l(i) + delta) <= p_next(i) - p_t(i)
///              <= p_next(i) sum_j p_t(j) (1 - C_i (1 - eta l(j)))
/// where C_i = [untruncated w_{t+1}(i) / W_{t+1} > delta / K].
inline bool check_additive_drift(std::span<const double> p_t, std::span<const double> p_next,
                                 std::span<const double> estimate, double eta, double delta) {
  const std::size_t k = p_t.size();
  if (p_next.size() != k || estimate.size() != k) throw std::invalid_argument("check_additive_drift: size mismatch");

  double weighted_loss = 0.0;
  double next_weight_total = 0.0;
  std::vector<double> next_weight(k);
  for (std::size_t j = 0; j < k; ++j) {
    weighted_loss += p_t[j] * estimate[j];
    next_weight[j] = p_t[j] * std::exp(-eta * estimate[j]);
    next_weight_total += next_weight[j];
  }
  const double floor = delta / static_cast<double>(k);

  for (std::size_t i = 0; i < k; ++i) {
    const double change = p_next[i] - p_t[i];
    if (delta == 0.0) {
      if (change < -eta * p_t[i] * estimate[i] - kInequalitySlack) return false;
      if (change > eta * p_next[i] * weighted_loss + kInequalitySlack) return false;
    } else {
      if (change < -p_t[i] * (eta * estimate[i] + delta) - kInequalitySlack) return false;
      const bool above_floor = next_weight[i] / next_weight_total > floor;
      double bracket = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        bracket += p_t[j] * (1.0 - (above_floor ? 1.0 - eta * estimate[j] : 0.0));
      if (change > p_next[i] * bracket + kInequalitySlack) return false;
    }
  }
  return true;
}

/// Multiplicative drift p_next(i) <= (1 + 1/d) p_t(i). Vacuous for d == 0.
inline bool check_multiplicative_drift(std::span<const double> p_t, std::span<const double> p_next, int d) {
  if (p_t.size() != p_next.size()) throw std::invalid_argument("check_multiplicative_drift: size mismatch");
  if (d < 0) throw std::invalid_argument("check_multiplicative_drift: d must be >= 0");
  if (d == 0) return true;
  const double factor = (1.0 + 1.0 / d) * (1.0 + kMultiplicativeSlack);
  for (std::size_t i = 0; i < p_t.size(); ++i)
    if (p_next[i] > factor * p_t[i]) return false;
  return true;
}

namespace detail {

inline void check_dists(int n, const std::vector<Distribution>& dists) {
  if (static_cast<int>(dists.size()) != n) throw std::invalid_argument("qsum check: one distribution per vertex");
  for (const auto& p : dists)
    if (p.size() != dists.front().size()) throw std::invalid_argument("qsum check: ragged distributions");
}

template <typename NeighborhoodFn>
double qsum_for_action(int n, const std::vector<Distribution>& dists, std::size_t action, NeighborhoodFn nbhd) {
  double sum = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    double miss = 1.0;
    for (Vertex u : nbhd(v)) miss *= 1.0 - dists[u][action];
    sum += dists[v][action] / (1.0 - miss);
  }
  return sum;
}

}  // namespace detail

/// Undirected variance bound: for every action i,
/// sum_v p(i,v) / q(i,v) <= (alpha(G) + sum_v p(i,v)) / (1 - 1/e), q over closed neighborhoods.
inline bool check_qsum_bound(const Graph& g, const std::vector<Distribution>& dists,
                             int exact_cap = kDefaultExactAlphaCap) {
  const int n = g.num_vertices();
  detail::check_dists(n, dists);
  if (n == 0) return true;
  const double alpha = independence_number(g, AlphaMode::exact, exact_cap);
  const double scale = 1.0 / (1.0 - std::exp(-1.0));
  std::vector<std::vector<Vertex>> closed(n);
  for (Vertex v = 0; v < n; ++v) {
    closed[v] = g.neighbors(v);
    closed[v].push_back(v);
  }
  for (std::size_t i = 0; i < dists.front().size(); ++i) {
    double mass = 0.0;
    for (const auto& p : dists) mass += p[i];
    const double lhs = detail::qsum_for_action(n, dists, i, [&](Vertex v) -> const std::vector<Vertex>& { return closed[v]; });
    if (lhs > scale * (alpha + mass) + kInequalitySlack) return false;
  }
  return true;
}

/// Directed variance bound with probability floor delta / (K (1 + delta)):
/// sum_v p(i,v)/q(i,v) <= (6 alpha ln(1 + N^2 K (1 + delta) / delta) + sum_v p(i,v)) / (1 - 1/e),
/// q over in-neighborhoods, alpha of the orientation-free graph.
inline bool check_qsum_bound(const CommDigraph& g, const std::vector<Distribution>& dists, double delta,
                             int exact_cap = kDefaultExactAlphaCap) {
  const int n = g.num_vertices();
  detail::check_dists(n, dists);
  if (!(delta > 0.0)) throw std::invalid_argument("directed qsum bound requires delta > 0");
  if (n == 0) return true;
  const double k = static_cast<double>(dists.front().size());
  const double floor = delta / (k * (1.0 + delta));
  for (const auto& p : dists)
    for (double x : p)
      if (x < floor - kInequalitySlack) throw std::invalid_argument("directed qsum bound: probability below floor");
  const double alpha = independence_number(g, AlphaMode::exact, exact_cap);
  const double scale = 1.0 / (1.0 - std::exp(-1.0));
  const double log_term = std::log(1.0 + static_cast<double>(n) * n * k * (1.0 + delta) / delta);
  for (std::size_t i = 0; i < dists.front().size(); ++i) {
    double mass = 0.0;
    for (const auto& p : dists) mass += p[i];
    const double lhs = detail::qsum_for_action(n, dists, i, [&](Vertex v) -> const std::vector<Vertex>& { return g.in_neighbors(v); });
    if (lhs > scale * (6.0 * alpha * log_term + mass) + kInequalitySlack) return false;
  }
  return true;
}

}  // namespace coopbandits
