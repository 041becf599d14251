#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopbandits/adversary.hpp"
#include "coopbandits/drift_checks.hpp"
#include "coopbandits/graph.hpp"
#include "coopbandits/graph_io.hpp"
#include "coopbandits/policy.hpp"
#include "coopbandits/simulator.hpp"

namespace coopbandits {

struct SuiteResult {
  explicit SuiteResult(std::string suite) : name(std::move(suite)) {}

  std::string name;
  long long checks = 0;
  long long violations = 0;
  double max_error = 0.0;  // largest observed discrepancy, where the suite measures one
  std::optional<std::string> counterexample;

  bool passed() const { return violations == 0; }

  void fail(const std::string& what) {
    ++violations;
    if (!counterexample) counterexample = what;
  }
};

namespace detail {

inline std::string describe(const std::vector<double>& xs) {
  std::ostringstream out;
  out.precision(17);
  out << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
  out << ']';
  return out.str();
}

/// Random distribution; `spread` scales log-weights, so large values give skewed vectors.
inline Distribution random_distribution(std::mt19937_64& rng, int k, double spread, double delta = 0.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> logw(k);
  for (double& x : logw) x = spread * gauss(rng);
  return emit_distribution(logw, delta);
}

}  // namespace detail

/// Drift inequalities along random learner trajectories started from uniform.
///
/// Each trajectory draws K in 2..16, d in 0..8, eta = u / (K e (d+1)) with u in (0, 1]
/// and delta in {0, 1/d}. Every step builds the delayed estimate from the agent's own
/// distribution d steps back and a random set of other agents, then checks both the
/// additive sandwich and the multiplicative growth bound.
inline SuiteResult verify_lemmas(long long steps, std::uint64_t seed) {
  SuiteResult res("lemmas");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (res.checks < steps) {
    const int k = std::uniform_int_distribution<int>(2, 16)(rng);
    const int d = std::uniform_int_distribution<int>(0, 8)(rng);
    const double u = 1.0 - unit(rng);
    const double eta = u / (k * std::numbers::e * (d + 1));
    const double delta = unit(rng) < 0.5 ? 0.0 : 1.0 / std::max(d, 1);
    const int others = std::uniform_int_distribution<int>(0, 5)(rng);
    const int length = std::uniform_int_distribution<int>(d + 1, d + 60)(rng);
    std::vector<double> losses(k);

    PolicyState learner(k, eta, delta, d);
    std::vector<double> estimate(k);
    for (int t = 1; t <= length && res.checks < steps; ++t) {
      learner.mark_played();
      std::fill(estimate.begin(), estimate.end(), 0.0);
      if (learner.has_delayed()) {
        std::vector<Distribution> nbhd{learner.delayed_distribution()};
        for (int j = 0; j < others; ++j) nbhd.push_back(detail::random_distribution(rng, k, 3.0 * unit(rng)));
        std::vector<char> hit(k, 0);
        for (const auto& p : nbhd) hit[sample_action(p, unit(rng))] = 1;
        for (double& l : losses) l = unit(rng);
        for (int i = 0; i < k; ++i)
          estimate[i] = loss_estimate(t, d, losses[i], hit[i] != 0, activation_prob(static_cast<std::size_t>(i), nbhd));
      }
      const Distribution before = learner.distribution();
      learner.update(estimate);
      const Distribution& after = learner.distribution();
      ++res.checks;
      const bool additive = check_additive_drift(before, after, estimate, eta, delta);
      const bool multiplicative = check_multiplicative_drift(before, after, d);
      if (!additive || !multiplicative) {
        std::ostringstream why;
        why.precision(17);
        why << (additive ? "multiplicative" : "additive") << " drift: K=" << k << " d=" << d << " eta=" << eta
            << " delta=" << delta << " p_t=" << detail::describe(before) << " p_next=" << detail::describe(after)
            << " estimate=" << detail::describe(estimate);
        res.fail(why.str());
      }
    }
  }
  return res;
}

/// Exact expectations of the delayed estimator on the 3-vertex path, K = 2, d = 1, by
/// enumerating all 2^3 joint actions at the source round. Each trial freezes a random
/// history: source-round distributions, losses and the current distributions.
inline SuiteResult verify_unbiasedness(int trials, std::uint64_t seed) {
  SuiteResult res("unbiasedness");
  const int n = 3;
  const int k = 2;
  const int d = 1;
  const Graph g = make_path(n);
  const auto closed = neighborhood_digraph(bfs_distances(g), d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto track = [&](double err, const std::string& what) {
    ++res.checks;
    res.max_error = std::max(res.max_error, err);
    if (!(err < 1e-12)) res.fail(what + " error " + std::to_string(err));
  };
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Distribution> source(n), current(n);
    for (int v = 0; v < n; ++v) {
      source[v] = detail::random_distribution(rng, k, 1.5);
      current[v] = detail::random_distribution(rng, k, 1.5);
    }
    std::vector<double> losses(k);
    for (double& l : losses) l = unit(rng);

    for (int v = 0; v < n; ++v) {
      std::vector<Distribution> nbhd;
      for (Vertex u : closed.in_neighbors(v)) nbhd.push_back(source[u]);
      for (int i = 0; i < k; ++i) {
        const double q = activation_prob(static_cast<std::size_t>(i), nbhd);
        double mean = 0.0, first = 0.0, second = 0.0;
        for (int joint = 0; joint < (1 << n); ++joint) {
          double prob = 1.0;
          for (int u = 0; u < n; ++u) prob *= source[u][(joint >> u) & 1];
          bool hit = false;
          for (Vertex u : closed.in_neighbors(v)) hit = hit || ((joint >> u) & 1) == i;
          const double est = loss_estimate(d + 1, d, losses[i], hit, q);
          mean += prob * est;
          first += prob * current[v][i] * est;
          second += prob * current[v][i] * est * est;
        }
        const std::string at = "agent " + std::to_string(v) + " action " + std::to_string(i);
        track(std::abs(mean - losses[i]), at + " mean");
        track(std::abs(first - current[v][i] * losses[i]), at + " first moment");
        track(std::abs(second - current[v][i] * losses[i] * losses[i] / q), at + " second moment");
      }
    }
  }
  return res;
}

/// Variance bounds on `trials` random undirected graphs (n <= 12) and `trials` random
/// digraphs with delta-floored distributions (delta = 0.1).
inline SuiteResult verify_qsum(int trials, std::uint64_t seed) {
  SuiteResult res("qsum");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double delta = 0.1;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const int k = std::uniform_int_distribution<int>(2, 8)(rng);
    const double density = unit(rng);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (unit(rng) < density) g.add_edge(u, v);
    std::vector<Distribution> dists(n);
    for (auto& p : dists) p = detail::random_distribution(rng, k, 4.0 * unit(rng));
    ++res.checks;
    if (!check_qsum_bound(g, dists))
      res.fail("undirected: n=" + std::to_string(n) + " edges=" + std::to_string(g.num_edges()));
  }
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const int k = std::uniform_int_distribution<int>(2, 8)(rng);
    const double density = unit(rng);
    CommDigraph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && unit(rng) < density) g.add_arc(u, v);
    std::vector<Distribution> dists(n);
    for (auto& p : dists) p = detail::random_distribution(rng, k, 8.0 * unit(rng), delta);
    ++res.checks;
    if (!check_qsum_bound(g, dists, delta))
      res.fail("directed: n=" + std::to_string(n) + " arcs=" + std::to_string(g.arcs().size()));
  }
  return res;
}

/// Largest per-round, per-agent probability gap between two recorded runs; -1 if actions differ.
inline double trajectory_gap(const RoundLog& a, const RoundLog& b) {
  if (a.actions != b.actions) return -1.0;
  double gap = 0.0;
  for (std::size_t i = 0; i < a.distributions.size(); ++i)
    gap = std::max(gap, std::abs(a.distributions[i] - b.distributions[i]));
  return gap;
}

/// Truncated variant at delta = 0 with d(v) = ttl(v) = 2 against the shared-delay algorithm
/// on path:6, K = 3, T = 2000, for `seeds` consecutive seeds.
inline SuiteResult verify_equivalence(int seeds, std::uint64_t seed, int horizon = 2000) {
  SuiteResult res("equivalence");
  const int n = 6, k = 3, d = 2;
  const auto schedule = gen_shifting(horizon, k, 5, 0.3, 0.7, seed, 0.2);
  for (int s = 0; s < seeds; ++s) {
    SimConfig coop;
    coop.algorithm = Algorithm::coop;
    coop.graph = make_path(n);
    coop.num_actions = k;
    coop.horizon = horizon;
    coop.delay = d;
    coop.gamma = 1.0;
    coop.seed = seed + static_cast<std::uint64_t>(s);
    coop.record_distributions = true;
    SimConfig coop2 = coop;
    coop2.algorithm = Algorithm::coop2;
    coop2.delay = 0;
    coop2.params = ParamSet::uniform(n, d, d);
    const auto a = run_experiment(coop, schedule);
    const auto b = run_experiment(coop2, schedule);
    const double gap = trajectory_gap(a.log, b.log);
    ++res.checks;
    if (gap < 0.0) {
      res.fail("seed " + std::to_string(coop.seed) + ": action sequences differ");
      continue;
    }
    res.max_error = std::max(res.max_error, gap);
    if (!(gap < 1e-12)) res.fail("seed " + std::to_string(coop.seed) + ": distribution gap " + std::to_string(gap));
  }
  return res;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemmas", "unbiasedness", "qsum", "equivalence"};
  return names;
}

/// Runs a named suite; `trials` is steps (lemmas), frozen histories (unbiasedness),
/// graphs per kind (qsum) or seeds (equivalence).
inline SuiteResult run_verify_suite(const std::string& name, long long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify: trials must be >= 1");
  if (name == "lemmas") return verify_lemmas(trials, seed);
  if (name == "unbiasedness") return verify_unbiasedness(static_cast<int>(trials), seed);
  if (name == "qsum") return verify_qsum(static_cast<int>(trials), seed);
  if (name == "equivalence") return verify_equivalence(static_cast<int>(trials), seed);
  throw std::invalid_argument("unknown verify suite '" + name + "' (lemmas, unbiasedness, qsum, equivalence)");
}

inline long long default_trials(const std::string& name) {
  if (name == "lemmas") return 10000;
  if (name == "unbiasedness") return 1;
  if (name == "qsum") return 500;
  if (name == "equivalence") return 10;
  throw std::invalid_argument("unknown verify suite '" + name + "'");
}

}  // namespace coopbandits
