#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "coopbandits/adversary.hpp"
#include "coopbandits/bounds.hpp"
#include "coopbandits/graph.hpp"
#include "coopbandits/graph_io.hpp"
#include "coopbandits/independence.hpp"
#include "coopbandits/report.hpp"
#include "coopbandits/simulator.hpp"

namespace coopbandits {

/// Worker count: COOPBANDITS_THREADS if set and positive, else the hardware concurrency.
inline int worker_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("COOPBANDITS_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return cap;
    } catch (const std::exception&) {
    }
  }
  return hw;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the first failure.
template <typename Fn>
void parallel_for(int count, int threads, Fn fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct GraphSummary {
  int n = 0;
  std::size_t edges = 0;
  bool connected = false;
  std::optional<int> diameter;
  std::optional<int> alpha;  // exact, when under the cap
  int greedy_alpha = 0;
};

inline GraphSummary summarize_graph(const Graph& g, int exact_cap = kDefaultExactAlphaCap) {
  GraphSummary s;
  s.n = g.num_vertices();
  s.edges = g.num_edges();
  const auto dist = bfs_distances(g);
  s.connected = dist.connected();
  if (s.connected) s.diameter = diameter(dist);
  s.greedy_alpha = greedy_independent_set_size(g);
  if (s.n <= exact_cap) s.alpha = independence_number(g, AlphaMode::exact, exact_cap);
  return s;
}

/// Independence number of the d-th power usable inside an upper bound: exact when under the
/// cap, otherwise the connected-graph ceiling, otherwise N.
inline int alpha_of_power(const Graph& g, const DistanceMatrix& dist, int d, int exact_cap = kDefaultExactAlphaCap) {
  if (g.num_vertices() <= exact_cap) return independence_number(power_graph(g, dist, d), AlphaMode::exact, exact_cap);
  if (dist.connected()) return alpha_upper_bound_connected(g.num_vertices(), d);
  return g.num_vertices();
}

/// Everything needed to run one configuration over many seeds.
struct ExperimentSpec {
  std::string graph = "clique:10";
  Algorithm algorithm = Algorithm::coop;
  int num_actions = 10;
  int horizon = 1000;
  int delay = 1;
  std::vector<int> delays;  // coop2: one per vertex, or a single value broadcast
  std::vector<int> ttls;
  std::string gamma = "auto";  // "auto", "doubling" or a number in (0, 1]
  std::optional<double> eta;
  std::optional<double> delta;  // coop2 default: 1/T
  std::string adversary = "shift:4:0.35:0.65";
  std::uint64_t adversary_seed = 0;
  int seed_count = 1;
  std::uint64_t seed_base = 1;
  DeliveryMode delivery = DeliveryMode::logical;
  bool check_drift = false;
  int exact_alpha_cap = kDefaultExactAlphaCap;
  int curve_points = 1000;
  bool want_curve = false;

  std::string gamma_mode() const { return gamma == "auto" || gamma == "doubling" ? gamma : "fixed"; }
};

inline std::vector<int> broadcast(const std::vector<int>& values, int n, const std::string& what) {
  if (values.size() == 1) return std::vector<int>(n, values.front());
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument(what + ": expected 1 or " + std::to_string(n) + " values, got " +
                                std::to_string(values.size()));
  return values;
}

struct ExperimentOutcome {
  SimConfig config;
  RegretReport summary;
  std::vector<RegretReport> runs;
  std::vector<CurvePoint> curve;  // seed-averaged
  GraphSummary graph;
  std::optional<GammaChoice> gamma_choice;
  std::optional<double> reduction_shape;  // sqrt((d + 1) K T) for single-agent runs
};

/// Resolves a spec into a validated SimConfig plus the graph statistics and bound.
inline ExperimentOutcome prepare_experiment(const ExperimentSpec& spec) {
  ExperimentOutcome out;
  SimConfig& cfg = out.config;
  cfg.algorithm = spec.algorithm;
  cfg.graph = make_graph(spec.graph);
  cfg.num_actions = spec.num_actions;
  cfg.horizon = spec.horizon;
  cfg.delivery = spec.delivery;
  cfg.check_drift = spec.check_drift;
  cfg.eta = spec.eta;
  const int n = cfg.graph.num_vertices();
  const auto dist = bfs_distances(cfg.graph);

  if (spec.algorithm == Algorithm::coop2) {
    if (spec.delays.empty() || spec.ttls.empty()) throw std::invalid_argument("coop2 needs --delays and --ttls");
    cfg.params = ParamSet{broadcast(spec.delays, n, "delays"), broadcast(spec.ttls, n, "ttls")};
    cfg.delta = spec.delta.value_or(1.0 / spec.horizon);
  } else {
    if (!spec.delays.empty() || !spec.ttls.empty())
      throw std::invalid_argument("--delays/--ttls apply to coop2 only; use --d");
    cfg.delay = spec.delay;
    if (spec.delta && *spec.delta != 0.0) throw std::invalid_argument("--delta applies to coop2 only");
  }

  out.graph = summarize_graph(cfg.graph, spec.exact_alpha_cap);

  // alpha entering the bound and the gamma grid
  const bool single = spec.algorithm == Algorithm::single_delayed || spec.algorithm == Algorithm::baseline_parallel;
  const bool isolated = spec.algorithm == Algorithm::baseline_repeat;
  std::optional<int> alpha;
  if (spec.algorithm == Algorithm::coop2) {
    const auto digraph = build_comm_digraph(dist, *cfg.params);
    if (n <= spec.exact_alpha_cap) alpha = independence_number(digraph, AlphaMode::exact, spec.exact_alpha_cap);
    out.summary.mean_delay = cfg.params->mean_delay();
  } else {
    alpha = single || isolated ? n : alpha_of_power(cfg.graph, dist, spec.delay, spec.exact_alpha_cap);
    out.summary.mean_delay = spec.delay;
  }
  out.summary.alpha = alpha;
  out.summary.diameter = out.graph.diameter;

  if (spec.gamma == "doubling") {
    cfg.rate_mode = RateMode::doubling;
  } else if (spec.gamma == "auto") {
    if (spec.algorithm == Algorithm::coop2)
      throw std::invalid_argument("--gamma auto applies to coop, single-delayed and the baselines; give --eta for coop2");
    // each parallel instance is an undelayed learner over about T / (d + 1) rounds
    if (spec.algorithm == Algorithm::baseline_parallel)
      out.gamma_choice = auto_gamma(0, spec.num_actions, 1, 1, std::ceil(spec.horizon / (spec.delay + 1.0)));
    else
      out.gamma_choice = auto_gamma(spec.delay, spec.num_actions, n, *alpha, spec.horizon);
    cfg.gamma = out.gamma_choice->gamma;
  } else {
    cfg.gamma = detail::parse_double(spec.gamma, "--gamma");
  }
  cfg.validate();

  if (cfg.rate_mode == RateMode::fixed && !cfg.eta) {
    if (spec.algorithm == Algorithm::coop || spec.algorithm == Algorithm::single_delayed)
      out.summary.bound = evaluate_bound_thm1(spec.delay, spec.num_actions, cfg.gamma, n, *alpha, spec.horizon);
  }
  if (spec.algorithm == Algorithm::coop2 && cfg.eta && alpha && cfg.delta == 1.0 / spec.horizon)
    out.summary.bound = evaluate_bound_thm3(cfg.params->mean_delay(), spec.num_actions, *cfg.eta, n, *alpha, spec.horizon);
  if (single) out.reduction_shape = evaluate_bound_single_delayed(spec.delay, spec.num_actions, spec.horizon, cfg.gamma).reduction;

  std::ostringstream key;
  key << spec.graph << '|' << to_string(spec.algorithm) << '|' << spec.num_actions << '|' << spec.horizon << '|'
      << spec.delay << '|' << spec.gamma << '|' << spec.adversary << '|' << spec.adversary_seed;
  out.summary.config_key = key.str();
  return out;
}

/// Runs all seeds (in parallel) and aggregates. `hooks` attach to the first seed only.
inline ExperimentOutcome run_experiment_spec(const ExperimentSpec& spec, SimHooks hooks = {},
                                             int threads = worker_threads()) {
  if (spec.seed_count < 1) throw std::invalid_argument("need at least one seed");
  ExperimentOutcome out = prepare_experiment(spec);
  const auto schedule = make_schedule(spec.adversary, spec.horizon, spec.num_actions, spec.adversary_seed);
  const RegretReport meta = out.summary;

  out.runs.resize(spec.seed_count);
  std::vector<std::vector<CurvePoint>> curves(spec.seed_count);
  const bool traced = hooks.on_delivery || hooks.on_estimator || hooks.on_transmission;
  parallel_for(spec.seed_count, traced ? 1 : threads, [&](int s) {
    SimConfig cfg = out.config;
    cfg.seed = spec.seed_base + static_cast<std::uint64_t>(s);
    auto result = run_experiment(cfg, schedule, s == 0 ? hooks : SimHooks{});
    if (spec.want_curve) curves[s] = regret_curve(result.log, schedule, spec.curve_points);
    result.report.config_key = meta.config_key;
    out.runs[s] = std::move(result.report);
  });

  out.summary = aggregate(out.runs);
  out.summary.alpha = meta.alpha;
  out.summary.diameter = meta.diameter;
  out.summary.mean_delay = meta.mean_delay;
  out.summary.bound = meta.bound;
  if (spec.want_curve) {
    out.curve = curves.front();
    for (std::size_t i = 0; i < out.curve.size(); ++i) {
      double sum = 0.0;
      for (const auto& c : curves) sum += c[i].avg_cum_regret;
      out.curve[i].avg_cum_regret = sum / static_cast<double>(curves.size());
    }
  }
  return out;
}

}  // namespace coopbandits
