#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coopbandits/adversary.hpp"
#include "coopbandits/drift_checks.hpp"
#include "coopbandits/graph.hpp"
#include "coopbandits/policy.hpp"
#include "coopbandits/report.hpp"
#include "coopbandits/rng.hpp"

namespace coopbandits {

enum class Algorithm { coop, coop2, single_delayed, baseline_repeat, baseline_parallel };
enum class RateMode { fixed, doubling };
enum class DeliveryMode { logical, flooding };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::coop: return "coop";
    case Algorithm::coop2: return "coop2";
    case Algorithm::single_delayed: return "single-delayed";
    case Algorithm::baseline_repeat: return "baseline-repeat";
    case Algorithm::baseline_parallel: return "baseline-parallel";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::coop, Algorithm::coop2, Algorithm::single_delayed, Algorithm::baseline_repeat,
                 Algorithm::baseline_parallel})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

struct SimConfig {
  Algorithm algorithm = Algorithm::coop;
  Graph graph;
  int num_actions = 2;
  int horizon = 1;
  int delay = 0;                    // shared d: coop, single-delayed, baselines
  std::optional<ParamSet> params;   // coop2
  RateMode rate_mode = RateMode::fixed;
  double gamma = 1.0;               // fixed mode: eta = gamma / (K e (d + 1))
  std::optional<double> eta;        // explicit common learning rate, overrides gamma
  double delta = 0.0;               // truncation floor (coop2)
  std::uint64_t seed = 0;
  DeliveryMode delivery = DeliveryMode::logical;
  bool record_distributions = false;
  bool check_drift = false;

  int num_agents() const { return graph.num_vertices(); }

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("config: T must be >= 1");
    if (num_actions < 2) throw std::invalid_argument("config: K must be >= 2");
    if (num_agents() < 1) throw std::invalid_argument("config: graph has no vertices");
    if (delay < 0) throw std::invalid_argument("config: d must be >= 0");
    if (!(delta >= 0.0)) throw std::invalid_argument("config: delta must be >= 0");
    if (eta && !(*eta > 0.0)) throw std::invalid_argument("config: eta must be > 0");
    if (rate_mode == RateMode::fixed && !eta && !(gamma > 0.0 && gamma <= 1.0))
      throw std::invalid_argument("config: gamma must be in (0, 1]");
    switch (algorithm) {
      case Algorithm::coop:
      case Algorithm::baseline_repeat:
        if (params) throw std::invalid_argument("config: " + to_string(algorithm) + " uses a shared d, not a ParamSet");
        break;
      case Algorithm::coop2:
        if (!params) throw std::invalid_argument("config: coop2 requires per-agent delay/ttl parameters");
        params->validate(num_agents());
        break;
      case Algorithm::single_delayed:
      case Algorithm::baseline_parallel:
        if (num_agents() != 1) throw std::invalid_argument("config: " + to_string(algorithm) + " requires N = 1");
        if (params) throw std::invalid_argument("config: " + to_string(algorithm) + " uses a shared d");
        break;
    }
    if (algorithm != Algorithm::coop2 && delta != 0.0)
      throw std::invalid_argument("config: delta is only used by coop2");
    if ((algorithm == Algorithm::baseline_repeat || algorithm == Algorithm::baseline_parallel) &&
        rate_mode == RateMode::doubling)
      throw std::invalid_argument("config: baselines run with a fixed learning rate");
  }
};

/// Protocol message m_t(v); ttl < 0 stands for the shared-delay protocol.
struct Message {
  long long round = 0;
  Vertex origin = 0;
  int ttl = -1;
  int hops = 0;
  int action = 0;
  double loss = 0.0;
  std::shared_ptr<const Distribution> dist;
  std::vector<Vertex> route;  // provenance chain, origin first (flooding audit only)
};

struct DeliveryRecord {
  long long t;  // origin round
  Vertex origin;
  int hop;
  Vertex recipient;
  int action;
  double loss;
};

struct TransmissionRecord {
  long long sent_at;
  long long origin_round;
  Vertex origin;
  Vertex from;
  Vertex to;
};

/// Everything an agent's estimator reads for one update.
struct EstimatorInput {
  long long round;
  Vertex agent;
  long long source_round;
  std::vector<Vertex> sources;
  std::vector<int> actions;
  std::vector<double> losses;
  std::vector<Distribution> dists;

  friend bool operator==(const EstimatorInput&, const EstimatorInput&) = default;
};

struct SimHooks {
  std::function<void(const DeliveryRecord&)> on_delivery;
  std::function<void(const TransmissionRecord&)> on_transmission;
  std::function<void(const EstimatorInput&)> on_estimator;
};

struct SimResult {
  RoundLog log;
  RegretReport report;
};

namespace detail {

/// Per-origin message traffic implied by shortest-path frontiers, indexed by message age.
struct FrontierTraffic {
  std::vector<long long> forwards;    // transmissions of age-s copies (s >= 1)
  std::vector<long long> arrivals;    // copies received at age s
  std::vector<long long> deliveries;  // distinct recipients at distance s
  std::vector<long long> forwarders;  // distinct recipients that forward at age s
  long long initial = 0;              // origin broadcasts per round
};

inline FrontierTraffic frontier_traffic(const Graph& g, const DistanceMatrix& dist, const std::vector<int>& cutoff) {
  const int n = g.num_vertices();
  const int max_cut = cutoff.empty() ? 0 : *std::max_element(cutoff.begin(), cutoff.end());
  FrontierTraffic tr;
  tr.forwards.assign(max_cut + 2, 0);
  tr.arrivals.assign(max_cut + 2, 0);
  tr.deliveries.assign(max_cut + 2, 0);
  tr.forwarders.assign(max_cut + 2, 0);
  for (Vertex u = 0; u < n; ++u) {
    const int c = cutoff[u];
    if (c < 1) continue;
    tr.initial += g.degree(u);
    for (Vertex w = 0; w < n; ++w) {
      const int s = dist(u, w);
      if (s == DistanceMatrix::kUnreachable || s < 1 || s > c) continue;
      tr.deliveries[s] += 1;
      if (s < c) {
        tr.forwarders[s] += 1;
        for (Vertex x : g.neighbors(w))
          if (dist(u, x) >= s) tr.forwards[s] += 1;
      }
    }
    tr.arrivals[1] += g.degree(u);
  }
  for (int s = 2; s <= max_cut; ++s) tr.arrivals[s] = tr.forwards[s - 1];
  return tr;
}

}  // namespace detail

/// Synchronous simulation of the cooperative protocol for coop, coop2 and single-delayed runs.
class CoopSimulation {
 public:
  CoopSimulation(const SimConfig& cfg, const LossSchedule& schedule, SimHooks hooks = {})
      : cfg_(cfg), schedule_(schedule), hooks_(std::move(hooks)) {
    cfg_.validate();
    if (cfg_.algorithm != Algorithm::coop && cfg_.algorithm != Algorithm::coop2 &&
        cfg_.algorithm != Algorithm::single_delayed)
      throw std::invalid_argument("CoopSimulation runs coop, coop2 or single-delayed");
    if (schedule_.num_actions() != cfg_.num_actions || schedule_.horizon() < cfg_.horizon)
      throw std::invalid_argument("loss schedule dimensions do not match the config");

    n_ = cfg_.num_agents();
    k_ = cfg_.num_actions;
    dist_ = bfs_distances(cfg_.graph);
    params_ = cfg_.algorithm == Algorithm::coop2 ? *cfg_.params : ParamSet::uniform(n_, cfg_.delay, cfg_.delay);
    digraph_ = build_comm_digraph(dist_, params_);
    // Agents with d = 0 under the shared-delay protocol neither send nor relay.
    cutoff_ = params_.ttl;
    max_delay_ = params_.max_delay();
    max_cutoff_ = *std::max_element(cutoff_.begin(), cutoff_.end());
    ring_size_ = std::max(max_delay_, max_cutoff_) + 1;
    ring_actions_.assign(static_cast<std::size_t>(ring_size_) * n_, -1);
    ring_losses_.assign(static_cast<std::size_t>(ring_size_) * n_, 0.0);
    ring_dists_.assign(static_cast<std::size_t>(ring_size_) * n_ * k_, 0.0);
    traffic_ = detail::frontier_traffic(cfg_.graph, dist_, cutoff_);

    learners_.reserve(n_);
    for (Vertex v = 0; v < n_; ++v) {
      const int d = params_.delay[v];
      if (cfg_.rate_mode == RateMode::doubling) {
        schedules_.emplace_back(k_, d);
        doubling_.push_back(DoublingState::start(schedules_.back()));
        learners_.emplace_back(k_, schedules_.back().eta(doubling_.back().r), cfg_.delta, d);
      } else {
        learners_.emplace_back(k_, fixed_eta(d), cfg_.delta, d);
      }
    }
    epoch_round_.assign(n_, 0);
    if (cfg_.delivery == DeliveryMode::flooding) inbox_.resize(n_);
  }

  double fixed_eta(int d) const {
    if (cfg_.eta) return *cfg_.eta;
    return cfg_.gamma / (k_ * std::numbers::e * (d + 1));
  }

  const CommDigraph& digraph() const { return digraph_; }
  const DistanceMatrix& distances() const { return dist_; }
  const PolicyState& learner(Vertex v) const { return learners_.at(v); }

  SimResult run() {
    RoundLog log(n_, k_, cfg_.horizon, cfg_.record_distributions);
    for (int t = 1; t <= cfg_.horizon; ++t) run_round(t, log);
    SimResult result{std::move(log), {}};
    result.report = compute_regret(result.log, schedule_);
    result.report.seeds = {cfg_.seed};
    result.report.drift = drift_;
    for (const auto& ds : doubling_) result.report.restarts += ds.restarts;
    result.report.mean_delay = params_.mean_delay();
    return result;
  }

  void run_round(int t, RoundLog& log) {
    const std::size_t slot = static_cast<std::size_t>(t % ring_size_);
    // 1. play
    for (Vertex v = 0; v < n_; ++v) {
      PolicyState& learner = learners_[v];
      const Distribution& p = learner.distribution();
      learner.mark_played();
      ++epoch_round_[v];
      const int a = sample_action(p, stream_uniform(cfg_.seed, static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(t)));
      const double l = schedule_.loss(t, a);
      log.record(t, v, a, l, p);
      ring_actions_[slot * n_ + v] = a;
      ring_losses_[slot * n_ + v] = l;
      std::copy(p.begin(), p.end(), ring_dists_.begin() + (slot * n_ + v) * k_);
    }
    // 2. exchange
    if (cfg_.delivery == DeliveryMode::logical)
      exchange_logical(t, log);
    else
      exchange_flooding(t, log);
    // 3. update
    std::vector<double> estimate(k_), activation(k_);
    for (Vertex v = 0; v < n_; ++v) update_agent(t, v, estimate, activation);
  }

 private:
  std::span<const double> ring_dist(long long round, Vertex v) const {
    const std::size_t slot = static_cast<std::size_t>(round % ring_size_);
    return {ring_dists_.data() + (slot * n_ + v) * k_, static_cast<std::size_t>(k_)};
  }
  int ring_action(long long round, Vertex v) const { return ring_actions_[static_cast<std::size_t>(round % ring_size_) * n_ + v]; }
  double ring_loss(long long round, Vertex v) const { return ring_losses_[static_cast<std::size_t>(round % ring_size_) * n_ + v]; }

  void exchange_logical(int t, RoundLog& log) {
    const std::size_t row = static_cast<std::size_t>(t - 1);
    log.sent[row] = traffic_.initial;
    for (int s = 1; s <= std::min(max_cutoff_, t - 1); ++s) {
      log.sent[row] += traffic_.forwards[s];
      log.forwarded[row] += traffic_.forwards[s];
      log.delivered[row] += traffic_.deliveries[s];
      log.dropped[row] += traffic_.arrivals[s] - traffic_.forwarders[s];
    }
    if (!hooks_.on_delivery) return;
    for (Vertex w = 0; w < n_; ++w)
      for (Vertex u = 0; u < n_; ++u) {
        const int s = dist_(u, w);
        if (s == DistanceMatrix::kUnreachable || s < 1 || s > cutoff_[u] || t - s < 1) continue;
        hooks_.on_delivery({t - s, u, s, w, ring_action(t - s, u), ring_loss(t - s, u)});
      }
  }

  void transmit(std::vector<std::pair<Vertex, Message>>& out, long long t, Vertex from, Vertex to, const Message& m) {
    Message copy = m;
    copy.hops += 1;
    copy.route.push_back(to);
    if (hooks_.on_transmission) hooks_.on_transmission({t, m.round, m.origin, from, to});
    out.emplace_back(to, std::move(copy));
  }

  void exchange_flooding(int t, RoundLog& log) {
    const std::size_t row = static_cast<std::size_t>(t - 1);
    std::vector<std::pair<Vertex, Message>> outgoing;

    // Receive copies sent at the end of round t - 1.
    std::map<std::pair<Vertex, std::pair<long long, Vertex>>, std::vector<Vertex>> senders;
    std::vector<std::pair<Vertex, const Message*>> fresh;
    for (const auto& [to, m] : in_flight_) {
      const auto key = std::make_pair(m.round, m.origin);
      const Vertex from = m.route[m.route.size() - 2];
      auto& list = senders[{to, key}];
      list.push_back(from);
      if (list.size() == 1 && !inbox_[to].contains(key)) fresh.emplace_back(to, &m);
    }
    long long forwarders = 0;
    for (const auto& [to, m] : fresh) {
      audit_route(*m, to);
      inbox_[to].emplace(std::make_pair(m->round, m->origin), *m);
      log.delivered[row] += 1;
      if (hooks_.on_delivery) hooks_.on_delivery({m->round, m->origin, m->hops, to, m->action, m->loss});
      if (cutoff_[m->origin] - m->hops > 0) {
        ++forwarders;
        const auto& from_list = senders[{to, {m->round, m->origin}}];
        for (Vertex x : cfg_.graph.neighbors(to)) {
          if (std::find(from_list.begin(), from_list.end(), x) != from_list.end()) continue;
          transmit(outgoing, t, to, x, *m);
          log.forwarded[row] += 1;
        }
      }
    }
    log.dropped[row] = static_cast<long long>(in_flight_.size()) - forwarders;

    // Originate m_t(v).
    for (Vertex v = 0; v < n_; ++v) {
      Message m;
      m.round = t;
      m.origin = v;
      m.ttl = cfg_.algorithm == Algorithm::coop2 ? params_.ttl[v] : -1;
      m.action = ring_action(t, v);
      m.loss = ring_loss(t, v);
      const auto p = ring_dist(t, v);
      m.dist = std::make_shared<const Distribution>(p.begin(), p.end());
      m.route = {v};
      if (cutoff_[v] >= 1)
        for (Vertex x : cfg_.graph.neighbors(v)) transmit(outgoing, t, v, x, m);
      inbox_[v].emplace(std::make_pair(m.round, m.origin), std::move(m));
    }
    log.sent[row] = static_cast<long long>(outgoing.size());
    in_flight_ = std::move(outgoing);

    // Nothing older than this can still be used or arrive.
    const long long horizon_back = static_cast<long long>(std::max(max_delay_, max_cutoff_ + 1)) + 1;
    for (auto& box : inbox_)
      while (!box.empty() && box.begin()->first.first < t - horizon_back) box.erase(box.begin());
  }

  void audit_route(const Message& m, Vertex recipient) const {
    if (m.route.front() != m.origin || m.route.back() != recipient)
      throw InvariantViolation("message route endpoints do not match origin/recipient");
    for (std::size_t i = 1; i < m.route.size(); ++i)
      if (!cfg_.graph.has_edge(m.route[i - 1], m.route[i])) throw InvariantViolation("message crossed a non-edge");
    if (static_cast<int>(m.route.size()) - 1 != m.hops) throw InvariantViolation("hop count disagrees with route");
    if (m.hops != dist_(m.origin, recipient)) throw InvariantViolation("first copy did not travel a shortest path");
    if (m.hops > cutoff_[m.origin]) throw InvariantViolation("message outlived its time-to-live");
  }

  EstimatorInput gather(int t, Vertex v) const {
    const int d = params_.delay[v];
    EstimatorInput in{t, v, t - d, {}, {}, {}, {}};
    if (cfg_.delivery == DeliveryMode::logical) {
      for (Vertex u : digraph_.in_neighbors(v)) {
        in.sources.push_back(u);
        in.actions.push_back(ring_action(t - d, u));
        in.losses.push_back(ring_loss(t - d, u));
        const auto p = ring_dist(t - d, u);
        in.dists.emplace_back(p.begin(), p.end());
      }
      return in;
    }
    const auto& box = inbox_[v];
    for (auto it = box.lower_bound({t - d, 0}); it != box.end() && it->first.first == t - d; ++it) {
      const Message& m = it->second;
      if (m.hops > d) continue;
      in.sources.push_back(m.origin);
      in.actions.push_back(m.action);
      in.losses.push_back(m.loss);
      in.dists.push_back(*m.dist);
    }
    if (in.sources != digraph_.in_neighbors(v))
      throw InvariantViolation("agent " + std::to_string(v) + " at round " + std::to_string(t) +
                               ": delivered messages do not match its in-neighborhood");
    return in;
  }

  void update_agent(int t, Vertex v, std::vector<double>& estimate, std::vector<double>& activation) {
    PolicyState& learner = learners_[v];
    const int d = params_.delay[v];
    std::fill(estimate.begin(), estimate.end(), 0.0);
    double q_t = 0.0;
    if (learner.has_delayed()) {
      const EstimatorInput in = gather(t, v);
      const auto self = std::find(in.sources.begin(), in.sources.end(), v) - in.sources.begin();
      if (in.dists[self] != learner.delayed_distribution())
        throw InvariantViolation("own delayed distribution disagrees with the message record");
      for (int i = 0; i < k_; ++i) {
        activation[i] = activation_prob(static_cast<std::size_t>(i), in.dists);
        bool played = false;
        double observed = 0.0;
        for (std::size_t j = 0; j < in.sources.size(); ++j)
          if (in.actions[j] == i) {
            played = true;
            observed = in.losses[j];
            break;
          }
        estimate[i] = loss_estimate(epoch_round_[v], d, observed, played, activation[i]);
      }
      if (hooks_.on_estimator) hooks_.on_estimator(in);
      if (cfg_.rate_mode == RateMode::doubling)
        q_t = q_round_quantity(epoch_round_[v], d, learner.delayed_distribution(), activation);
    }
    const Distribution before = cfg_.check_drift ? learner.distribution() : Distribution{};
    learner.update(estimate);
    if (cfg_.check_drift) {
      ++drift_.steps;
      if (!check_additive_drift(before, learner.distribution(), estimate, learner.eta(), cfg_.delta))
        ++drift_.additive_violations;
      if (!check_multiplicative_drift(before, learner.distribution(), d)) ++drift_.multiplicative_violations;
    }
    if (cfg_.rate_mode == RateMode::doubling && doubling_step(doubling_[v], q_t)) {
      learner.restart(schedules_[v].eta(doubling_[v].r));
      epoch_round_[v] = 0;
    }
  }

  SimConfig cfg_;
  const LossSchedule& schedule_;
  SimHooks hooks_;
  int n_ = 0;
  int k_ = 0;
  DistanceMatrix dist_;
  ParamSet params_;
  CommDigraph digraph_;
  std::vector<int> cutoff_;
  int max_delay_ = 0;
  int max_cutoff_ = 0;
  int ring_size_ = 1;
  std::vector<int> ring_actions_;
  std::vector<double> ring_losses_;
  std::vector<double> ring_dists_;
  detail::FrontierTraffic traffic_;
  std::vector<PolicyState> learners_;
  std::vector<GammaSchedule> schedules_;
  std::vector<DoublingState> doubling_;
  std::vector<long long> epoch_round_;
  DriftAudit drift_;
  std::vector<std::pair<Vertex, Message>> in_flight_;
  std::vector<std::map<std::pair<long long, Vertex>, Message>> inbox_;
};

/// Each agent holds its action for d + 1 rounds and updates once per block on the
/// importance-weighted losses that arrived (d rounds late) since the previous update,
/// scaled by 1 / (d + 1). No cooperation.
inline SimResult baseline_repeat_actions(const SimConfig& cfg, const LossSchedule& schedule) {
  cfg.validate();
  if (cfg.algorithm != Algorithm::baseline_repeat) throw std::invalid_argument("baseline_repeat_actions: wrong algorithm");
  const int n = cfg.num_agents();
  const int k = cfg.num_actions;
  const int block = cfg.delay + 1;
  const double eta = cfg.eta ? *cfg.eta : cfg.gamma / (k * std::numbers::e);
  RoundLog log(n, k, cfg.horizon, cfg.record_distributions);
  std::vector<PolicyState> learners(n, PolicyState(k, eta, 0.0, 0));
  std::vector<int> held(n, 0);
  // distribution of the current and the previous block, indexed by block parity
  std::vector<std::array<Distribution, 2>> block_dist(n);
  std::vector<std::vector<double>> pending(n, std::vector<double>(k, 0.0));
  for (int t = 1; t <= cfg.horizon; ++t) {
    const int b = (t - 1) / block;
    for (int v = 0; v < n; ++v) {
      const Distribution& p = learners[v].distribution();
      if ((t - 1) % block == 0) {
        held[v] = sample_action(p, stream_uniform(cfg.seed, static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(t)));
        block_dist[v][b % 2] = p;
      }
      log.record(t, v, held[v], schedule.loss(t, held[v]), p);
      // loss of round t - d arrives now
      const int src = t - cfg.delay;
      if (src >= 1) {
        const int a = log.action(src, v);
        const std::array<Distribution, 1> own{block_dist[v][((src - 1) / block) % 2]};
        pending[v][a] += loss_estimate(src + cfg.delay, cfg.delay, log.loss(src, v), true,
                                       activation_prob(static_cast<std::size_t>(a), own)) /
                         block;
      }
      if (t % block == 0) {
        learners[v].update(pending[v]);
        std::fill(pending[v].begin(), pending[v].end(), 0.0);
      }
    }
  }
  SimResult result{std::move(log), {}};
  result.report = compute_regret(result.log, schedule);
  result.report.seeds = {cfg.seed};
  result.report.mean_delay = cfg.delay;
  return result;
}

/// d + 1 independent no-delay learners; round t is served by instance (t - 1) mod (d + 1),
/// which updates once that round's loss arrives d rounds later.
inline SimResult baseline_parallel_instances(const SimConfig& cfg, const LossSchedule& schedule) {
  cfg.validate();
  if (cfg.algorithm != Algorithm::baseline_parallel)
    throw std::invalid_argument("baseline_parallel_instances: wrong algorithm");
  const int k = cfg.num_actions;
  const int copies = cfg.delay + 1;
  const double eta = cfg.eta ? *cfg.eta : cfg.gamma / (k * std::numbers::e);
  RoundLog log(1, k, cfg.horizon, cfg.record_distributions);
  std::vector<PolicyState> instances(copies, PolicyState(k, eta, 0.0, 0));
  std::vector<long long> updates(copies, 0);
  std::vector<Distribution> played(static_cast<std::size_t>(cfg.horizon) + 1);
  std::vector<double> estimate(k);

  auto deliver = [&](int src) {
    const int inst = (src - 1) % copies;
    const int a = log.action(src, 0);
    std::fill(estimate.begin(), estimate.end(), 0.0);
    const std::vector<Distribution> single{played[src]};
    estimate[a] = loss_estimate(1, 0, log.loss(src, 0), true, activation_prob(static_cast<std::size_t>(a), single));
    instances[inst].update(estimate);
    ++updates[inst];
  };

  for (int t = 1; t <= cfg.horizon; ++t) {
    const int inst = (t - 1) % copies;
    played[t] = instances[inst].distribution();
    const int a = sample_action(played[t], stream_uniform(cfg.seed, 0, static_cast<std::uint64_t>(t)));
    log.record(t, 0, a, schedule.loss(t, a), played[t]);
    if (t - cfg.delay >= 1) deliver(t - cfg.delay);
  }
  // feedback still in transit at the horizon
  for (int src = std::max(1, cfg.horizon - cfg.delay + 1); src <= cfg.horizon; ++src) deliver(src);

  SimResult result{std::move(log), {}};
  result.report = compute_regret(result.log, schedule);
  result.report.seeds = {cfg.seed};
  result.report.instance_updates = std::move(updates);
  result.report.mean_delay = cfg.delay;
  return result;
}

/// Runs one configuration under one seed.
inline SimResult run_experiment(const SimConfig& cfg, const LossSchedule& schedule, SimHooks hooks = {}) {
  switch (cfg.algorithm) {
    case Algorithm::baseline_repeat: return baseline_repeat_actions(cfg, schedule);
    case Algorithm::baseline_parallel: return baseline_parallel_instances(cfg, schedule);
    default: return CoopSimulation(cfg, schedule, std::move(hooks)).run();
  }
}

/// Exp3 with losses observed d rounds late: the single-vertex instance of the cooperative algorithm.
inline SimResult single_agent_delayed(SimConfig cfg, const LossSchedule& schedule) {
  cfg.algorithm = Algorithm::single_delayed;
  if (cfg.graph.num_vertices() == 0) cfg.graph = Graph(1);
  return run_experiment(cfg, schedule);
}

}  // namespace coopbandits
