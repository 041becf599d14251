#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopbandits/adversary.hpp"

namespace coopbandits {

/// Per-round record of one simulation.
struct RoundLog {
  int num_agents = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<int> actions;           // horizon x agents
  std::vector<double> losses;         // horizon x agents
  std::vector<long long> sent;        // per round
  std::vector<long long> forwarded;   // per round
  std::vector<long long> dropped;     // per round
  std::vector<long long> delivered;   // per round
  std::vector<double> distributions;  // horizon x agents x actions, empty unless recorded

  RoundLog() = default;
  RoundLog(int agents, int k, int rounds, bool with_distributions)
      : num_agents(agents),
        num_actions(k),
        horizon(rounds),
        actions(cells(), -1),
        losses(cells(), 0.0),
        sent(rounds, 0),
        forwarded(rounds, 0),
        dropped(rounds, 0),
        delivered(rounds, 0) {
    if (with_distributions) distributions.assign(cells() * static_cast<std::size_t>(k), 0.0);
  }

  bool has_distributions() const { return !distributions.empty(); }

  int action(int t, int v) const { return actions[cell(t, v)]; }
  double loss(int t, int v) const { return losses[cell(t, v)]; }

  std::span<const double> distribution(int t, int v) const {
    if (!has_distributions()) throw std::logic_error("RoundLog: distributions were not recorded");
    return {distributions.data() + cell(t, v) * num_actions, static_cast<std::size_t>(num_actions)};
  }

  void record(int t, int v, int a, double l, std::span<const double> p) {
    actions[cell(t, v)] = a;
    losses[cell(t, v)] = l;
    if (has_distributions()) std::copy(p.begin(), p.end(), distributions.begin() + cell(t, v) * num_actions);
  }

  long long total(const std::vector<long long>& counter) const {
    long long sum = 0;
    for (auto c : counter) sum += c;
    return sum;
  }

 private:
  std::size_t cells() const { return static_cast<std::size_t>(num_agents) * static_cast<std::size_t>(horizon); }
  std::size_t cell(int t, int v) const {
    if (t < 1 || t > horizon || v < 0 || v >= num_agents) throw std::out_of_range("RoundLog index");
    return static_cast<std::size_t>(t - 1) * num_agents + static_cast<std::size_t>(v);
  }
};

struct DriftAudit {
  long long steps = 0;
  long long additive_violations = 0;
  long long multiplicative_violations = 0;
};

/// Regret summary for one run, or the seed aggregate of several.
struct RegretReport {
  double avg_welfare_regret = 0.0;
  std::vector<double> per_agent_regret;
  long long messages_sent = 0;
  long long messages_forwarded = 0;
  long long messages_dropped = 0;
  long long messages_delivered = 0;
  long long restarts = 0;
  DriftAudit drift;
  std::vector<long long> instance_updates;  // parallel-instances baseline only

  std::vector<std::uint64_t> seeds;
  double mean = 0.0;
  double standard_error = 0.0;

  std::string config_key;
  std::optional<int> alpha;
  std::optional<int> diameter;
  double mean_delay = 0.0;
  std::optional<double> bound;
};

/// Realized regret against the best fixed action (lowest index on ties).
inline RegretReport compute_regret(const RoundLog& log, const LossSchedule& schedule) {
  RegretReport report;
  const auto totals = [&] {
    std::vector<double> total(schedule.num_actions(), 0.0);
    for (int t = 1; t <= log.horizon; ++t)
      for (int i = 0; i < schedule.num_actions(); ++i) total[i] += schedule.loss(t, i);
    return total;
  }();
  const double best = *std::min_element(totals.begin(), totals.end());
  report.per_agent_regret.assign(log.num_agents, 0.0);
  for (int t = 1; t <= log.horizon; ++t)
    for (int v = 0; v < log.num_agents; ++v) report.per_agent_regret[v] += log.loss(t, v);
  double sum = 0.0;
  for (double& r : report.per_agent_regret) {
    r -= best;
    sum += r;
  }
  report.avg_welfare_regret = sum / log.num_agents;
  report.mean = report.avg_welfare_regret;
  report.messages_sent = log.total(log.sent);
  report.messages_forwarded = log.total(log.forwarded);
  report.messages_dropped = log.total(log.dropped);
  report.messages_delivered = log.total(log.delivered);
  return report;
}

struct CurvePoint {
  int round;
  double avg_cum_regret;
};

/// Average cumulative regret against the best action of each prefix, at most `max_points` rounds.
inline std::vector<CurvePoint> regret_curve(const RoundLog& log, const LossSchedule& schedule, int max_points = 1000) {
  const int points = std::min(log.horizon, max_points);
  std::vector<CurvePoint> curve;
  curve.reserve(points);
  std::vector<double> action_total(schedule.num_actions(), 0.0);
  double agent_total = 0.0;
  int next = 1;
  for (int t = 1; t <= log.horizon; ++t) {
    for (int i = 0; i < schedule.num_actions(); ++i) action_total[i] += schedule.loss(t, i);
    for (int v = 0; v < log.num_agents; ++v) agent_total += log.loss(t, v);
    const int target = static_cast<int>((static_cast<long long>(next) * log.horizon + points - 1) / points);
    if (t == target) {
      const double best = *std::min_element(action_total.begin(), action_total.end());
      curve.push_back({t, agent_total / log.num_agents - best});
      ++next;
    }
  }
  return curve;
}

/// Mean and standard error of avg_welfare_regret across seeds; per-agent means; pooled counters.
inline RegretReport aggregate(const std::vector<RegretReport>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no reports");
  RegretReport out = runs.front();
  const std::size_t n = runs.size();
  for (const auto& r : runs) {
    if (r.config_key != out.config_key) throw std::invalid_argument("aggregate: reports come from different configs");
    if (r.per_agent_regret.size() != out.per_agent_regret.size())
      throw std::invalid_argument("aggregate: agent count mismatch");
  }
  out.seeds.clear();
  out.per_agent_regret.assign(out.per_agent_regret.size(), 0.0);
  out.messages_sent = out.messages_forwarded = out.messages_dropped = out.messages_delivered = 0;
  out.restarts = 0;
  out.drift = {};
  double sum = 0.0;
  for (const auto& r : runs) {
    sum += r.avg_welfare_regret;
    for (std::size_t v = 0; v < r.per_agent_regret.size(); ++v) out.per_agent_regret[v] += r.per_agent_regret[v];
    out.messages_sent += r.messages_sent;
    out.messages_forwarded += r.messages_forwarded;
    out.messages_dropped += r.messages_dropped;
    out.messages_delivered += r.messages_delivered;
    out.restarts += r.restarts;
    out.drift.steps += r.drift.steps;
    out.drift.additive_violations += r.drift.additive_violations;
    out.drift.multiplicative_violations += r.drift.multiplicative_violations;
    out.seeds.insert(out.seeds.end(), r.seeds.begin(), r.seeds.end());
  }
  for (double& x : out.per_agent_regret) x /= static_cast<double>(n);
  out.mean = sum / static_cast<double>(n);
  out.avg_welfare_regret = out.mean;
  double squares = 0.0;
  for (const auto& r : runs) squares += (r.avg_welfare_regret - out.mean) * (r.avg_welfare_regret - out.mean);
  out.standard_error = n > 1 ? std::sqrt(squares / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return out;
}

}  // namespace coopbandits
