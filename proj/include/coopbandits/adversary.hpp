#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopbandits/graph_io.hpp"

namespace coopbandits {

/// Oblivious adversary: a dense horizon x K matrix of losses in [0, 1], fixed before play.
class LossSchedule {
 public:
  LossSchedule(int horizon, int num_actions, std::vector<double> losses, std::string provenance)
      : horizon_(horizon), k_(num_actions), losses_(std::move(losses)), provenance_(std::move(provenance)) {
    if (horizon_ < 1 || k_ < 1) throw std::invalid_argument("LossSchedule: empty dimensions");
    if (losses_.size() != static_cast<std::size_t>(horizon_) * static_cast<std::size_t>(k_))
      throw std::invalid_argument("LossSchedule: matrix size does not match dimensions");
    for (std::size_t idx = 0; idx < losses_.size(); ++idx) {
      const double x = losses_[idx];
      if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("LossSchedule: loss " + std::to_string(x) + " at round " +
                                    std::to_string(idx / k_ + 1) + ", action " + std::to_string(idx % k_) +
                                    " outside [0, 1]");
    }
  }

  int horizon() const { return horizon_; }
  int num_actions() const { return k_; }
  const std::string& provenance() const { return provenance_; }

  /// Loss of `action` at 1-based round t.
  double loss(int t, int action) const { return losses_[offset(t) + static_cast<std::size_t>(action)]; }

  std::span<const double> round(int t) const { return {losses_.data() + offset(t), static_cast<std::size_t>(k_)}; }

  /// Cumulative loss of each action over rounds 1..horizon.
  std::vector<double> cumulative() const {
    std::vector<double> total(k_, 0.0);
    for (int t = 1; t <= horizon_; ++t)
      for (int i = 0; i < k_; ++i) total[i] += loss(t, i);
    return total;
  }

  /// Lowest-index action with minimum cumulative loss.
  int best_action() const {
    const auto total = cumulative();
    return static_cast<int>(std::min_element(total.begin(), total.end()) - total.begin());
  }

 private:
  std::size_t offset(int t) const {
    if (t < 1 || t > horizon_) throw std::out_of_range("round " + std::to_string(t) + " outside schedule");
    return static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(k_);
  }

  int horizon_;
  int k_;
  std::vector<double> losses_;
  std::string provenance_;
};

namespace detail {

inline void check_gap(double low, double high, double jitter) {
  if (!(low >= 0.0 && low < high && high <= 1.0))
    throw std::invalid_argument("loss bounds must satisfy 0 <= low < high <= 1");
  if (!(jitter >= 0.0) || low - jitter < 0.0 || high + jitter > 1.0)
    throw std::invalid_argument("jitter must be >= 0 and keep low - jitter >= 0, high + jitter <= 1");
}

inline void fill_with_jitter(std::vector<double>& losses, double jitter, std::uint64_t seed) {
  if (jitter == 0.0) return;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-jitter, jitter);
  for (double& x : losses) x += noise(rng);
}

/// Seeded cyclic order of the K actions.
inline std::vector<int> arm_cycle(int k, std::uint64_t seed) {
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = k - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(order[i], order[pick(rng)]);
  }
  return order;
}

}  // namespace detail

/// bestArm gets `low` every round, the others `high`; optional symmetric jitter in [-jitter, jitter].
inline LossSchedule gen_constant_gap(int horizon, int k, int best_arm, double low, double high,
                                     std::uint64_t seed, double jitter = 0.0) {
  detail::check_gap(low, high, jitter);
  if (best_arm < 0 || best_arm >= k) throw std::invalid_argument("best arm out of range");
  std::vector<double> losses(static_cast<std::size_t>(horizon) * k, high);
  for (int t = 0; t < horizon; ++t) losses[static_cast<std::size_t>(t) * k + best_arm] = low;
  detail::fill_with_jitter(losses, jitter, seed);
  return LossSchedule(horizon, k, std::move(losses),
                      "const:" + std::to_string(k) + ":" + std::to_string(best_arm) + ":" + std::to_string(low) +
                          ":" + std::to_string(high));
}

/// The low-loss arm changes every ceil(horizon / phases) rounds, following a seeded cycle over the arms.
inline LossSchedule gen_shifting(int horizon, int k, int phases, double low, double high, std::uint64_t seed,
                                 double jitter = 0.0) {
  if (phases < 1) throw std::invalid_argument("shifting adversary needs phases >= 1");
  detail::check_gap(low, high, jitter);
  const auto cycle = detail::arm_cycle(k, seed);
  const int phase_len = (horizon + phases - 1) / phases;
  std::vector<double> losses(static_cast<std::size_t>(horizon) * k, high);
  for (int t = 0; t < horizon; ++t) {
    const int arm = cycle[static_cast<std::size_t>(t / phase_len) % cycle.size()];
    losses[static_cast<std::size_t>(t) * k + arm] = low;
  }
  detail::fill_with_jitter(losses, jitter, seed);
  return LossSchedule(horizon, k, std::move(losses),
                      "shift:" + std::to_string(phases) + ":" + std::to_string(low) + ":" + std::to_string(high));
}

/// CSV: one round per line, K comma-separated losses in [0, 1].
inline LossSchedule parse_schedule(std::istream& in, const std::string& provenance) {
  std::vector<double> losses;
  int k = -1;
  int rows = 0;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = detail::split(line, ',');
    if (k < 0) k = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != k)
      throw std::invalid_argument("loss CSV row " + std::to_string(lineno) + ": expected " + std::to_string(k) +
                                  " values, got " + std::to_string(fields.size()));
    for (std::size_t col = 0; col < fields.size(); ++col) {
      std::string cell = fields[col];
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      const std::string where = "loss CSV row " + std::to_string(lineno) + ", column " + std::to_string(col + 1);
      const double x = detail::parse_double(cell, where);
      if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(where + ": value " + cell + " outside [0, 1]");
      losses.push_back(x);
    }
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("loss CSV '" + provenance + "' is empty");
  return LossSchedule(rows, k, std::move(losses), provenance);
}

inline LossSchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open loss schedule '" + path + "'");
  return parse_schedule(in, "file:" + path);
}

/// "const:K:best:lo:hi[:jitter]", "shift:phases:lo:hi[:jitter]" or "file:path".
/// Generated schedules take their horizon and K from the caller; files must match them.
inline LossSchedule make_schedule(const std::string& spec, int horizon, int k, std::uint64_t seed) {
  const auto parts = detail::split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "file") {
    if (parts.size() < 2) throw std::invalid_argument("adversary spec 'file:' needs a path");
    auto schedule = load_schedule(spec.substr(5));
    if (schedule.num_actions() != k || schedule.horizon() < horizon)
      throw std::invalid_argument("loss file has " + std::to_string(schedule.horizon()) + "x" +
                                  std::to_string(schedule.num_actions()) + " entries; need at least " +
                                  std::to_string(horizon) + "x" + std::to_string(k));
    return schedule;
  }
  if (kind == "const") {
    if (parts.size() != 5 && parts.size() != 6) throw std::invalid_argument("expected const:K:best:lo:hi[:jitter]");
    const int spec_k = detail::positive_count(parts[1], "const K");
    if (spec_k != k) throw std::invalid_argument("adversary K = " + parts[1] + " does not match K = " + std::to_string(k));
    const auto best = detail::parse_int(parts[2], "const best arm");
    const double jitter = parts.size() == 6 ? detail::parse_double(parts[5], "jitter") : 0.0;
    return gen_constant_gap(horizon, k, static_cast<int>(best), detail::parse_double(parts[3], "low loss"),
                            detail::parse_double(parts[4], "high loss"), seed, jitter);
  }
  if (kind == "shift") {
    if (parts.size() != 4 && parts.size() != 5) throw std::invalid_argument("expected shift:phases:lo:hi[:jitter]");
    const double jitter = parts.size() == 5 ? detail::parse_double(parts[4], "jitter") : 0.0;
    return gen_shifting(horizon, k, detail::positive_count(parts[1], "phases"), detail::parse_double(parts[2], "low loss"),
                        detail::parse_double(parts[3], "high loss"), seed, jitter);
  }
  throw std::invalid_argument("unknown adversary spec '" + spec + "'");
}

}  // namespace coopbandits
