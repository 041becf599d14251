#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopbandits {

using Distribution = std::vector<double>;

/// Exponential-weights distribution from log-domain weights.
///
/// With delta == 0 this is w / W. With delta > 0 every normalized weight is
/// first raised to at least delta / K and the result renormalized, so each
/// entry is at least delta / (K (1 + delta)).
inline Distribution emit_distribution(std::span<const double> log_weights, double delta) {
  const std::size_t k = log_weights.size();
  if (k == 0) throw std::invalid_argument("emit_distribution: empty weight vector");
  if (!(delta >= 0.0)) throw std::invalid_argument("emit_distribution: delta must be >= 0");
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) throw std::invalid_argument("emit_distribution: non-finite log weight");
  Distribution p(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    p[i] = std::exp(log_weights[i] - top);
    total += p[i];
  }
  for (double& x : p) x /= total;
  if (delta > 0.0) {
    const double floor = delta / static_cast<double>(k);
    double truncated_total = 0.0;
    for (double& x : p) {
      x = std::max(x, floor);
      truncated_total += x;
    }
    for (double& x : p) x /= truncated_total;
  }
  return p;
}

/// One exponential update: new log-weight of i is log p(i) - eta * estimate(i).
/// The update multiplies the played probability, not the previous weight.
inline std::vector<double> exp_update(std::span<const double> played, std::span<const double> estimate,
                                      double eta) {
  if (played.size() != estimate.size()) throw std::invalid_argument("exp_update: size mismatch");
  std::vector<double> log_w(played.size());
  for (std::size_t i = 0; i < played.size(); ++i) {
    if (estimate[i] < 0.0) throw std::invalid_argument("exp_update: negative loss estimate");
    log_w[i] = std::log(played[i]) - eta * estimate[i];
  }
  return log_w;
}

/// Probability that at least one of the given distributions draws action i:
/// 1 - prod_v (1 - p_v(i)).
template <typename Range>
double activation_prob(std::size_t action, const Range& dists) {
  double miss = 1.0;
  bool any = false;
  for (const auto& p : dists) {
    miss *= 1.0 - p[action];
    any = true;
  }
  if (!any) throw std::invalid_argument("activation_prob: empty neighborhood");
  return 1.0 - miss;
}

/// Raised when an internal invariant fails; indicates a wiring bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Importance-weighted delayed estimate loss * activated / q for t > d, else 0.
inline double loss_estimate(long long t, int d, double observed_loss, bool activated, double q) {
  if (t <= d || !activated) return 0.0;
  if (!(q > 0.0)) throw InvariantViolation("loss_estimate: activated action with q <= 0");
  return observed_loss / q;
}

/// Variance proxy driving the local doubling trick:
/// [t > d] * (d + (e / 2) * sum_i p_{t-d}(i) / q(i)).
inline double q_round_quantity(long long t, int d, std::span<const double> own_delayed,
                               std::span<const double> activation) {
  if (t <= d) return 0.0;
  if (own_delayed.size() != activation.size()) throw std::invalid_argument("q_round_quantity: size mismatch");
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < own_delayed.size(); ++i) ratio_sum += own_delayed[i] / activation[i];
  return static_cast<double>(d) + 0.5 * std::numbers::e * ratio_sum;
}

/// gamma_r = K e (d + 1) sqrt(ln K / 2^r) for r >= r0.
class GammaSchedule {
 public:
  GammaSchedule(int num_actions, int delay) : k_(num_actions), d_(delay) {
    if (k_ < 2) throw std::invalid_argument("GammaSchedule: K must be >= 2");
    if (d_ < 0) throw std::invalid_argument("GammaSchedule: d must be >= 0");
    const double scale = k_ * std::numbers::e * (d_ + 1);
    r0_ = static_cast<int>(std::ceil(std::log2(std::log(static_cast<double>(k_))) + 2.0 * std::log2(scale)));
    // ceil() of a value landing within rounding of an integer can be off by one.
    while (unchecked_gamma(r0_) > 1.0) ++r0_;
    while (unchecked_gamma(r0_ - 1) <= 1.0) --r0_;
  }

  int r0() const { return r0_; }

  double gamma(int r) const {
    if (r < r0_) throw std::invalid_argument("gamma_r requested for r = " + std::to_string(r) + " < r0 = " +
                                             std::to_string(r0_));
    return unchecked_gamma(r);
  }

  /// Learning rate gamma_r / (K e (d + 1)) = sqrt(ln K / 2^r).
  double eta(int r) const { return gamma(r) / (k_ * std::numbers::e * (d_ + 1)); }

  double unchecked_gamma(int r) const {
    return k_ * std::numbers::e * (d_ + 1) * std::sqrt(std::log(static_cast<double>(k_)) / std::ldexp(1.0, r));
  }

 private:
  int k_;
  int d_;
  int r0_ = 0;
};

struct DoublingState {
  int r = 0;
  int r0 = 0;
  double accumulator = 0.0;
  int restarts = 0;

  static DoublingState start(const GammaSchedule& schedule) {
    return DoublingState{schedule.r0(), schedule.r0(), 0.0, 0};
  }
};

/// Adds Q_t to the epoch sum; restarts (r += 1, sum reset) once the sum strictly exceeds 2^r.
inline bool doubling_step(DoublingState& state, double q_t) {
  if (!(q_t >= 0.0)) throw std::invalid_argument("doubling_step: Q_t must be >= 0");
  state.accumulator += q_t;
  if (state.accumulator > std::ldexp(1.0, state.r)) {
    ++state.r;
    ++state.restarts;
    state.accumulator = 0.0;
    return true;
  }
  return false;
}

/// One agent's exponential-weights learner with a delay-d history of played distributions.
class PolicyState {
 public:
  PolicyState(int num_actions, double eta, double delta, int delay)
      : log_weights_(check_actions(num_actions), 0.0), eta_(eta), delta_(delta), delay_(delay) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("PolicyState: eta must be > 0");
    if (!(delta >= 0.0)) throw std::invalid_argument("PolicyState: delta must be >= 0");
    if (delay < 0) throw std::invalid_argument("PolicyState: delay must be >= 0");
    current_ = emit_distribution(log_weights_, delta_);
  }

  int num_actions() const { return static_cast<int>(log_weights_.size()); }
  double eta() const { return eta_; }
  double delta() const { return delta_; }
  int delay() const { return delay_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

  /// Distribution the agent plays this round.
  const Distribution& distribution() const { return current_; }

  /// Records the current distribution as played; keeps the last d + 1.
  void mark_played() {
    history_.push_back(current_);
    if (static_cast<int>(history_.size()) > delay_ + 1) history_.pop_front();
  }

  /// True once a distribution from exactly d rounds ago (in this epoch) is on record.
  bool has_delayed() const { return static_cast<int>(history_.size()) == delay_ + 1; }

  /// p_{t-d} for the current epoch.
  const Distribution& delayed_distribution() const {
    if (!has_delayed()) throw InvariantViolation("delayed distribution requested before d + 1 rounds");
    return history_.front();
  }

  std::size_t history_size() const { return history_.size(); }

  /// Applies the exponential update against the current (played) distribution.
  void update(std::span<const double> estimate) {
    if (static_cast<int>(estimate.size()) != num_actions())
      throw std::invalid_argument("PolicyState::update: estimate has wrong length");
    log_weights_ = exp_update(current_, estimate, eta_);
    current_ = emit_distribution(log_weights_, delta_);
  }

  /// Fresh learner with a new rate; the delayed-distribution history is cleared.
  void restart(double new_eta) {
    if (!(new_eta > 0.0)) throw std::invalid_argument("PolicyState::restart: eta must be > 0");
    eta_ = new_eta;
    std::fill(log_weights_.begin(), log_weights_.end(), 0.0);
    current_ = emit_distribution(log_weights_, delta_);
    history_.clear();
  }

 private:
  static std::size_t check_actions(int k) {
    if (k < 1) throw std::invalid_argument("PolicyState: need at least one action");
    return static_cast<std::size_t>(k);
  }

  std::vector<double> log_weights_;
  Distribution current_;
  std::deque<Distribution> history_;
  double eta_;
  double delta_;
  int delay_;
};

}  // namespace coopbandits
