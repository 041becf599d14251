#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace coopbandits {

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline constexpr double kOneMinusInvE = 1.0 - 1.0 / std::numbers::e;

}  // namespace detail

/// Fixed-gamma regret bound of the cooperative algorithm:
/// 2d + K e (d+1) ln K / gamma + gamma (alpha / (2 (1 - 1/e) (d+1) N) + 3 / (K e)) T.
inline double evaluate_bound_thm1(int d, int k, double gamma, int n, double alpha, double horizon) {
  detail::require(d >= 0, "bound: d must be >= 0");
  detail::require(k >= 2, "bound: K must be >= 2");
  detail::require(gamma > 0.0 && gamma <= 1.0, "bound: gamma must be in (0, 1]");
  detail::require(n >= 1, "bound: N must be >= 1");
  detail::require(alpha >= 1.0 && alpha <= n, "bound: alpha must be in [1, N]");
  detail::require(horizon >= 0.0, "bound: T must be >= 0");
  const double e = std::numbers::e;
  return 2.0 * d + k * e * (d + 1) * std::log(static_cast<double>(k)) / gamma +
         gamma * (alpha / (2.0 * detail::kOneMinusInvE * (d + 1) * n) + 3.0 / (k * e)) * horizon;
}

/// Explicit bound for the truncated variant with delta = 1/T:
/// 3 dbar + eta T dbar + (1 + ln K) / eta + (e eta / (2 (1 - 1/e))) T (6 (K/N) alpha ln(1 + 2 T N^2 K) + 1).
inline double evaluate_bound_thm3(double mean_delay, int k, double eta, int n, double alpha, double horizon) {
  detail::require(mean_delay >= 0.0, "bound: mean delay must be >= 0");
  detail::require(k >= 2, "bound: K must be >= 2");
  detail::require(eta > 0.0 && std::isfinite(eta), "bound: eta must be > 0");
  detail::require(n >= 1, "bound: N must be >= 1");
  detail::require(alpha >= 1.0 && alpha <= n, "bound: alpha must be in [1, N]");
  detail::require(horizon >= 1.0, "bound: T must be >= 1");
  const double e = std::numbers::e;
  const double kk = k;
  const double nn = n;
  return 3.0 * mean_delay + eta * horizon * mean_delay + (1.0 + std::log(kk)) / eta +
         (e * eta / (2.0 * detail::kOneMinusInvE)) * horizon *
             (6.0 * (kk / nn) * alpha * std::log(1.0 + 2.0 * horizon * nn * nn * kk) + 1.0);
}

/// Same bound with the truncation parameter passed explicitly; only delta = 1/T is covered.
inline double evaluate_bound_thm3(double mean_delay, int k, double eta, int n, double alpha, double horizon, double delta) {
  detail::require(horizon >= 1.0, "bound: T must be >= 1");
  detail::require(std::abs(delta * horizon - 1.0) <= 1e-12, "bound: the explicit form holds for delta = 1/T only");
  return evaluate_bound_thm3(mean_delay, k, eta, n, alpha, horizon);
}

struct SingleDelayedBound {
  double bound;      // fixed-gamma bound at N = alpha = 1
  double reduction;  // sqrt((d + 1) K T), shape of the parallel-instances baseline
};

inline SingleDelayedBound evaluate_bound_single_delayed(int d, int k, double horizon, double gamma) {
  return {evaluate_bound_thm1(d, k, gamma, 1, 1.0, horizon), std::sqrt((d + 1.0) * k * horizon)};
}

struct GammaChoice {
  int exponent;  // gamma = 2^-exponent
  double gamma;
  double bound;
};

inline constexpr int kGammaGridMax = 40;

/// Minimizes the fixed-gamma bound over gamma in {2^-k : k = 0..40}; lowest k wins ties.
inline GammaChoice auto_gamma(int d, int k, int n, double alpha, double horizon) {
  GammaChoice best{0, 1.0, evaluate_bound_thm1(d, k, 1.0, n, alpha, horizon)};
  for (int e = 1; e <= kGammaGridMax; ++e) {
    const double g = std::ldexp(1.0, -e);
    const double b = evaluate_bound_thm1(d, k, g, n, alpha, horizon);
    if (b < best.bound) best = {e, g, b};
  }
  return best;
}

}  // namespace coopbandits
