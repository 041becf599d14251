#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "coopbandits/drift_checks.hpp"
#include "coopbandits/graph_io.hpp"
#include "coopbandits/verify.hpp"

using namespace coopbandits;

namespace {

Distribution step(const Distribution& p, const std::vector<double>& est, double eta, double delta) {
  return emit_distribution(exp_update(p, est, eta), delta);
}

}  // namespace

TEST(AdditiveDrift, ZeroEstimateHolds) {
  const Distribution p{0.7, 0.2, 0.1};
  const std::vector<double> zero(3, 0.0);
  for (double delta : {0.0, 0.3}) {
    const auto next = step(p, zero, 0.05, delta);
    EXPECT_TRUE(check_additive_drift(p, next, zero, 0.05, delta));
  }
}

TEST(AdditiveDrift, GenuineUpdatesHold) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = 2 + trial % 9;
    Distribution p(k);
    double total = 0.0;
    for (double& x : p) total += (x = unit(rng) + 1e-3);
    for (double& x : p) x /= total;
    std::vector<double> est(k);
    for (double& x : est) x = unit(rng) < 0.5 ? 0.0 : unit(rng) / (unit(rng) + 1e-3);
    const double eta = unit(rng) / (k * std::numbers::e);
    const double delta = trial % 2 ? 0.0 : unit(rng);
    EXPECT_TRUE(check_additive_drift(p, step(p, est, eta, delta), est, eta, delta));
  }
}

TEST(AdditiveDrift, DetectsFabricatedDrop) {
  const Distribution p{0.5, 0.5};
  const std::vector<double> est{0.1, 0.0};
  // lower bound for action 0 is -eta * 0.5 * 0.1 = -0.005
  EXPECT_FALSE(check_additive_drift(p, Distribution{0.4, 0.6}, est, 0.1, 0.0));
  EXPECT_FALSE(check_additive_drift(p, Distribution{0.4, 0.6}, est, 0.1, 0.01));
}

TEST(AdditiveDrift, DetectsFabricatedRise) {
  const Distribution p{0.5, 0.5};
  const std::vector<double> est{0.0, 0.0};
  EXPECT_FALSE(check_additive_drift(p, Distribution{0.6, 0.4}, est, 0.1, 0.0));
}

TEST(AdditiveDrift, SizeMismatchThrows) {
  EXPECT_THROW(check_additive_drift(Distribution{0.5, 0.5}, Distribution{1.0}, std::vector<double>{0, 0}, 0.1, 0.0),
               std::invalid_argument);
}

TEST(MultiplicativeDrift, Cases) {
  const Distribution p{0.2, 0.8};
  EXPECT_TRUE(check_multiplicative_drift(p, p, 3));
  EXPECT_FALSE(check_multiplicative_drift(p, Distribution{0.4, 0.6}, 2));
  EXPECT_TRUE(check_multiplicative_drift(p, Distribution{0.4, 0.6}, 1));  // factor 2 allowed at d = 1
  EXPECT_TRUE(check_multiplicative_drift(p, Distribution{0.9, 0.1}, 0));
  EXPECT_THROW(check_multiplicative_drift(p, p, -1), std::invalid_argument);
}

TEST(QsumBound, SingleVertex) {
  EXPECT_TRUE(check_qsum_bound(Graph(1), {{0.3, 0.7}}));
  EXPECT_TRUE(check_qsum_bound(CommDigraph(1), {{0.3, 0.7}}, 0.1));
}

TEST(QsumBound, EdgelessGraphIsTight) {
  // q = p, so the sum is N and alpha = N
  std::vector<Distribution> dists(6, Distribution{0.01, 0.99});
  EXPECT_TRUE(check_qsum_bound(Graph(6), dists));
}

TEST(QsumBound, DirectedNeedsFloorAndPositiveDelta) {
  EXPECT_THROW(check_qsum_bound(CommDigraph(2), {{0.5, 0.5}, {0.5, 0.5}}, 0.0), std::invalid_argument);
  EXPECT_THROW(check_qsum_bound(CommDigraph(2), {{0.001, 0.999}, {0.5, 0.5}}, 0.1), std::invalid_argument);
}

TEST(QsumBound, CapExceeded) {
  std::vector<Distribution> dists(41, Distribution{0.5, 0.5});
  EXPECT_THROW(check_qsum_bound(Graph(41), dists), std::invalid_argument);
  EXPECT_TRUE(check_qsum_bound(Graph(41), dists, 64));
}

TEST(QsumBound, DistributionCountMustMatch) {
  EXPECT_THROW(check_qsum_bound(Graph(3), {{0.5, 0.5}}), std::invalid_argument);
}

TEST(Suites, LemmasOnRandomTrajectories) {
  const auto r = verify_lemmas(10000, 99);
  EXPECT_EQ(r.checks, 10000);
  EXPECT_TRUE(r.passed()) << r.counterexample.value_or("");
}

TEST(Suites, Unbiasedness) {
  const auto r = verify_unbiasedness(20, 5);
  EXPECT_EQ(r.checks, 20 * 3 * 2 * 3);
  EXPECT_TRUE(r.passed()) << r.counterexample.value_or("");
  EXPECT_LT(r.max_error, 1e-12);
}

TEST(Suites, QsumBounds) {
  const auto r = verify_qsum(200, 6);
  EXPECT_EQ(r.checks, 400);
  EXPECT_TRUE(r.passed()) << r.counterexample.value_or("");
}

TEST(Suites, Equivalence) {
  const auto r = verify_equivalence(2, 3, 300);
  EXPECT_TRUE(r.passed()) << r.counterexample.value_or("");
  EXPECT_LT(r.max_error, 1e-12);
}

TEST(Suites, UnknownNameAndTrials) {
  EXPECT_THROW(run_verify_suite("nope", 1, 0), std::invalid_argument);
  EXPECT_THROW(run_verify_suite("lemmas", 0, 0), std::invalid_argument);
  EXPECT_EQ(run_verify_suite("lemmas", 37, 0).checks, 37);
}
