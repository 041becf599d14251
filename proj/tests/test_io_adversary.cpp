#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "coopbandits/adversary.hpp"
#include "coopbandits/graph_io.hpp"

using namespace coopbandits;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

LossSchedule parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_schedule(in, "inline");
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(EdgeList, InfersVertexCount) {
  const Graph g = parse("# comment\n0 1\n1 2\n\n2 4\n");
  EXPECT_EQ(g.num_vertices(), 5);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.has_edge(4, 2));
}

TEST(EdgeList, HeaderAddsIsolatedVertices) {
  const Graph g = parse("n 7\n0 1\n");
  EXPECT_EQ(g.num_vertices(), 7);
  EXPECT_EQ(g.degree(6), 0);
}

TEST(EdgeList, ErrorsCarryLineNumbers) {
  EXPECT_NE(error_of([] { parse("0 1\n1 x\n"); }).find("line 2"), std::string::npos);
  EXPECT_NE(error_of([] { parse("0 1\n3 3\n"); }).find("self-loop"), std::string::npos);
  EXPECT_NE(error_of([] { parse("0 1\nn 4\n"); }).find("first"), std::string::npos);
  EXPECT_NE(error_of([] { parse("n 2\n0 5\n"); }).find("n = 2"), std::string::npos);
  EXPECT_NE(error_of([] { parse("0 1 2\n"); }).find("too many"), std::string::npos);
}

TEST(EdgeList, RoundTrip) {
  const Graph g = make_barbell(4, 3);
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(parse(out.str()), g);
}

TEST(Generators, Shapes) {
  EXPECT_EQ(make_path(6).num_edges(), 5u);
  EXPECT_EQ(make_cycle(6).num_edges(), 6u);
  EXPECT_EQ(make_clique(5).num_edges(), 10u);
  EXPECT_EQ(make_star(5).num_edges(), 4u);
  EXPECT_EQ(make_grid(3, 4).num_edges(), 17u);
  const Graph b = make_barbell(4, 2);
  EXPECT_EQ(b.num_vertices(), 6);
  EXPECT_EQ(b.num_edges(), 8u);
  EXPECT_TRUE(b.has_edge(3, 4));
  EXPECT_EQ(make_erdos_renyi(12, 0.3, 5), make_erdos_renyi(12, 0.3, 5));
  EXPECT_THROW(make_cycle(2), std::invalid_argument);
}

TEST(Generators, SpecGrammar) {
  EXPECT_EQ(make_graph("path:6"), make_path(6));
  EXPECT_EQ(make_graph("cycle:8"), make_cycle(8));
  EXPECT_EQ(make_graph("clique:10"), make_clique(10));
  EXPECT_EQ(make_graph("star:4"), make_star(4));
  EXPECT_EQ(make_graph("edgeless:3"), Graph(3));
  EXPECT_EQ(make_graph("grid:2x3"), make_grid(2, 3));
  EXPECT_EQ(make_graph("er:9:0.5:3"), make_erdos_renyi(9, 0.5, 3));
  EXPECT_EQ(make_graph("barbell:5:3"), make_barbell(5, 3));
  EXPECT_THROW(make_graph("wheel:5"), std::invalid_argument);
  EXPECT_THROW(make_graph("path"), std::invalid_argument);
  EXPECT_THROW(make_graph("path:0"), std::invalid_argument);
  EXPECT_THROW(make_graph("grid:3"), std::invalid_argument);
}

TEST(Generators, FileSpec) {
  const std::string path = ::testing::TempDir() + "coop_edges.txt";
  {
    std::ofstream f(path);
    f << "0 1\n1 2\n";
  }
  EXPECT_EQ(make_graph("file:" + path), make_path(3));
  std::remove(path.c_str());
  EXPECT_THROW(make_graph("file:" + path), std::runtime_error);
}

TEST(LossSchedule, RejectsOutOfRange) {
  EXPECT_THROW(LossSchedule(1, 2, {0.0, 1.5}, "x"), std::invalid_argument);
  EXPECT_THROW(LossSchedule(2, 2, {0.0, 1.0}, "x"), std::invalid_argument);
}

TEST(LossSchedule, BestActionLowestIndexOnTies) {
  const LossSchedule s(2, 3, {0.5, 0.2, 0.2, 0.5, 0.3, 0.3}, "x");
  EXPECT_EQ(s.best_action(), 1);
  EXPECT_DOUBLE_EQ(s.loss(2, 0), 0.5);
  EXPECT_THROW(s.loss(3, 0), std::out_of_range);
  EXPECT_THROW(s.loss(0, 0), std::out_of_range);
}

TEST(ConstantGap, ZeroOneHasZeroBestLoss) {
  const auto s = gen_constant_gap(100, 4, 2, 0.0, 1.0, 9);
  EXPECT_EQ(s.best_action(), 2);
  EXPECT_DOUBLE_EQ(s.cumulative()[2], 0.0);
  EXPECT_DOUBLE_EQ(s.cumulative()[0], 100.0);
}

TEST(ConstantGap, NoJitterIgnoresSeed) {
  const auto a = gen_constant_gap(50, 3, 0, 0.2, 0.7, 1);
  const auto b = gen_constant_gap(50, 3, 0, 0.2, 0.7, 999);
  for (int t = 1; t <= 50; ++t)
    for (int i = 0; i < 3; ++i) EXPECT_EQ(a.loss(t, i), b.loss(t, i));
}

TEST(ConstantGap, JitterStaysInRangeAndIsSeeded) {
  const auto a = gen_constant_gap(500, 3, 1, 0.2, 0.7, 4, 0.2);
  const auto b = gen_constant_gap(500, 3, 1, 0.2, 0.7, 4, 0.2);
  for (int t = 1; t <= 500; ++t)
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(a.loss(t, i), b.loss(t, i));
      EXPECT_GE(a.loss(t, i), 0.0);
      EXPECT_LE(a.loss(t, i), 1.0);
    }
  EXPECT_EQ(a.best_action(), 1);
}

TEST(ConstantGap, InvalidBounds) {
  EXPECT_THROW(gen_constant_gap(10, 2, 0, 0.7, 0.2, 1), std::invalid_argument);
  EXPECT_THROW(gen_constant_gap(10, 2, 0, 0.1, 0.9, 1, 0.2), std::invalid_argument);
  EXPECT_THROW(gen_constant_gap(10, 2, 2, 0.1, 0.9, 1), std::invalid_argument);
  EXPECT_THROW(gen_constant_gap(10, 2, 0, -0.1, 0.9, 1), std::invalid_argument);
}

TEST(Shifting, OnePhaseEqualsConstantGap) {
  const auto s = gen_shifting(200, 5, 1, 0.3, 0.6, 17);
  const auto c = gen_constant_gap(200, 5, detail::arm_cycle(5, 17)[0], 0.3, 0.6, 17);
  for (int t = 1; t <= 200; ++t)
    for (int i = 0; i < 5; ++i) EXPECT_EQ(s.loss(t, i), c.loss(t, i));
}

TEST(Shifting, PhasesEqualHorizonChangesEveryRound) {
  const int k = 4;
  const auto s = gen_shifting(12, k, 12, 0.0, 1.0, 3);
  auto low_arm = [&](int t) {
    for (int i = 0; i < k; ++i)
      if (s.loss(t, i) == 0.0) return i;
    return -1;
  };
  for (int t = 1; t < 12; ++t) EXPECT_NE(low_arm(t), low_arm(t + 1));
}

TEST(Shifting, PhaseLengthIsCeiling) {
  const auto s = gen_shifting(10, 3, 4, 0.0, 1.0, 8);  // phases of 3 rounds
  auto low_arm = [&](int t) {
    for (int i = 0; i < 3; ++i)
      if (s.loss(t, i) == 0.0) return i;
    return -1;
  };
  EXPECT_EQ(low_arm(1), low_arm(3));
  EXPECT_NE(low_arm(3), low_arm(4));
  EXPECT_EQ(low_arm(4), low_arm(6));
  EXPECT_NE(low_arm(6), low_arm(7));
  EXPECT_EQ(low_arm(10), low_arm(1));  // cycle of 3 arms wraps
}

TEST(Shifting, EntriesInRange) {
  const auto s = gen_shifting(300, 6, 7, 0.1, 0.8, 2, 0.1);
  for (int t = 1; t <= 300; ++t)
    for (int i = 0; i < 6; ++i) {
      EXPECT_GE(s.loss(t, i), 0.0);
      EXPECT_LE(s.loss(t, i), 1.0);
    }
  EXPECT_THROW(gen_shifting(10, 2, 0, 0.1, 0.8, 2), std::invalid_argument);
}

TEST(LossCsv, Parses) {
  const auto s = parse_csv("0,1\n1,0\n");
  EXPECT_EQ(s.horizon(), 2);
  EXPECT_EQ(s.num_actions(), 2);
  EXPECT_DOUBLE_EQ(s.loss(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(s.loss(2, 1), 0.0);
}

TEST(LossCsv, Errors) {
  const auto range = error_of([] { parse_csv("0,1\n1.5,0\n"); });
  EXPECT_NE(range.find("row 2"), std::string::npos);
  EXPECT_NE(range.find("column 1"), std::string::npos);
  EXPECT_NE(error_of([] { parse_csv(""); }).find("empty"), std::string::npos);
  EXPECT_NE(error_of([] { parse_csv("0,1\n0\n"); }).find("row 2"), std::string::npos);
  EXPECT_NE(error_of([] { parse_csv("0,abc\n"); }).find("column 2"), std::string::npos);
}

TEST(ScheduleSpec, Grammar) {
  const auto c = make_schedule("const:3:2:0.1:0.9", 20, 3, 0);
  EXPECT_EQ(c.best_action(), 2);
  EXPECT_EQ(c.horizon(), 20);
  const auto s = make_schedule("shift:4:0.35:0.65", 40, 5, 0);
  EXPECT_EQ(s.num_actions(), 5);
  EXPECT_THROW(make_schedule("const:4:0:0.1:0.9", 20, 3, 0), std::invalid_argument);
  EXPECT_THROW(make_schedule("sine:3", 20, 3, 0), std::invalid_argument);
  EXPECT_THROW(make_schedule("shift:4:0.35", 20, 3, 0), std::invalid_argument);
}

TEST(ScheduleSpec, FileMustCoverHorizon) {
  const std::string path = ::testing::TempDir() + "coop_losses.csv";
  {
    std::ofstream f(path);
    f << "0,1\n1,0\n0.5,0.5\n";
  }
  EXPECT_EQ(make_schedule("file:" + path, 3, 2, 0).horizon(), 3);
  EXPECT_THROW(make_schedule("file:" + path, 4, 2, 0), std::invalid_argument);
  EXPECT_THROW(make_schedule("file:" + path, 2, 3, 0), std::invalid_argument);
  std::remove(path.c_str());
}
