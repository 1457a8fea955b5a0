#include <gtest/gtest.h>

#include <lcmad/long_paths.hpp>
#include <lcmad/oracle.hpp>

#include "fixtures.hpp"

using namespace lcmad;

TEST(DiracCycle, Examples) {
  auto k4 = fx::complete(4);
  auto c = dirac_cycle(k4);
  EXPECT_EQ(c.length(), 4);
  EXPECT_TRUE(verify_cycle_certificate(k4, c));
  auto c5 = fx::cycle(5);
  EXPECT_EQ(dirac_cycle(c5).length(), 5);
  auto p = fx::petersen();
  auto pc = dirac_cycle(p);
  EXPECT_GE(pc.length(), 6);
  EXPECT_TRUE(verify_cycle_certificate(p, pc));
  EXPECT_THROW(dirac_cycle(fx::path(4)), PreconditionError);
}

TEST(DiracCycle, RandomTwoConnected) {
  Rng rng(51);
  for (int it = 0; it < 200; ++it) {
    int n = 3 + static_cast<int>(uniform_below(rng, 58));
    int num = 1 + static_cast<int>(uniform_below(rng, 9));
    auto g = fx::gnp(n, num, 10, rng);
    if (!is_two_connected(g)) continue;
    auto c = dirac_cycle(g);
    EXPECT_TRUE(verify_cycle_certificate(g, c));
    EXPECT_GE(c.length(), std::min(n, 2 * g.min_degree()));
  }
}

TEST(FanPath, Examples) {
  auto p = fan_path(fx::cycle(4), 0, 2);
  EXPECT_EQ(p.length(), 2);
  EXPECT_TRUE(verify_path_certificate(fx::cycle(4), p));
  auto k = fan_path(fx::complete(4), 0, 1);
  EXPECT_GE(k.length(), 3);
  EXPECT_EQ(k.front(), 0);
  EXPECT_EQ(k.back(), 1);
  EXPECT_THROW(fan_path(fx::complete(4), 1, 1), PreconditionError);
}

TEST(FanPath, OneSideOfGluedCliques) {
  auto g = fx::glued_k5();
  auto side = induce(g, VertexSet{0, 1, 2, 3, 4});
  auto p = fan_path(side.graph, 0, 1);
  EXPECT_GE(p.length(), 4);
  EXPECT_EQ(oracle_longest_st_path(side.graph, 0, 1), 5);
}

TEST(FanPath, RationalBoundOnRandomGraphs) {
  Rng rng(52);
  int checked = 0;
  for (int it = 0; it < 300 && checked < 80; ++it) {
    int n = 3 + static_cast<int>(uniform_below(rng, 12));
    auto g = fx::gnp(n, 3 + static_cast<int>(uniform_below(rng, 6)), 10, rng);
    if (!is_two_connected(g)) continue;
    ++checked;
    for (Vertex s = 0; s < n; ++s)
      for (Vertex t = s + 1; t < n; ++t) {
        auto p = fan_path(g, s, t);
        ASSERT_TRUE(verify_path_certificate(g, p));
        EXPECT_EQ(p.front(), s);
        EXPECT_EQ(p.back(), t);
        VertexSet rest;
        for (Vertex v = 0; v < n; ++v)
          if (v != s && v != t) rest.push_back(v);
        EXPECT_GE(Rational(p.length()), avg_degree_of_set(g, rest));
        EXPECT_LE(p.length() + 1, oracle_longest_st_path(g, s, t));
      }
  }
}

TEST(StPath, Examples) {
  auto p4 = fx::path(4);
  auto r = st_path_at_least(p4, 0, 3, 4);
  ASSERT_TRUE(r.path);
  EXPECT_EQ(r.path->vertices, (std::vector<Vertex>{0, 1, 2, 3}));
  auto none = st_path_at_least(p4, 0, 3, 5);
  EXPECT_FALSE(none.path);
  EXPECT_TRUE(none.exhaustive);
  auto pet = fx::petersen();
  auto h = st_path_at_least(pet, 0, 2, 10);
  ASSERT_TRUE(h.path);
  EXPECT_EQ(h.path->vertices.size(), 10u);
  EXPECT_TRUE(verify_path_certificate(pet, *h.path));
}

TEST(StPath, DeterministicModeMatchesOracle) {
  Rng rng(53);
  for (int it = 0; it < 120; ++it) {
    int n = 2 + static_cast<int>(uniform_below(rng, 11));
    auto g = fx::gnp(n, 2 + static_cast<int>(uniform_below(rng, 7)), 10, rng);
    Vertex s = static_cast<Vertex>(uniform_below(rng, n)), t = static_cast<Vertex>(uniform_below(rng, n));
    if (s == t) continue;
    int best = oracle_longest_st_path(g, s, t);
    for (int target = 2; target <= n + 1; ++target) {
      auto r = st_path_at_least(g, s, t, target);
      EXPECT_TRUE(r.exhaustive || r.path);
      EXPECT_EQ(r.path.has_value(), best >= target) << "n=" << n << " target=" << target;
      if (r.path) {
        EXPECT_TRUE(verify_path_certificate(g, *r.path));
        EXPECT_GE(static_cast<int>(r.path->vertices.size()), target);
      }
    }
  }
}

TEST(StPath, RandomizedModeIsSoundAndTrialSplitting) {
  Rng rng(54);
  for (int it = 0; it < 20; ++it) {
    auto g = fx::gnp(16, 2, 10, rng);
    Vertex s = 0, t = 15;
    std::vector<char> allowed(16, 1);
    for (int target = 3; target <= 8; ++target) {
      TrialConfig a{.seed = 7, .offset = 0, .trials = 40};
      TrialConfig b{.seed = 7, .offset = 40, .trials = 60};
      TrialConfig ab{.seed = 7, .offset = 0, .trials = 100};
      auto ra = detail::dfs_st_path(g, s, t, target, 1'000'000);
      auto whole = st_path_at_least(g, s, t, target, ab);
      if (whole.path) {
        EXPECT_TRUE(verify_path_certificate(g, *whole.path));
        EXPECT_GE(static_cast<int>(whole.path->vertices.size()), target);
      }
      // with an exhaustive DFS the answer must agree
      if (ra.first != detail::SearchStatus::budget) EXPECT_EQ(whole.path.has_value(), ra.first == detail::SearchStatus::found);
      bool split = st_path_at_least(g, s, t, target, a).path.has_value() || st_path_at_least(g, s, t, target, b).path.has_value();
      EXPECT_EQ(split, whole.path.has_value());
    }
  }
}
