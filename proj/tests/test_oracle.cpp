#include <gtest/gtest.h>

#include <lcmad/oracle.hpp>

#include "fixtures.hpp"

using namespace lcmad;

TEST(OracleLongestCycle, Examples) {
  auto p = oracle_longest_cycle(fx::petersen());
  EXPECT_EQ(p.length, 9);
  ASSERT_TRUE(p.cycle);
  EXPECT_TRUE(verify_cycle_certificate(fx::petersen(), {*p.cycle, 9}));
  EXPECT_EQ(oracle_longest_cycle(fx::complete(4)).length, 4);
  auto star = build_graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 5);
  auto s = oracle_longest_cycle(star);
  EXPECT_EQ(s.length, 0);
  EXPECT_FALSE(s.cycle);
  EXPECT_THROW(oracle_longest_cycle(fx::cycle(19)), CapExceeded);
  EXPECT_EQ(oracle_longest_cycle(fx::cycle(19), 20).length, 19);
}

TEST(OracleStPath, Examples) {
  EXPECT_EQ(oracle_longest_st_path(fx::path(4), 0, 3), 4);
  EXPECT_EQ(oracle_longest_st_path(fx::cycle(5), 0, 1), 5);
  EXPECT_EQ(oracle_longest_st_path(fx::petersen(), 0, 1), 9);
  EXPECT_EQ(oracle_longest_st_path(build_graph({{0, 1}}, 3), 0, 2), 0);
}

TEST(OracleMad, Examples) {
  EXPECT_EQ(oracle_mad(fx::cycle(5)), Rational(2));
  EXPECT_EQ(oracle_mad(fx::k5_pendant()), Rational(4));
  EXPECT_EQ(oracle_mad(fx::bowtie()), Rational(12, 5));
  EXPECT_THROW(oracle_mad(fx::cycle(15)), CapExceeded);
}

TEST(OracleSegments, Examples) {
  EXPECT_TRUE(oracle_segments(fx::path(3), {0, 2}, std::nullopt, 1, 1));
  EXPECT_FALSE(oracle_segments(fx::path(3), {0, 2}, std::nullopt, 1, 2));
  EXPECT_FALSE(oracle_segments(fx::cycle(6), {0, 3}, std::nullopt, 2, 4));
  EXPECT_TRUE(oracle_segments(fx::cycle(6), {0, 3}, std::nullopt, 1, 2));
  OraclePartition aa{{0, 3}, {}};
  EXPECT_FALSE(oracle_segments(fx::cycle(6), {0, 3}, aa, 1, 1, 1, 0));
  EXPECT_TRUE(oracle_segments(fx::cycle(6), {0, 3}, aa, 1, 2, 1, 0));
}

// Erdos-Gallai: a graph with more than n-1 edges has a cycle of length >= ceil(l_EG)
TEST(OracleProperties, ErdosGallaiExhaustiveSmall) {
  for (int n = 3; n <= 7; ++n) {
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    std::uint32_t total = std::uint32_t(1) << all.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      std::vector<Edge> e;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) e.push_back(all[i]);
      if (static_cast<int>(e.size()) <= n - 1) continue;
      auto g = build_graph(e, n);
      if (!is_connected(g)) continue;
      EXPECT_GE(oracle_longest_cycle(g).length, eg_bound(g).ceil());
    }
  }
}

TEST(OracleProperties, ErdosGallaiRandomUpToEight) {
  Rng rng(31);
  for (int it = 0; it < 3000; ++it) {
    int n = 7 + static_cast<int>(uniform_below(rng, 2));
    auto g = fx::gnp(n, 3 + static_cast<int>(uniform_below(rng, 6)), 10, rng);
    if (g.m() <= n - 1 || !is_connected(g)) continue;
    EXPECT_GE(oracle_longest_cycle(g).length, eg_bound(g).ceil());
  }
}
