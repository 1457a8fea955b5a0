#include <gtest/gtest.h>

#include <lcmad/oracle.hpp>
#include <lcmad/solver.hpp>

#include "fixtures.hpp"

using namespace lcmad;

namespace {

Graph k6_plus(std::vector<std::vector<Vertex>> outside_paths) {
  auto e = fx::complete(6).edges();
  int n = 6;
  for (auto& p : outside_paths) {
    // p lists the two H-ends and the number of internals is p.size() - 2; internals get fresh ids
    std::vector<Vertex> seq{p.front()};
    for (std::size_t i = 1; i + 1 < p.size(); ++i) seq.push_back(n++);
    seq.push_back(p.back());
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) e.emplace_back(seq[i], seq[i + 1]);
  }
  return build_graph(e, n);
}

// A = 0..a-1, B = a..a+b-1, complete between them
std::vector<Edge> kab(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return e;
}

BipartiteDense kab_witness(int a, int b) {
  BipartiteDense w;
  for (int v = 0; v < a; ++v) w.A.push_back(v);
  for (int v = a; v < a + b; ++v) w.B.push_back(v);
  for (int v = 0; v < a + b; ++v) w.H.push_back(v);
  return w;
}

// K_n minus a matching on the first 2*missing vertices
std::vector<Edge> near_complete(int n, int missing) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!(v == u + 1 && u % 2 == 0 && u < 2 * missing)) e.emplace_back(u, v);
  return e;
}

int longest_path_vertices(const Graph& g) {
  int best = g.n() > 0 ? 1 : 0;
  for (Vertex s = 0; s < g.n(); ++s)
    for (Vertex t = s + 1; t < g.n(); ++t) best = std::max(best, oracle_longest_st_path(g, s, t));
  return best;
}

void expect_sound(const Graph& g, const SolveResult& r) {
  if (r.answer != Answer::yes) return;
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(verify_cycle_certificate(g, *r.certificate));
  EXPECT_GE(Rational(r.certificate->length()), r.mad + Rational(r.k));
}

}  // namespace

TEST(Solve, CompleteFour) {
  auto g = fx::complete(4);
  auto yes = solve(g, 0);
  EXPECT_EQ(yes.answer, Answer::yes);
  EXPECT_EQ(yes.branch, "k0");
  EXPECT_EQ(yes.mad, Rational(3));
  EXPECT_EQ(yes.certificate->length(), 4);
  expect_sound(g, yes);
  auto no = solve(g, 2);
  EXPECT_EQ(no.answer, Answer::no);
  EXPECT_EQ(no.branch, "fallback");
  EXPECT_FALSE(no.certificate);
}

TEST(Solve, PetersenUsesTheFallback) {
  auto g = fx::petersen();
  auto r = solve(g, 1);
  EXPECT_EQ(r.answer, Answer::yes);
  EXPECT_EQ(r.branch, "fallback");
  expect_sound(g, r);
  EXPECT_EQ(solve(g, 6).answer, Answer::yes);   // 9 >= 3 + 6
  EXPECT_EQ(solve(g, 7).answer, Answer::no);    // Petersen is not Hamiltonian
}

TEST(Solve, Preconditions) {
  EXPECT_THROW(solve(fx::complete(4), -1), PreconditionError);
  EXPECT_THROW(solve(fx::bowtie(), 0), PreconditionError);
  SolveOptions path;
  path.target = Target::path;
  EXPECT_NO_THROW(solve(fx::bowtie(), 0, path));
  auto two = build_graph({{0, 1}}, 3);
  EXPECT_THROW(solve(two, 0, path), PreconditionError);
}

TEST(Fallback, Examples) {
  auto p = exact_longest_cycle_fallback(fx::petersen(), Rational(4));
  EXPECT_EQ(p.answer, Answer::yes);
  EXPECT_GE(p.certificate->length(), 4);
  EXPECT_EQ(exact_longest_cycle_fallback(fx::petersen(), Rational(9)).certificate->length(), 9);
  EXPECT_EQ(exact_longest_cycle_fallback(fx::petersen(), Rational(10)).answer, Answer::no);
  auto c5 = exact_longest_cycle_fallback(fx::cycle(5), Rational(3));
  EXPECT_EQ(c5.answer, Answer::yes);
  EXPECT_EQ(c5.certificate->length(), 5);
  EXPECT_EQ(exact_longest_cycle_fallback(fx::path(6), Rational(3)).answer, Answer::no);
  auto star = build_graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 5);
  EXPECT_EQ(exact_longest_cycle_fallback(star, Rational(3)).answer, Answer::no);
}

TEST(Fallback, SubsetDpMatchesOracle) {
  Rng rng(81);
  for (int it = 0; it < 80; ++it) {
    int n = 4 + static_cast<int>(uniform_below(rng, 9));
    auto g = fx::gnp(n, 3 + static_cast<int>(uniform_below(rng, 6)), 10, rng);
    int circ = oracle_longest_cycle(g).length;
    for (int L = 3; L <= n; ++L) {
      auto c = detail::held_karp_cycle_at_least(g, L);
      ASSERT_EQ(c.has_value(), circ >= L) << "n=" << n << " L=" << L;
      if (c) {
        EXPECT_GE(static_cast<int>(c->size()), L);
        EXPECT_TRUE(verify_cycle_certificate(g, CycleCertificate{*c, L}));
      }
    }
  }
}

TEST(CaseSmallDense, OutsidePathOfTwo) {
  auto g = k6_plus({{0, -1, -1, 1}});
  auto r = case_small_dense(g, {0, 1, 2, 3, 4, 5}, 2);
  ASSERT_EQ(r.answer, Answer::yes);
  EXPECT_EQ(r.certificate->length(), 8);
  EXPECT_TRUE(verify_cycle_certificate(g, *r.certificate));
}

TEST(CaseSmallDense, TwoShortSegments) {
  auto g = k6_plus({{0, -1, 1}, {2, -1, 3}});
  auto r = case_small_dense(g, {0, 1, 2, 3, 4, 5}, 2);
  ASSERT_EQ(r.answer, Answer::yes);
  EXPECT_EQ(r.certificate->length(), 8);
  EXPECT_TRUE(verify_cycle_certificate(g, *r.certificate));
  EXPECT_NE(r.stats.reason.find("segment system"), std::string::npos);
  EXPECT_EQ(case_small_dense(g, {0, 1, 2, 3, 4, 5}, 3).answer, Answer::no);
}

TEST(CaseSmallDense, LongOutsidePath) {
  auto g = k6_plus({{0, -1, -1, -1, -1, 1}});
  auto r = case_small_dense(g, {0, 1, 2, 3, 4, 5}, 2);
  ASSERT_EQ(r.answer, Answer::yes);
  EXPECT_EQ(r.stats.reason, "long outside path");
  EXPECT_GE(r.certificate->length(), 8);
  EXPECT_EQ(r.certificate->length(), oracle_longest_cycle(g).length);
}

TEST(CaseSmallDense, NothingOutside) {
  auto g = fx::complete(6);
  auto r = case_small_dense(g, {0, 1, 2, 3, 4, 5}, 1);
  EXPECT_EQ(r.answer, Answer::no);
  EXPECT_THROW(case_small_dense(g, {0, 1, 2, 3, 4, 5}, 0), PreconditionError);
}

TEST(CaseBipartiteDense, OutsideBPath) {
  auto e = kab(20, 80);
  // outside path 20 - 100 - 101 - 102 - 21 between two B-vertices
  e.insert(e.end(), {{20, 100}, {100, 101}, {101, 102}, {102, 21}});
  auto g = build_graph(e, 103);
  auto w = kab_witness(20, 80);
  for (int kp : {3, 4}) {
    auto r = case_bipartite_dense(g, w, kp);
    ASSERT_EQ(r.answer, Answer::yes) << kp;
    EXPECT_EQ(r.certificate->length(), 44);
    EXPECT_TRUE(verify_cycle_certificate(g, *r.certificate));
  }
  EXPECT_EQ(case_bipartite_dense(g, w, 5).answer, Answer::no);
}

TEST(CaseBipartiteDense, ShortASegmentIsRejected) {
  auto e = kab(20, 80);
  e.insert(e.end(), {{0, 100}, {100, 1}});
  auto g = build_graph(e, 101);
  EXPECT_EQ(case_bipartite_dense(g, kab_witness(20, 80), 1).answer, Answer::no);
}

TEST(CaseBipartiteDense, NothingOutside) {
  auto g = build_graph(kab(20, 80), 100);
  EXPECT_EQ(case_bipartite_dense(g, kab_witness(20, 80), 1).answer, Answer::no);
}

TEST(SpliceSegments, LengthIdentity) {
  detail::Seq base{0, 1, 2, 3, 4, 5};
  std::vector<PathCertificate> segs{PathCertificate{{1, 10, 11, 0}}, PathCertificate{{3, 12, 4}}};
  auto out = detail::splice_segments(base, segs);
  EXPECT_EQ(out.size(), 9u);
  EXPECT_TRUE(cycle_has_edge(out, 0, 11));
  EXPECT_TRUE(cycle_has_edge(out, 10, 1));
  EXPECT_TRUE(cycle_has_edge(out, 3, 12));
  EXPECT_FALSE(cycle_has_edge(out, 0, 1));
  EXPECT_THROW(detail::splice_segments(base, {PathCertificate{{0, 10, 2}}}), ConstructionFailure);
}

TEST(Solve, StrictPipelineSmallDense) {
  int n = 360;
  auto e = near_complete(n, 3);
  // one outside vertex on 0,1: the longest cycle has n + 1 vertices
  e.insert(e.end(), {{0, n}, {1, n}});
  auto g1 = build_graph(e, n + 1);
  auto r = solve(g1, 2);
  EXPECT_EQ(r.branch, "case_ii");
  EXPECT_EQ(r.answer, Answer::yes);
  expect_sound(g1, r);
  auto none = solve(g1, 3);
  EXPECT_EQ(none.branch, "case_ii");
  EXPECT_EQ(none.answer, Answer::no);
  EXPECT_EQ(none.stats.k_prime, 2);
  // a second outside vertex on 2,3 makes room for a two-segment system
  e.insert(e.end(), {{2, n + 1}, {3, n + 1}});
  auto g2 = build_graph(e, n + 2);
  auto two = solve(g2, 3);
  EXPECT_EQ(two.answer, Answer::yes);
  EXPECT_EQ(two.certificate->length(), n + 2);
  expect_sound(g2, two);
}

TEST(Solve, StrictPipelineFoundCycle) {
  auto g = fx::complete(200);
  auto r = solve(g, 1);
  EXPECT_EQ(r.branch, "case_i");
  EXPECT_EQ(r.answer, Answer::yes);
  EXPECT_EQ(r.certificate->length(), 200);
  EXPECT_EQ(solve(g, 2).answer, Answer::no);
}

TEST(Solve, MatchesOracleOnSmallGraphs) {
  Rng rng(82);
  int yes = 0, no = 0;
  for (int it = 0; it < 120; ++it) {
    int n = 4 + static_cast<int>(uniform_below(rng, 9));
    auto g = fx::gnp_2connected(n, 3 + static_cast<int>(uniform_below(rng, 6)), 10, rng);
    int circ = oracle_longest_cycle(g).length;
    for (int k = 0; k <= 4; ++k) {
      auto r = solve(g, k);
      ASSERT_NE(r.answer, Answer::unknown) << r.stats.reason;
      bool want = Rational(circ) >= r.mad + Rational(k);
      ASSERT_EQ(r.answer == Answer::yes, want) << "n=" << n << " k=" << k;
      (want ? yes : no)++;
      expect_sound(g, r);
    }
  }
  EXPECT_GT(yes, 50);
  EXPECT_GT(no, 50);
}

TEST(Solve, RelaxedModeAgreesOnSmallGraphs) {
  Rng rng(83);
  SolveOptions opt;
  opt.mode = Mode::relaxed;
  for (int it = 0; it < 40; ++it) {
    int n = 5 + static_cast<int>(uniform_below(rng, 7));
    auto g = fx::gnp_2connected(n, 6, 10, rng);
    int circ = oracle_longest_cycle(g).length;
    for (int k = 0; k <= 3; ++k) {
      auto r = solve(g, k, opt);
      ASSERT_NE(r.answer, Answer::unknown) << r.stats.reason;
      EXPECT_EQ(r.answer == Answer::yes, Rational(circ) >= r.mad + Rational(k));
      expect_sound(g, r);
    }
  }
}

TEST(Solve, PathModeMatchesLongestPathOracle) {
  Rng rng(84);
  SolveOptions opt;
  opt.target = Target::path;
  for (int it = 0; it < 60; ++it) {
    int n = 2 + static_cast<int>(uniform_below(rng, 10));
    auto g = fx::gnp_connected(n, 2 + static_cast<int>(uniform_below(rng, 6)), 10, rng);
    int best = longest_path_vertices(g);
    for (int k = 0; k <= 4; ++k) {
      auto r = solve(g, k, opt);
      ASSERT_NE(r.answer, Answer::unknown);
      bool want = Rational(best) >= r.mad + Rational(k);
      ASSERT_EQ(r.answer == Answer::yes, want) << "n=" << n << " k=" << k;
      if (r.answer == Answer::yes) {
        ASSERT_TRUE(r.path);
        EXPECT_TRUE(verify_path_certificate(g, *r.path));
        EXPECT_GE(static_cast<long long>(r.path->vertices.size()), r.threshold);
      }
    }
  }
}

TEST(ConstructiveEG, LongerThanMad) {
  Rng rng(85);
  for (int it = 0; it < 40; ++it) {
    int n = 8 + static_cast<int>(uniform_below(rng, 40));
    auto g = fx::gnp_connected(n, 3, 10, rng);
    auto mad = mad_with_witness(g).mad;
    if (mad < Rational(2)) continue;
    auto c = constructive_eg_cycle(g);
    EXPECT_TRUE(verify_cycle_certificate(g, c));
    EXPECT_GT(Rational(c.length()), mad);
  }
  EXPECT_THROW(constructive_eg_cycle(fx::path(5)), PreconditionError);
}
