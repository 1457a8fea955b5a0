#include <gtest/gtest.h>

#include <lcmad/instances_io.hpp>
#include <lcmad/oracle.hpp>

#include "fixtures.hpp"

using namespace lcmad;

namespace {

std::string error_of(const std::string& text, Format f) {
  try {
    parse_graph(text, f);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, EdgelistTriangle) {
  auto g = parse_graph("0 1\n1 2\n2 0\n", Format::edgelist);
  EXPECT_EQ(g, fx::complete(3));
  auto h = parse_graph("# a comment\nn 5\n0 1  # trailing\n\n3 4\r\n", Format::edgelist);
  EXPECT_EQ(h.n(), 5);
  EXPECT_EQ(h.m(), 2);
  EXPECT_EQ(parse_graph("", Format::edgelist).n(), 0);
}

TEST(Parse, DimacsTriangle) {
  auto g = parse_graph("c hello\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n", Format::dimacs);
  EXPECT_EQ(g, fx::complete(3));
}

TEST(Parse, Errors) {
  EXPECT_NE(error_of("0 0\n", Format::edgelist).find("line 1"), std::string::npos);
  EXPECT_NE(error_of("0 0\n", Format::edgelist).find("self-loop"), std::string::npos);
  EXPECT_NE(error_of("0 1\n1 x\n", Format::edgelist).find("line 2"), std::string::npos);
  EXPECT_NE(error_of("0 1 2\n", Format::edgelist).find("line 1"), std::string::npos);
  EXPECT_NE(error_of("0 99999999999999999999\n", Format::edgelist).find("overflow"), std::string::npos);
  EXPECT_NE(error_of("0 123456789\n", Format::edgelist).find("overflow"), std::string::npos);
  EXPECT_NE(error_of("n 2\n0 2\n", Format::edgelist).find("line 2"), std::string::npos);
  EXPECT_NE(error_of("e 1 2\n", Format::dimacs).find("line 1"), std::string::npos);
  EXPECT_NE(error_of("p edge 3 1\ne 1 4\n", Format::dimacs).find("line 2"), std::string::npos);
  EXPECT_NE(error_of("p edge 3 1\ne 2 2\n", Format::dimacs).find("self-loop"), std::string::npos);
  EXPECT_NE(error_of("p edge 3 1\nx 1 2\n", Format::dimacs).find("line 2"), std::string::npos);
  EXPECT_NE(error_of("c only comments\n", Format::dimacs).find("problem line"), std::string::npos);
}

TEST(Parse, RoundTrip) {
  Rng rng(91);
  for (int it = 0; it < 50; ++it) {
    auto g = fx::gnp(1 + static_cast<int>(uniform_below(rng, 30)), 3, 10, rng);
    for (Format f : {Format::edgelist, Format::dimacs}) {
      auto text = emit_graph(g, f);
      auto back = parse_graph(text, f);
      EXPECT_EQ(back, g);
      EXPECT_EQ(emit_graph(back, f), text);
      EXPECT_EQ(detect_format("x", text), f);
    }
  }
  EXPECT_EQ(detect_format("g.col", "0 1\n"), Format::dimacs);
}

TEST(Gadget, Examples) {
  auto c4 = gen_hardness_gadget(fx::cycle(4));
  EXPECT_EQ(c4.n(), 12);
  EXPECT_EQ(c4.m(), 16);
  EXPECT_EQ(eg_bound(c4), Rational(32, 11));
  EXPECT_THROW(gen_hardness_gadget(fx::complete(3)), PreconditionError);
  auto c5 = gen_hardness_gadget(fx::cycle(5));
  EXPECT_EQ(c5.n(), 20);
  EXPECT_EQ(c5.m(), 35);
  EXPECT_EQ(eg_bound(c5), Rational(70, 19));
}

TEST(Gadget, BoundsAndEmbedding) {
  Rng rng(92);
  int tried = 0;
  for (int it = 0; it < 200 && tried < 60; ++it) {
    int n = 4 + static_cast<int>(uniform_below(rng, 4));
    auto g = fx::gnp(n, 5, 10, rng);
    if (eg_bound(g) > Rational(n - 1)) {
      EXPECT_THROW(gen_hardness_gadget(g), PreconditionError);
      continue;
    }
    ++tried;
    auto h = gen_hardness_gadget(g);
    EXPECT_EQ(h.n(), n * (n - 1));
    EXPECT_EQ(h.m(), n * (n - 1) * (n - 2) / 2 + g.m());
    EXPECT_GT(eg_bound(h), Rational(n - 2));
    EXPECT_LE(eg_bound(h), Rational(n - 1));
    std::vector<Vertex> orig(n);
    std::iota(orig.begin(), orig.end(), 0);
    EXPECT_EQ(induce(h, orig).graph, g);
  }
  EXPECT_GT(tried, 30);
}

TEST(Generators, Gnp2c) {
  auto a = gen_gnp2c(10, Rational(1, 2), 7);
  EXPECT_TRUE(is_two_connected(a.graph));
  EXPECT_EQ(a.graph.n(), 10);
  EXPECT_EQ(gen_gnp2c(10, Rational(1, 2), 7).graph, a.graph);
  EXPECT_EQ(a.meta["family"], "gnp2c");
  EXPECT_THROW(gen_gnp2c(10, Rational(0), 7), PreconditionError);
}

TEST(Generators, NearComplete) {
  auto a = gen_near_complete(64, 36, 1, 3);
  EXPECT_GE(a.graph.min_degree(), 36);
  EXPECT_GE(Rational(2 * a.graph.min_degree()), average_degree(a.graph));
  EXPECT_FALSE(a.meta["strict_ok"].get<bool>());  // ad + 1 > n is impossible
  auto b = gen_near_complete(130, 128, 2, 4);
  EXPECT_TRUE(b.meta["strict_ok"].get<bool>()) << b.meta.dump();
  EXPECT_TRUE(check_dense_preconditions(b.graph, 2, 0));
  EXPECT_THROW(gen_near_complete(64, 20, 1, 3), PreconditionError);
}

TEST(Generators, BipartiteDense) {
  auto a = gen_bipartite_dense(20, 2, 5);
  VertexSet A, B;
  for (int v = 0; v < a.graph.n(); ++v) (v < 20 ? A : B).push_back(v);
  EXPECT_TRUE(check_cover_side_preconditions(a.graph, A, B, 2, 0));
  for (Vertex v : A) EXPECT_GE(a.graph.degree(v), 40);
  for (Vertex v : B) {
    EXPECT_GE(a.graph.degree(v), 18);
    for (Vertex w : a.graph.neighbors(v)) EXPECT_LT(w, 20);
  }
}

TEST(Generators, TraceFamilyHitsEachBranch) {
  for (std::string target : {"dirac", "small_dense", "separator", "bipartite"}) {
    auto inst = gen_lemma7_trace(target, 11);
    Mode mode = inst.meta["mode"] == "strict" ? Mode::strict : Mode::relaxed;
    auto w = find_dense(inst.graph, inst.meta["k"].get<int>(), mode);
    EXPECT_EQ(w.branch, inst.meta["expected_branch"].get<std::string>()) << target;
    std::string kind = std::holds_alternative<FoundCycle>(w.value)   ? "found_cycle"
                       : std::holds_alternative<SmallDense>(w.value) ? "small_dense"
                                                                     : "bipartite_dense";
    EXPECT_EQ(kind, inst.meta["expected_witness"].get<std::string>()) << target;
    EXPECT_TRUE(check_dense_witness(inst.graph, w));
  }
  EXPECT_THROW(gen_lemma7_trace("nope", 1), PreconditionError);
}

TEST(EmitResult, Schema) {
  auto yes = solve(fx::complete(4), 0);
  auto text = emit_result(yes);
  EXPECT_EQ(text.rfind(R"({"answer":"yes","k":0,"mad":{"num":3,"den":1},"threshold_len":3,"cycle":[)", 0), 0u) << text;
  EXPECT_NE(text.find(R"("branch":"k0","stats":{"probes":)"), std::string::npos);
  EXPECT_EQ(text.find("trace"), std::string::npos);
  EXPECT_NE(emit_result(yes, true).find(R"("trace":[)"), std::string::npos);
  auto parsed = nlohmann::json::parse(text);
  EXPECT_EQ(parsed["cycle"].size(), 4u);

  auto no = solve(fx::complete(4), 2);
  EXPECT_NE(emit_result(no).find(R"("cycle":null)"), std::string::npos);

  SolveResult unk;
  unk.stats.reason = "budget";
  auto u = nlohmann::json::parse(emit_result(unk));
  EXPECT_EQ(u["answer"], "unknown");
  EXPECT_EQ(u["stats"]["reason"], "budget");
  EXPECT_EQ(emit_result(yes), emit_result(solve(fx::complete(4), 0)));
}
