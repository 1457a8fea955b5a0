#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"

namespace lcmad {

struct ReductionStep {
  int rule = 0;
  VertexSet removed;
  Rational eg_before, eg_after;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  VertexSet final_vertices;
};

struct RuleOutcome {
  VertexSet survivors;
  VertexSet removed;
};

namespace detail {

inline RuleOutcome keep_only(const InducedSubgraph& sub, const VertexSet& keep_local) {
  RuleOutcome r;
  std::vector<char> keep(sub.graph.n(), 0);
  for (Vertex v : keep_local) keep[v] = 1;
  for (Vertex v = 0; v < sub.graph.n(); ++v) (keep[v] ? r.survivors : r.removed).push_back(sub.parent(v));
  return r;
}

inline std::optional<Rational> eg_or_none(const Graph& g, const VertexSet& S) {
  if (S.size() < 2) return std::nullopt;
  return Rational(2 * induced_edge_count(g, S), static_cast<long long>(S.size()) - 1);
}

// index of the set with the largest l_EG, first one on ties
inline std::size_t densest_piece(const Graph& g, const std::vector<VertexSet>& pieces) {
  std::size_t best = 0;
  std::optional<Rational> best_eg;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto eg = eg_or_none(g, pieces[i]);
    if (eg && (!best_eg || *eg > *best_eg)) best = i, best_eg = eg;
  }
  return best;
}

}  // namespace detail

// One application of a rule to G[h]; vertex ids are those of g.
inline std::optional<RuleOutcome> apply_rule(const Graph& g, std::span<const Vertex> h, int rule) {
  auto sub = induce(g, h);
  const Graph& H = sub.graph;
  switch (rule) {
    case 1: {
      auto comps = connected_components(H);
      if (comps.size() <= 1) return std::nullopt;
      return detail::keep_only(sub, comps[detail::densest_piece(H, comps)]);
    }
    case 2: {
      if (!is_connected(H)) throw PreconditionError("rule 2 needs a connected graph");
      auto bd = blocks_and_cut_vertices(H);
      if (bd.blocks.size() <= 1) return std::nullopt;
      return detail::keep_only(sub, bd.blocks[detail::densest_piece(H, bd.blocks)]);
    }
    case 3: {
      if (H.n() < 3) return std::nullopt;
      Rational eg = eg_bound(H);
      for (Vertex v = 0; v < H.n(); ++v)
        if (Rational(2 * H.degree(v)) <= eg) {
          RuleOutcome r;
          for (Vertex w = 0; w < H.n(); ++w) (w == v ? r.removed : r.survivors).push_back(sub.parent(w));
          return r;
        }
      return std::nullopt;
    }
    case 4: {
      if (!is_two_connected(H)) throw PreconditionError("rule 4 needs a 2-connected graph");
      Rational eg = eg_bound(H);
      Rational limit = Rational(2, 3) * eg;
      long long n = H.n(), m = H.m();
      std::vector<char> removed(H.n(), 0);
      for (auto [x, y] : two_separators(H)) {
        removed[x] = removed[y] = 1;
        for (const auto& F : connected_components(H, &removed)) {
          if (avg_degree_of_set(H, F) > limit) continue;
          long long degsum = 0;
          for (Vertex v : F) degsum += H.degree(v);
          long long m_after = m - (degsum - induced_edge_count(H, F));
          long long n_after = n - static_cast<long long>(F.size());
          // deleting F must not lower l_EG (automatic once l_EG >= 6)
          if (Rational(2 * m_after, n_after - 1) < eg) continue;
          std::vector<char> gone(H.n(), 0);
          for (Vertex v : F) gone[v] = 1;
          RuleOutcome r;
          for (Vertex w = 0; w < H.n(); ++w) (gone[w] ? r.removed : r.survivors).push_back(sub.parent(w));
          return r;
        }
        removed[x] = removed[y] = 0;
      }
      return std::nullopt;
    }
    default:
      throw PreconditionError("unknown reduction rule " + std::to_string(rule));
  }
}

inline std::pair<VertexSet, ReductionTrace> reduce_exhaustive(const Graph& g, std::span<const Vertex> h) {
  VertexSet cur(h.begin(), h.end());
  std::sort(cur.begin(), cur.end());
  if (cur.size() < 2 || induced_edge_count(g, cur) == 0)
    throw PreconditionError("reduce_exhaustive needs at least two vertices and one edge");
  ReductionTrace trace;
  while (true) {
    std::optional<RuleOutcome> step;
    int rule = 0;
    for (rule = 1; rule <= 4 && !step; ++rule) {
      if (rule == 4 && cur.size() < 4) break;
      step = apply_rule(g, cur, rule);
      if (step) break;
    }
    if (!step) break;
    ReductionStep s;
    s.rule = rule;
    s.removed = step->removed;
    s.eg_before = *detail::eg_or_none(g, cur);
    cur = std::move(step->survivors);
    s.eg_after = *detail::eg_or_none(g, cur);
    trace.steps.push_back(std::move(s));
  }
  trace.final_vertices = cur;
  return {cur, std::move(trace)};
}

inline std::pair<VertexSet, ReductionTrace> reduce_exhaustive(const Graph& g) {
  auto all = all_vertices(g);
  return reduce_exhaustive(g, all);
}

}  // namespace lcmad
