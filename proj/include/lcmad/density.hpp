#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"
#include "maxflow.hpp"

namespace lcmad {

struct DensityWitness {
  VertexSet vertices;
  Rational density;  // |E(G[S])| / |S|
  Rational mad;      // 2 * density
  int probes = 0;
};

inline Rational set_density(const Graph& g, std::span<const Vertex> S) {
  return Rational(induced_edge_count(g, S), static_cast<long long>(S.size()));
}

// Goldberg's network. Source side of the minimal min cut maximizes |E(S)| - guess*|S|.
inline std::optional<VertexSet> densest_decision(const Graph& g, const Rational& guess) {
  int n = g.n();
  if (n == 0) throw PreconditionError("densest_decision on an empty graph");
  if (guess < Rational(0)) return all_vertices(g);
  if (g.m() == 0) return std::nullopt;
  using i64 = MaxFlow::Cap;
  i64 a = guess.num(), b = guess.den(), m = g.m();
  if (__int128(m) * n * b + __int128(2) * a * n > (__int128(1) << 62))
    throw std::overflow_error("density guess denominator too large");
  int s = n, t = n + 1;
  MaxFlow f(n + 2);
  for (Vertex v = 0; v < n; ++v) {
    f.add_arc(s, v, m * b);
    f.add_arc(v, t, m * b + 2 * a - g.degree(v) * b);
    for (Vertex w : g.neighbors(v))
      if (v < w) f.add_arc(v, w, b, b);
  }
  i64 cut = f.run(s, t);
  if (cut >= m * n * b) return std::nullopt;
  auto side = f.source_side(s);
  VertexSet S;
  for (Vertex v = 0; v < n; ++v)
    if (side[v]) S.push_back(v);
  return S;
}

// fraction with the smallest denominator in [x, y], 0 <= x <= y
inline Rational simplest_between(const Rational& x, const Rational& y) {
  auto f = x.floor();
  if (Rational(f) == x) return x;
  if (Rational(f + 1) <= y) return Rational(f + 1);
  Rational inner = simplest_between(Rational(1) / (y - Rational(f)), Rational(1) / (x - Rational(f)));
  return Rational(f) + Rational(1) / inner;
}

inline DensityWitness mad_with_witness(const Graph& g) {
  if (g.m() == 0) throw PreconditionError("mad of an edgeless graph");
  long long n = g.n();
  DensityWitness w;
  Rational lo(g.m(), n), hi(n - 1, 2);
  Rational eps(1, n * n);
  while (!(hi - lo < eps)) {
    Rational quarter = (hi - lo) / Rational(4);
    Rational mid = simplest_between(lo + quarter, hi - quarter);
    ++w.probes;
    if (auto S = densest_decision(g, mid))
      lo = set_density(g, *S);
    else
      hi = mid;
  }
  // every density below lo is at most lo - 1/n^2, so this probe isolates the densest sets
  ++w.probes;
  auto S = densest_decision(g, lo - Rational(1, 2 * n * n));
  w.vertices = std::move(*S);
  w.density = set_density(g, w.vertices);
  if (w.density != lo) throw std::logic_error("densest witness does not attain the computed density");
  w.mad = Rational(2) * w.density;
  return w;
}

}  // namespace lcmad
