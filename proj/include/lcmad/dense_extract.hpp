#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "density.hpp"
#include "dense_routing.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "long_paths.hpp"
#include "reduce.hpp"
#include "rotation.hpp"

namespace lcmad {

// ---------------------------------------------------------------- Dirac decomposition verifier

namespace detail {

inline int bipartite_matching(const Graph& g, const VertexSet& left, const std::vector<char>& right) {
  int n = g.n();
  std::vector<Vertex> match_r(n, -1);
  std::vector<char> seen(n, 0);
  auto augment = [&](auto&& self, Vertex u) -> bool {
    for (Vertex w : g.neighbors(u)) {
      if (!right[w] || seen[w]) continue;
      seen[w] = 1;
      if (match_r[w] < 0 || self(self, match_r[w])) {
        match_r[w] = u;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (Vertex u : left) {
    std::fill(seen.begin(), seen.end(), 0);
    size += augment(augment, u);
  }
  return size;
}

}  // namespace detail

inline Verdict check_dirac_decomposition(const Graph& g, const CycleCertificate& C, const PathCertificate& P1,
                                         const PathCertificate& P2) {
  if (!is_two_connected(g)) throw PreconditionError("Dirac decomposition needs a 2-connected graph");
  if (auto v = detail::check_walk(g, C.vertices, true); !v) throw DataError("cycle: " + v.diagnostic);
  if (auto v = verify_path_certificate(g, P1); !v) throw DataError("P1: " + v.diagnostic);
  if (auto v = verify_path_certificate(g, P2); !v) throw DataError("P2: " + v.diagnostic);
  int n = g.n(), delta = g.min_degree(), len = C.length();
  if (len < 2 * delta) throw PreconditionError("cycle shorter than twice the minimum degree");

  std::vector<char> in1(n, 0), in2(n, 0);
  for (Vertex v : P1.vertices) in1[v] = 1;
  for (Vertex v : P2.vertices) {
    if (in1[v]) return Verdict::fail("disjoint paths: P1 and P2 share vertex " + std::to_string(v));
    in2[v] = 1;
  }

  // cycle form: put P1 at the front of the cycle, then P2 must be a later block
  const auto& cv = C.vertices;
  int a = static_cast<int>(P1.vertices.size()), b = static_cast<int>(P2.vertices.size());
  std::vector<Vertex> cyc;
  for (int dir : {1, -1}) {
    int start = static_cast<int>(std::find(cv.begin(), cv.end(), P1.vertices[0]) - cv.begin());
    if (start == len) break;
    std::vector<Vertex> rot;
    for (int i = 0; i < len; ++i) rot.push_back(cv[((start + dir * i) % len + len) % len]);
    if (std::equal(P1.vertices.begin(), P1.vertices.end(), rot.begin())) {
      cyc = std::move(rot);
      break;
    }
  }
  if (cyc.empty()) return Verdict::fail("cycle form: P1 is not a segment of C");
  int pos2 = static_cast<int>(std::find(cyc.begin(), cyc.end(), P2.vertices.front()) - cyc.begin());
  bool forward = pos2 + b <= len && std::equal(P2.vertices.begin(), P2.vertices.end(), cyc.begin() + pos2);
  int pos2r = static_cast<int>(std::find(cyc.begin(), cyc.end(), P2.vertices.back()) - cyc.begin());
  bool backward = pos2r + b <= len && std::equal(P2.vertices.rbegin(), P2.vertices.rend(), cyc.begin() + pos2r);
  if (!forward && !backward) return Verdict::fail("cycle form: P2 is not a segment of C");
  int p2 = forward ? pos2 : pos2r;
  int edges1 = p2 - a + 1, edges2 = len - (p2 + b) + 1;
  if (edges1 < delta - 2 || edges2 < delta - 2)
    return Verdict::fail("cycle form: a connecting path has fewer than delta-2 edges");
  VertexSet inner1(cyc.begin() + a, cyc.begin() + p2), inner2(cyc.begin() + p2 + b, cyc.end());
  std::sort(inner1.begin(), inner1.end());
  std::sort(inner2.begin(), inner2.end());

  std::vector<char> removed(n, 0);
  for (Vertex v = 0; v < n; ++v) removed[v] = in1[v] || in2[v];
  auto comps = connected_components(g, &removed);
  int hit1 = 0, hit2 = 0;
  for (const auto& H : comps) {
    hit1 += H == inner1;
    hit2 += H == inner2;
    auto sub = induce(g, H);
    int size = static_cast<int>(H.size());
    if (size >= 3 && is_two_connected(sub.graph)) {
      if (detail::bipartite_matching(g, H, in1) == 1 && detail::bipartite_matching(g, H, in2) == 1) continue;
      return Verdict::fail("component rule: 2-connected component without unit matchings to P1 and P2");
    }
    if (size < 3) return Verdict::fail("component rule: component with fewer than three vertices");
    auto blocks = blocks_and_cut_vertices(sub.graph);
    std::vector<char> cut(size, 0);
    for (Vertex c : blocks.cut_vertices) cut[c] = 1;
    std::vector<char> inner_leaf(size, 0);
    for (const auto& blk : blocks.blocks) {
      if (std::count_if(blk.begin(), blk.end(), [&](Vertex v) { return cut[v] != 0; }) != 1) continue;
      for (Vertex v : blk)
        if (!cut[v]) inner_leaf[v] = 1;
    }
    auto attached = [&](const std::vector<char>& side) {
      std::vector<char> seen(n, 0);
      int c = 0;
      for (Vertex v : H)
        for (Vertex w : g.neighbors(v))
          if (side[w] && !seen[w]) seen[w] = 1, ++c;
      return c;
    };
    auto leaf_touches = [&](const std::vector<char>& side) {
      for (int i = 0; i < size; ++i)
        if (inner_leaf[i])
          for (Vertex w : g.neighbors(sub.parent(i)))
            if (side[w]) return true;
      return false;
    };
    bool one = attached(in1) == 1 && !leaf_touches(in2);
    bool two = attached(in2) == 1 && !leaf_touches(in1);
    if (!one && !two) return Verdict::fail("component rule: separable component attached to both paths");
  }
  if (hit1 != 1 || hit2 != 1) return Verdict::fail("connector interior: interior of a connecting path is not a component");
  return {};
}

// ---------------------------------------------------------------- engine

struct LongerCycle {
  CycleCertificate cycle;
};
struct VertexCover {
  VertexSet cover;
};
struct Hamiltonian {};
struct Incomplete {
  std::string reason;
};
using EngineOutcome = std::variant<LongerCycle, VertexCover, Hamiltonian, Incomplete>;

struct EngineConfig {
  long long rotation_budget = 0;  // 0: 200 n
  long long cover_nodes = 2'000'000;
  std::uint64_t seed = 0x5eed;
};

inline bool is_vertex_cover(const Graph& g, const VertexSet& X) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : X) in[v] = 1;
  for (auto [u, v] : g.edges())
    if (!in[u] && !in[v]) return false;
  return true;
}

namespace detail {

// vertex cover of size <= bound; nullopt with `exhausted` set when the node budget ran out
inline std::optional<VertexSet> bounded_vertex_cover(const Graph& g, int bound, long long nodes, bool& exhausted) {
  int n = g.n();
  exhausted = false;
  {
    std::vector<char> matched(n, 0);
    VertexSet cover;
    for (auto [u, v] : g.edges())
      if (!matched[u] && !matched[v]) matched[u] = matched[v] = 1, cover.push_back(u), cover.push_back(v);
    if (static_cast<int>(cover.size()) <= bound) {
      std::sort(cover.begin(), cover.end());
      return cover;
    }
    if (static_cast<int>(cover.size()) > 2 * bound) return std::nullopt;  // the matching alone needs > bound
  }
  std::vector<char> taken(n, 0);
  VertexSet chosen;
  auto live_degree = [&](Vertex v) {
    int d = 0;
    for (Vertex w : g.neighbors(v)) d += !taken[w];
    return d;
  };
  auto rec = [&](auto&& self, int left) -> bool {
    if (--nodes < 0) {
      exhausted = true;
      return false;
    }
    std::vector<Vertex> forced;
    Vertex best = -1;
    int best_deg = 0;
    long long edges = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (taken[v]) continue;
      int d = live_degree(v);
      edges += d;
      if (d > left) forced.push_back(v);
      if (d > best_deg) best = v, best_deg = d;
    }
    edges /= 2;
    if (edges == 0) return true;
    if (static_cast<int>(forced.size()) > left) return false;
    if (!forced.empty()) {
      for (Vertex v : forced) taken[v] = 1, chosen.push_back(v);
      if (self(self, left - static_cast<int>(forced.size()))) return true;
      for (Vertex v : forced) taken[v] = 0, chosen.pop_back();
      return false;
    }
    if (edges > static_cast<long long>(left) * best_deg) return false;
    taken[best] = 1;
    chosen.push_back(best);
    if (self(self, left - 1)) return true;
    taken[best] = 0;
    chosen.pop_back();
    if (exhausted) return false;
    std::vector<Vertex> nb;
    for (Vertex w : g.neighbors(best))
      if (!taken[w]) nb.push_back(w);
    if (static_cast<int>(nb.size()) > left) return false;
    for (Vertex w : nb) taken[w] = 1, chosen.push_back(w);
    if (self(self, left - static_cast<int>(nb.size()))) return true;
    for (std::size_t i = 0; i < nb.size(); ++i) taken[nb[i]] = 0, chosen.pop_back();
    return false;
  };
  if (!rec(rec, bound)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline std::optional<Seq> insert_outside_vertex(const Graph& g, const Seq& cyc) {
  int len = static_cast<int>(cyc.size());
  std::vector<char> on(g.n(), 0);
  for (Vertex v : cyc) on[v] = 1;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (on[v]) continue;
    for (int i = 0; i < len; ++i)
      if (g.adjacent(v, cyc[i]) && g.adjacent(v, cyc[(i + 1) % len])) return splice(cyc, i, {v});
  }
  return std::nullopt;
}

}  // namespace detail

inline EngineOutcome corollary5_engine(const Graph& h, int k, const CycleCertificate& C, Mode mode = Mode::strict,
                                       const EngineConfig& cfg = {}) {
  int n = h.n(), delta = h.min_degree(), len = C.length();
  if (auto v = detail::check_walk(h, C.vertices, true); !v) throw DataError("engine cycle: " + v.diagnostic);
  if (mode == Mode::strict) {
    if (!is_three_connected(h)) throw PreconditionError("engine needs a 3-connected graph");
    if (k <= 0 || 24 * k > delta) throw PreconditionError("engine needs 0 < k <= delta/24");
    if (len >= 2 * delta + k) throw PreconditionError("engine needs a cycle shorter than 2 delta + k");
  }
  if (len == n) return Hamiltonian{};
  if (2 * delta >= n && is_two_connected(h)) {
    try {
      auto ham = dirac_cycle(h);
      if (ham.length() > len) return LongerCycle{{ham.vertices, len + 1}};
    } catch (const ConstructionFailure&) {
    }
  }
  if (auto bigger = detail::insert_outside_vertex(h, C.vertices)) return LongerCycle{{*bigger, len + 1}};
  detail::Posa posa(h, {}, cfg.seed);
  long long budget = cfg.rotation_budget > 0 ? cfg.rotation_budget : 200LL * n;
  if (auto bigger = posa.enlarge(C.vertices, budget)) return LongerCycle{{*bigger, len + 1}};
  if (auto bigger = posa.ear_enlarge(C.vertices)) return LongerCycle{{*bigger, len + 1}};
  bool exhausted = false;
  if (auto cover = detail::bounded_vertex_cover(h, delta + 2 * k, cfg.cover_nodes, exhausted)) return VertexCover{*cover};
  return Incomplete{exhausted ? "vertex cover search ran out of budget" : "no longer cycle found and no small vertex cover"};
}

// ---------------------------------------------------------------- witnesses

struct FoundCycle {
  CycleCertificate cycle;
};
struct SmallDense {
  VertexSet H;
};
struct BipartiteDense {
  VertexSet H, A, B;
};

struct DenseWitness {
  std::variant<FoundCycle, SmallDense, BipartiteDense> value;
  int k = 0;
  Rational mad;
  int k_prime = 0;
  std::string branch;  // separator | dirac | engine
  int engine_rounds = 0;
  int probes = 0;
  ReductionTrace trace;
};

inline Verdict check_small_dense(const Graph& g, const VertexSet& H, const Rational& mad, int k) {
  auto sub = induce(g, H);
  Rational ad = average_degree(sub.graph);
  if (ad < mad - Rational(1)) return Verdict::fail("ad(H) below mad - 1");
  if (Rational(2 * sub.graph.min_degree()) < ad) return Verdict::fail("min degree of H below ad(H)/2");
  if (!(Rational(static_cast<long long>(H.size())) < ad + Rational(k + 1)))
    return Verdict::fail("H has at least ad(H) + k + 1 vertices");
  return {};
}

inline Verdict check_bipartite_dense(const Graph& g, const BipartiteDense& w, const Rational& mad, int k) {
  std::vector<char> inA(g.n(), 0), inB(g.n(), 0);
  for (Vertex v : w.A) inA[v] = 1;
  for (Vertex v : w.B) {
    if (inA[v]) return Verdict::fail("A and B overlap");
    inB[v] = 1;
  }
  VertexSet both;
  for (Vertex v = 0; v < g.n(); ++v)
    if (inA[v] || inB[v]) both.push_back(v);
  if (both != w.H) return Verdict::fail("A and B do not partition H");
  long long p = static_cast<long long>(w.A.size());
  for (Vertex v : w.B)
    for (Vertex u : g.neighbors(v))
      if (inB[u]) return Verdict::fail("B is not independent");
  if (Rational(2 * p) < mad - Rational(8LL * k)) return Verdict::fail("|A| below mad/2 - 4k");
  for (Vertex v : w.A) {
    long long c = 0;
    for (Vertex u : g.neighbors(v)) c += inB[u];
    if (c < 2 * p) return Verdict::fail("an A-vertex has fewer than 2|A| neighbours in B");
  }
  for (Vertex v : w.B) {
    long long c = 0;
    for (Vertex u : g.neighbors(v)) c += inA[u];
    if (c < p - 2LL * k - 2) return Verdict::fail("a B-vertex has fewer than |A|-2k-2 neighbours in H");
  }
  return {};
}

inline Verdict check_dense_witness(const Graph& g, const DenseWitness& w) {
  if (auto* f = std::get_if<FoundCycle>(&w.value)) {
    if (auto v = verify_cycle_certificate(g, f->cycle); !v) return v;
    if (Rational(f->cycle.length()) < w.mad + Rational(w.k)) return Verdict::fail("cycle shorter than mad + k");
    return {};
  }
  if (auto* s = std::get_if<SmallDense>(&w.value)) return check_small_dense(g, s->H, w.mad, w.k);
  return check_bipartite_dense(g, std::get<BipartiteDense>(w.value), w.mad, w.k);
}

// ids of the result are those of h
inline BipartiteDense refine_vertex_cover_to_partition(const Graph& h, const VertexSet& X, int k,
                                                       std::optional<Rational> host_mad = std::nullopt) {
  for (Vertex v : X)
    if (v < 0 || v >= h.n()) throw DataError("cover vertex out of range");
  if (!is_vertex_cover(h, X)) throw DataError("X is not a vertex cover");
  std::vector<char> inX(h.n(), 0);
  for (Vertex v : X) inX[v] = 1;
  long long p = 0;
  for (Vertex v = 0; v < h.n(); ++v) p += inX[v];
  BipartiteDense w;
  for (Vertex v = 0; v < h.n(); ++v)
    if (!inX[v]) w.B.push_back(v);
  for (Vertex v = 0; v < h.n(); ++v) {
    if (!inX[v]) continue;
    long long c = 0;
    for (Vertex u : h.neighbors(v)) c += !inX[u];
    if (c >= 2 * p) w.A.push_back(v);
  }
  std::merge(w.A.begin(), w.A.end(), w.B.begin(), w.B.end(), std::back_inserter(w.H));
  Rational mad = host_mad ? *host_mad : mad_with_witness(h).mad;
  if (auto v = check_bipartite_dense(h, w, mad, k); !v) throw ConstructionFailure("refinement failed: " + v.diagnostic);
  return w;
}

// ---------------------------------------------------------------- the pipeline

inline DenseWitness find_dense(const Graph& g, int k, Mode mode = Mode::strict, const EngineConfig& cfg = {}) {
  if (g.n() < 2) throw PreconditionError("find_dense needs at least two vertices");
  if (k <= 0) throw PreconditionError("find_dense needs k > 0");
  if (g.m() == 0) throw PreconditionError("find_dense needs at least one edge");
  DenseWitness out;
  out.k = k;
  auto dens = mad_with_witness(g);
  out.mad = dens.mad;
  out.probes = dens.probes;
  if (mode == Mode::strict && Rational(80LL * (k + 1)) > dens.mad) throw PreconditionError("need k <= mad/80 - 1");
  long long target = dens.mad.ceil() + k;  // cycle length that settles the instance

  auto [hv, trace] = reduce_exhaustive(g, dens.vertices);
  out.trace = std::move(trace);
  auto sub = induce(g, hv);
  const Graph& h = sub.graph;
  auto lift = [&](const std::vector<Vertex>& local) { return sub.lift(local); };
  auto accept_small = [&]() {
    if (auto v = check_small_dense(g, hv, out.mad, k); !v)
      throw ConstructionFailure("small dense witness invalid: " + v.diagnostic);
    out.value = SmallDense{hv};
  };

  if (!is_two_connected(h)) throw ConstructionFailure("reduced graph is not 2-connected");
  if (auto seps = two_separators(h); !seps.empty()) {
    out.branch = "separator";
    auto [x, y] = seps.front();
    std::vector<char> removed(h.n(), 0);
    removed[x] = removed[y] = 1;
    auto comps = connected_components(h, &removed);
    Rational eg = eg_bound(h);
    std::vector<std::vector<Vertex>> halves;
    for (int i = 0; i < 2; ++i) {
      if (avg_degree_of_set(h, comps[i]) * Rational(3) <= eg * Rational(2))
        throw ConstructionFailure("separator side is not dense enough");
      VertexSet side = comps[i];
      side.push_back(x);
      side.push_back(y);
      auto piece = induce(h, side);
      Edge xy{piece.local(x), piece.local(y)};
      Graph pg = with_extra_edges(piece.graph, std::span<const Edge>(&xy, 1));
      auto path = fan_path(pg, xy.first, xy.second);
      halves.push_back(piece.lift(path.vertices));
    }
    std::vector<Vertex> cyc = halves[0];
    for (int i = static_cast<int>(halves[1].size()) - 2; i >= 1; --i) cyc.push_back(halves[1][i]);
    CycleCertificate c{lift(cyc), static_cast<int>(target)};
    if (!verify_cycle_certificate(g, c)) throw ConstructionFailure("separator cycle too short");
    out.value = FoundCycle{c};
    return out;
  }

  int delta = h.min_degree();
  out.k_prime = static_cast<int>(target - 2LL * delta);
  CycleCertificate cyc = dirac_cycle(h);
  if (out.k_prime <= 0) {
    out.branch = "dirac";
    if (cyc.length() >= target) {
      out.value = FoundCycle{{lift(cyc.vertices), static_cast<int>(target)}};
      return out;
    }
    accept_small();
    return out;
  }

  out.branch = "engine";
  while (true) {
    if (cyc.length() >= target) {
      out.value = FoundCycle{{lift(cyc.vertices), static_cast<int>(target)}};
      return out;
    }
    ++out.engine_rounds;
    auto res = corollary5_engine(h, out.k_prime, cyc, mode, cfg);
    if (auto* lc = std::get_if<LongerCycle>(&res)) {
      cyc = lc->cycle;
      continue;
    }
    if (std::holds_alternative<Hamiltonian>(res)) {
      accept_small();
      return out;
    }
    if (auto* vc = std::get_if<VertexCover>(&res)) {
      auto part = refine_vertex_cover_to_partition(h, vc->cover, k, out.mad);
      BipartiteDense w{lift(part.H), lift(part.A), lift(part.B)};
      out.value = std::move(w);
      return out;
    }
    throw ConstructionFailure("engine incomplete: " + std::get<Incomplete>(res).reason);
  }
}

}  // namespace lcmad
