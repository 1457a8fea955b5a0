#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "rational.hpp"
#include "rotation.hpp"

namespace lcmad {

enum class Mode { strict, relaxed };

// (V, S) must be a linear forest: distinct endpoints, no repeated pair, degree <= 2, no cycle
inline Verdict check_potentially_cyclable(int n, std::span<const Edge> S) {
  std::vector<int> deg(n, 0), parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::set<Edge> seen;
  for (auto [u, v] : S) {
    if (u < 0 || v < 0 || u >= n || v >= n) return Verdict::fail("pair vertex out of range");
    if (u == v) return Verdict::fail("pair (" + std::to_string(u) + "," + std::to_string(v) + ") is a loop");
    if (!seen.insert(std::minmax(u, v)).second)
      return Verdict::fail("pair (" + std::to_string(u) + "," + std::to_string(v) + ") repeated");
    if (++deg[u] > 2 || ++deg[v] > 2) return Verdict::fail("pairs meet a vertex three times");
    if (find(u) == find(v)) return Verdict::fail("pairs form a cycle");
    parent[find(u)] = find(v);
  }
  return {};
}

namespace detail {

// orders S as x1y1, x2y2, ... where consecutive pairs share an endpoint only as y_{i-1} = x_i
inline std::vector<Edge> chain_pairs(int n, std::span<const Edge> S) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : S) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> done(n, 0);
  std::vector<Edge> out;
  for (Vertex start = 0; start < n; ++start) {
    if (done[start] || adj[start].size() != 1) continue;
    Vertex prev = -1, cur = start;
    done[cur] = 1;
    while (true) {
      Vertex next = -1;
      for (Vertex w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      out.emplace_back(cur, next);
      done[next] = 1;
      prev = cur;
      cur = next;
    }
  }
  return out;
}

inline Seq splice(const Seq& cyc, int i, const Seq& inner) {
  Seq out(cyc.begin(), cyc.begin() + i + 1);
  out.insert(out.end(), inner.begin(), inner.end());
  out.insert(out.end(), cyc.begin() + i + 1, cyc.end());
  return out;
}

inline bool is_pair(const std::set<Edge>& S, Vertex u, Vertex v) { return S.count(std::minmax(u, v)) > 0; }

inline void require_cycle_through(const Graph& g2, const Seq& cyc, std::span<const Edge> S, const char* who) {
  CycleCertificate c{cyc, 3};
  if (auto v = verify_cycle_certificate(g2, c); !v) throw ConstructionFailure(std::string(who) + ": " + v.diagnostic);
  for (auto [u, v] : S)
    if (!cycle_has_edge(cyc, u, v)) throw ConstructionFailure(std::string(who) + ": lost a prescribed pair");
}

}  // namespace detail

inline Verdict check_dense_preconditions(const Graph& h, int k, std::size_t pairs) {
  Rational d = average_degree(h);
  if (k <= 0 || Rational(60 * k) > d) return Verdict::fail("need 0 < k <= ad/60");
  if (Rational(2 * h.min_degree()) < d) return Verdict::fail("need min degree >= ad/2");
  if (!(d + Rational(k) > Rational(h.n()))) return Verdict::fail("need ad + k > n");
  if (pairs > static_cast<std::size_t>(k)) return Verdict::fail("more than k pairs");
  return {};
}

// A and B are assumed to partition the vertices of h
inline Verdict check_cover_side_preconditions(const Graph& h, const VertexSet& A, const VertexSet& B, int k,
                                              std::size_t pairs) {
  int p = static_cast<int>(A.size());
  std::vector<char> inA(h.n(), 0);
  for (Vertex v : A) inA[v] = 1;
  if (k <= 0 || 10 * k > p) return Verdict::fail("need 0 < k <= |A|/10");
  for (Vertex v : A) {
    int c = 0;
    for (Vertex w : h.neighbors(v)) c += !inA[w];
    if (c < 2 * p) return Verdict::fail("an A-vertex has fewer than 2|A| neighbours in B");
  }
  for (Vertex v : B)
    if (h.degree(v) < p - k) return Verdict::fail("a B-vertex has fewer than |A|-k neighbours");
  if (4 * static_cast<long long>(pairs) > 9LL * k) return Verdict::fail("more than 9k/4 pairs");
  return {};
}

inline CycleCertificate hamiltonian_through_pairs(const Graph& h, std::vector<Edge> S, int k, Mode mode = Mode::strict) {
  int n = h.n();
  if (auto v = check_potentially_cyclable(n, S); !v) throw DataError("pairs are not potentially cyclable: " + v.diagnostic);
  Rational d = average_degree(h);
  if (mode == Mode::strict)
    if (auto v = check_dense_preconditions(h, k, S.size()); !v) throw PreconditionError(v.diagnostic);
  if (S.empty()) {
    auto e = h.edges();
    if (e.empty()) throw ConstructionFailure("hamiltonian_through_pairs: graph has no edge");
    S.push_back(e.front());
  }
  if (n < 3) throw ConstructionFailure("hamiltonian_through_pairs: fewer than three vertices");
  Graph g = with_extra_edges(h, S);
  std::set<Edge> pairset;
  for (auto [u, v] : S) pairset.insert(std::minmax(u, v));

  std::vector<char> low(n, 0);  // degree at most 4/5 ad
  for (Vertex v = 0; v < n; ++v) low[v] = Rational(5 * h.degree(v)) <= d * Rational(4);

  std::vector<char> blocked(n, 0);
  // internal vertices of a short a..b connection; u, v avoid `far` as well
  auto jump = [&](Vertex a, Vertex b, bool allow_edge, const std::vector<char>& far) -> std::optional<detail::Seq> {
    if (allow_edge && g.adjacent(a, b)) return detail::Seq{};
    auto free = [&](Vertex x) { return !blocked[x] && x != a && x != b; };
    for (Vertex z : g.neighbors(a))
      if (free(z) && g.adjacent(z, b)) return detail::Seq{z};
    for (Vertex u : g.neighbors(a)) {
      if (!free(u) || far[u]) continue;
      for (Vertex v : g.neighbors(b))
        if (free(v) && !far[v] && v != u && g.adjacent(u, v)) return detail::Seq{u, v};
    }
    for (Vertex u : g.neighbors(a)) {
      if (!free(u) || far[u]) continue;
      for (Vertex v : g.neighbors(b)) {
        if (!free(v) || far[v] || v == u) continue;
        for (Vertex w : g.neighbors(u))
          if (free(w) && w != v && g.adjacent(w, v)) return detail::Seq{u, w, v};
      }
    }
    return std::nullopt;
  };

  auto chain = detail::chain_pairs(n, S);
  for (auto [x, y] : chain) blocked[x] = blocked[y] = 1;
  detail::Seq path{chain[0].first, chain[0].second};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    auto [x, y] = chain[i];
    if (path.back() != x) {
      auto mid = jump(path.back(), x, true, low);
      if (!mid) throw ConstructionFailure("hamiltonian_through_pairs: cannot chain the prescribed pairs");
      for (Vertex v : *mid) blocked[v] = 1, path.push_back(v);
      path.push_back(x);
    }
    path.push_back(y);
  }
  // absorb the low-degree vertices; from here on only the path itself is blocked
  std::fill(blocked.begin(), blocked.end(), 0);
  for (Vertex v : path) blocked[v] = 1;
  for (Vertex z = 0; z < n; ++z) {
    if (!low[z] || blocked[z]) continue;
    auto mid = jump(path.back(), z, true, low);
    if (!mid) throw ConstructionFailure("hamiltonian_through_pairs: cannot absorb a low-degree vertex");
    for (Vertex v : *mid) blocked[v] = 1, path.push_back(v);
    blocked[z] = 1;
    path.push_back(z);
  }
  auto close = jump(path.back(), path.front(), path.size() >= 3, low);
  if (!close) throw ConstructionFailure("hamiltonian_through_pairs: cannot close the path");
  detail::Seq cyc = path;
  cyc.insert(cyc.end(), close->begin(), close->end());

  detail::Posa posa(g, S);
  long long budget = 200LL * n;
  std::vector<char> none(n, 0);
  auto case_one = [&]() -> std::optional<detail::Seq> {
    int len = static_cast<int>(cyc.size());
    for (int i = 0; i < len; ++i) {
      Vertex x = cyc[i], y = cyc[(i + 1) % len];
      if (detail::is_pair(pairset, x, y)) continue;
      if (auto mid = jump(x, y, false, none)) return detail::splice(cyc, i, *mid);
    }
    return std::nullopt;
  };
  auto case_two = [&]() -> std::optional<detail::Seq> {
    int len = static_cast<int>(cyc.size());
    for (Vertex v = 0; v < n; ++v) {
      if (blocked[v]) continue;
      for (int i = 0; i < len; ++i) {
        Vertex x = cyc[i], y = cyc[(i + 1) % len];
        if (!detail::is_pair(pairset, x, y) && g.adjacent(v, x) && g.adjacent(v, y))
          return detail::splice(cyc, i, {v});
      }
    }
    return std::nullopt;
  };
  while (static_cast<int>(cyc.size()) < n) {
    std::fill(blocked.begin(), blocked.end(), 0);
    for (Vertex v : cyc) blocked[v] = 1;
    bool short_cycle = Rational(2 * static_cast<long long>(cyc.size())) <= d;
    auto next = short_cycle ? case_one() : case_two();
    if (!next) next = short_cycle ? case_two() : case_one();
    if (!next) next = posa.enlarge(cyc, budget);
    if (!next) throw ConstructionFailure("hamiltonian_through_pairs: cycle stuck at length " + std::to_string(cyc.size()));
    cyc = std::move(*next);
  }
  detail::require_cycle_through(g, cyc, S, "hamiltonian_through_pairs");
  return {cyc, n};
}

inline CycleCertificate cover_side_through_pairs(const Graph& h, const VertexSet& A, const VertexSet& B,
                                                 std::vector<Edge> S, int k, Mode mode = Mode::strict) {
  int n = h.n();
  std::vector<char> inA(n, 0), seen(n, 0);
  for (const VertexSet* side : {&A, &B})
    for (Vertex v : *side) {
      if (v < 0 || v >= n || seen[v]) throw DataError("A and B must partition the vertex set");
      seen[v] = 1;
    }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v]) throw DataError("A and B must partition the vertex set");
  for (Vertex v : A) inA[v] = 1;
  for (Vertex v : B)
    for (Vertex w : h.neighbors(v))
      if (!inA[w]) throw DataError("B is not independent");
  if (auto v = check_potentially_cyclable(n, S); !v) throw DataError("pairs are not potentially cyclable: " + v.diagnostic);
  int p = static_cast<int>(A.size());
  if (mode == Mode::strict)
    if (auto v = check_cover_side_preconditions(h, A, B, k, S.size()); !v) throw PreconditionError(v.diagnostic);
  if (p == 0) throw ConstructionFailure("cover_side_through_pairs: A is empty");
  int s = 0, t = 0;
  for (auto [u, v] : S) {
    if (inA[u] && inA[v]) ++s;
    if (!inA[u] && !inA[v]) ++t;
  }
  std::vector<Edge> edges = S;
  std::vector<Edge> ab;
  for (auto [u, v] : h.edges())
    if (inA[u] != inA[v]) ab.emplace_back(u, v);
  edges.insert(edges.end(), ab.begin(), ab.end());
  Graph g = build_graph(edges, n);  // A-B edges plus the pairs
  std::vector<Edge> chainS = S;
  if (chainS.empty()) {
    if (ab.empty()) throw ConstructionFailure("cover_side_through_pairs: no A-B edge");
    chainS.push_back(ab.front());
  }
  std::set<Edge> pairset;
  for (auto [u, v] : chainS) pairset.insert(std::minmax(u, v));

  std::vector<char> used(n, 0);
  auto fresh = [&](Vertex x, bool want_a) { return !used[x] && inA[x] == want_a; };
  // A-B-alternating connection a .. b through unused vertices (the four endpoint cases)
  auto connect = [&](Vertex a, Vertex b, bool allow_edge) -> std::optional<detail::Seq> {
    if (allow_edge && g.adjacent(a, b)) return detail::Seq{};
    auto common_a = [&](Vertex x, Vertex y) -> Vertex {
      for (Vertex w : g.neighbors(x))
        if (fresh(w, true) && w != a && w != b && g.adjacent(w, y)) return w;
      return -1;
    };
    if (!inA[a] && !inA[b]) {
      if (Vertex v = common_a(a, b); v >= 0) return detail::Seq{v};
      return std::nullopt;
    }
    if (inA[a] && !inA[b]) {
      for (Vertex u : g.neighbors(a))
        if (fresh(u, false) && u != b)
          if (Vertex v = common_a(u, b); v >= 0) return detail::Seq{u, v};
      return std::nullopt;
    }
    if (!inA[a] && inA[b]) {
      for (Vertex v : g.neighbors(b))
        if (fresh(v, false) && v != a)
          if (Vertex u = common_a(a, v); u >= 0) return detail::Seq{u, v};
      return std::nullopt;
    }
    for (Vertex v : g.neighbors(a))
      if (fresh(v, false) && g.adjacent(v, b)) return detail::Seq{v};
    for (Vertex u : g.neighbors(a)) {
      if (!fresh(u, false)) continue;
      for (Vertex v : g.neighbors(b)) {
        if (!fresh(v, false) || v == u) continue;
        if (Vertex w = common_a(u, v); w >= 0) return detail::Seq{u, w, v};
      }
    }
    return std::nullopt;
  };

  auto chain = detail::chain_pairs(n, chainS);
  for (auto [x, y] : chain) used[x] = used[y] = 1;
  detail::Seq path{chain[0].first, chain[0].second};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    auto [x, y] = chain[i];
    if (path.back() != x) {
      auto mid = connect(path.back(), x, true);
      if (!mid) throw ConstructionFailure("cover_side_through_pairs: cannot chain the prescribed pairs");
      for (Vertex v : *mid) used[v] = 1, path.push_back(v);
      path.push_back(x);
    }
    path.push_back(y);
  }
  auto close = connect(path.back(), path.front(), path.size() >= 3);
  if (!close) throw ConstructionFailure("cover_side_through_pairs: cannot close the path");
  detail::Seq cyc = path;
  cyc.insert(cyc.end(), close->begin(), close->end());

  detail::Posa posa(g, chainS);
  long long budget = 200LL * n;
  auto a_count = [&] {
    int c = 0;
    for (Vertex v : cyc) c += inA[v];
    return c;
  };
  // replace an A-B cycle edge xy by x u v y with u outside in B and v outside in A
  auto case_one = [&]() -> std::optional<detail::Seq> {
    int len = static_cast<int>(cyc.size());
    for (int i = 0; i < len; ++i) {
      Vertex x = cyc[i], y = cyc[(i + 1) % len];
      if (detail::is_pair(pairset, x, y) || inA[x] == inA[y]) continue;
      bool flip = !inA[x];
      Vertex xa = flip ? y : x, yb = flip ? x : y;
      for (Vertex u : g.neighbors(xa)) {
        if (!fresh(u, false)) continue;
        for (Vertex v : g.neighbors(u))
          if (fresh(v, true) && g.adjacent(v, yb)) return detail::splice(cyc, i, flip ? detail::Seq{v, u} : detail::Seq{u, v});
      }
    }
    return std::nullopt;
  };
  // replace a segment x z y (x, y in A) by x v u w y for an outside A-vertex u
  auto case_two = [&]() -> std::optional<detail::Seq> {
    int len = static_cast<int>(cyc.size());
    for (Vertex u : A) {
      if (used[u]) continue;
      for (int i = 0; i < len; ++i) {
        Vertex x = cyc[i], z = cyc[(i + 1) % len], y = cyc[(i + 2) % len];
        if (!inA[x] || inA[z] || !inA[y] || detail::is_pair(pairset, x, z) || detail::is_pair(pairset, z, y)) continue;
        for (Vertex v : g.neighbors(u)) {
          if (!fresh(v, false) || !g.adjacent(v, x)) continue;
          for (Vertex w : g.neighbors(u)) {
            if (!fresh(w, false) || w == v || !g.adjacent(w, y)) continue;
            detail::Seq out;
            int j = (i + 1) % len;
            for (int q = 0; q < len; ++q) {
              int idx = (j + 1 + q) % len;  // starts at y, ends at x
              if (idx == j) continue;
              out.push_back(cyc[idx]);
            }
            out.insert(out.end(), {v, u, w});
            return out;
          }
        }
      }
    }
    return std::nullopt;
  };
  while (a_count() < p) {
    std::fill(used.begin(), used.end(), 0);
    for (Vertex v : cyc) used[v] = 1;
    bool many_missing = p - a_count() > 2 * k;
    auto next = many_missing ? case_one() : case_two();
    if (!next) next = many_missing ? case_two() : case_one();
    if (!next) next = posa.enlarge(cyc, budget);
    if (!next) throw ConstructionFailure("cover_side_through_pairs: A not covered");
    cyc = std::move(*next);
  }
  detail::require_cycle_through(g, cyc, chainS, "cover_side_through_pairs");
  int want = 2 * p - s + t;
  if (static_cast<int>(cyc.size()) != want) throw ConstructionFailure("cover_side_through_pairs: length identity failed");
  return {cyc, want};
}

}  // namespace lcmad
