#pragma once

// Brute-force reference implementations. Deliberately naive and self-contained.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace lcmad {

struct OracleCycle {
  int length = 0;  // 0 when acyclic
  std::optional<std::vector<Vertex>> cycle;
};

namespace oracle_detail {

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> a(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v)) a[v] |= std::uint32_t(1) << w;
  return a;
}

inline void check_cap(const Graph& g, int cap, const char* what) {
  if (g.n() > cap)
    throw CapExceeded(std::string(what) + ": " + std::to_string(g.n()) + " vertices exceeds cap " +
                      std::to_string(cap));
}

}  // namespace oracle_detail

// paths[mask] has bit v iff a path starting at the lowest vertex of mask visits exactly mask and ends in v
inline OracleCycle oracle_longest_cycle(const Graph& g, int cap = 18) {
  oracle_detail::check_cap(g, std::min(cap, 24), "oracle_longest_cycle");
  int n = g.n();
  OracleCycle out;
  if (n < 3) return out;
  auto adj = oracle_detail::adjacency_masks(g);
  std::uint32_t full = (std::uint32_t(1) << n) - 1;
  std::vector<std::uint32_t> paths(std::size_t(full) + 1, 0);
  std::uint32_t best_mask = 0;
  int best_end = -1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int r = std::countr_zero(mask);
    if (std::popcount(mask) == 1) {
      paths[mask] = mask;
      continue;
    }
    std::uint32_t acc = 0;
    for (std::uint32_t rest = mask & ~(std::uint32_t(1) << r); rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      if (paths[mask ^ (std::uint32_t(1) << v)] & adj[v]) acc |= std::uint32_t(1) << v;
    }
    paths[mask] = acc;
    int len = std::popcount(mask);
    if (len >= 3 && len > out.length && (acc & adj[r])) {
      out.length = len;
      best_mask = mask;
      best_end = std::countr_zero(acc & adj[r]);
    }
  }
  if (out.length == 0) return out;
  std::vector<Vertex> cyc;
  std::uint32_t mask = best_mask;
  int cur = best_end;
  while (true) {
    cyc.push_back(cur);
    std::uint32_t prev = mask ^ (std::uint32_t(1) << cur);
    if (!prev) break;
    cur = std::countr_zero(paths[prev] & adj[cur]);
    mask = prev;
  }
  out.cycle = std::move(cyc);
  return out;
}

// maximum number of vertices on a simple (s,t)-path, 0 if none
inline int oracle_longest_st_path(const Graph& g, Vertex s, Vertex t, int cap = 18) {
  oracle_detail::check_cap(g, std::min(cap, 24), "oracle_longest_st_path");
  int n = g.n();
  if (s == t) return 1;
  auto adj = oracle_detail::adjacency_masks(g);
  std::uint32_t full = (std::uint32_t(1) << n) - 1, sb = std::uint32_t(1) << s;
  std::vector<std::uint32_t> ends(std::size_t(full) + 1, 0);
  ends[sb] = sb;
  int best = 0;
  for (std::uint32_t mask = sb + 1; mask <= full; ++mask) {
    if (!(mask & sb)) continue;
    std::uint32_t acc = 0;
    for (std::uint32_t rest = mask & ~sb; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      std::uint32_t prev = mask ^ (std::uint32_t(1) << v);
      // t may only be the final vertex
      if (ends[prev] & adj[v] & ~(std::uint32_t(1) << t)) acc |= std::uint32_t(1) << v;
    }
    ends[mask] = acc;
    if (acc >> t & 1) best = std::max(best, std::popcount(mask));
  }
  return best;
}

inline Rational oracle_mad(const Graph& g, int cap = 14) {
  oracle_detail::check_cap(g, std::min(cap, 24), "oracle_mad");
  int n = g.n();
  auto adj = oracle_detail::adjacency_masks(g);
  Rational best(0);
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    long long twice = 0;
    for (std::uint32_t r = mask; r; r &= r - 1) twice += std::popcount(adj[std::countr_zero(r)] & mask);
    Rational d(twice, std::popcount(mask));
    if (d > best) best = d;
  }
  return best;
}

struct OraclePartition {
  std::vector<Vertex> A, B;
};

// exhaustive search for r internally disjoint T-segments with p internal vertices in total whose
// end pairs form a linear forest; with a partition: s A-segments, t B-segments, A-segments >= 2 internals
inline bool oracle_segments(const Graph& g, const std::vector<Vertex>& T, const std::optional<OraclePartition>& part,
                            int r, int p, int s = 0, int t = 0) {
  oracle_detail::check_cap(g, 10, "oracle_segments");
  if (p > 5) throw CapExceeded("oracle_segments: p > 5");
  int n = g.n();
  std::vector<char> inT(n, 0), inA(n, 0);
  for (Vertex v : T) inT[v] = 1;
  if (part)
    for (Vertex v : part->A) inA[v] = 1;

  struct Seg {
    Vertex x, y;
    std::uint32_t inner;
    int count;
  };
  std::vector<Seg> segs;
  std::vector<Vertex> path;
  std::uint32_t used = 0;
  auto dfs = [&](auto&& self, Vertex v) -> void {
    for (Vertex w : g.neighbors(v)) {
      if (inT[w]) {
        if (w > path.front() && path.size() >= 2) {
          std::uint32_t inner = used & ~(std::uint32_t(1) << path.front());
          segs.push_back({path.front(), w, inner, static_cast<int>(path.size()) - 1});
        }
        continue;
      }
      if (used >> w & 1) continue;
      if (static_cast<int>(path.size()) > p) continue;
      used |= std::uint32_t(1) << w;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      used &= ~(std::uint32_t(1) << w);
    }
  };
  for (Vertex x : T) {
    path = {x};
    used = std::uint32_t(1) << x;
    dfs(dfs, x);
  }

  std::vector<int> deg(n, 0), uf(n);
  auto find = [&](int v) {
    while (uf[v] != v) v = uf[v];
    return v;
  };
  std::vector<std::pair<int, int>> undo;
  auto rec = [&](auto&& self, std::size_t from, int left, int internals, int acnt, int bcnt, std::uint32_t busy) -> bool {
    if (left == 0) return internals == p && (!part || (acnt == s && bcnt == t));
    for (std::size_t i = from; i < segs.size(); ++i) {
      const Seg& sg = segs[i];
      if (internals + sg.count > p) continue;
      if (sg.inner & busy) continue;
      if (deg[sg.x] >= 2 || deg[sg.y] >= 2) continue;
      int fx = find(sg.x), fy = find(sg.y);
      if (fx == fy) continue;
      bool isA = part && inA[sg.x] && inA[sg.y];
      bool isB = part && !inA[sg.x] && !inA[sg.y];
      if (isA && sg.count < 2) continue;
      ++deg[sg.x], ++deg[sg.y];
      uf[fx] = fy;
      bool ok = self(self, i + 1, left - 1, internals + sg.count, acnt + isA, bcnt + isB, busy | sg.inner);
      uf[fx] = fx;
      --deg[sg.x], --deg[sg.y];
      if (ok) return true;
    }
    return false;
  };
  for (int v = 0; v < n; ++v) uf[v] = v;
  return rec(rec, 0, r, 0, 0, 0, 0);
}

}  // namespace lcmad
