#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace lcmad {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using VertexSet = std::vector<Vertex>;  // kept sorted unless stated otherwise

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int n() const { return static_cast<int>(adj_.size()); }
  long long m() const { return m_; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex w = &a == &adj_[u] ? v : u;
    return std::binary_search(a.begin(), a.end(), w);
  }

  int min_degree() const {
    int d = n() ? degree(0) : 0;
    for (Vertex v = 1; v < n(); ++v) d = std::min(d, degree(v));
    return d;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

  friend Graph build_graph(std::span<const Edge> edges, int n);

 private:
  std::vector<std::vector<Vertex>> adj_;
  long long m_ = 0;
};

inline Graph build_graph(std::span<const Edge> edges, int n) {
  if (n < 0) throw DataError("negative vertex count");
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw DataError("vertex id out of range in edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u == v) throw DataError("self-loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  long long twice = 0;
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    twice += static_cast<long long>(a.size());
  }
  g.m_ = twice / 2;
  return g;
}

inline Graph build_graph(std::initializer_list<Edge> edges, int n) {
  return build_graph(std::span<const Edge>(edges.begin(), edges.size()), n);
}

inline Graph with_extra_edges(const Graph& g, std::span<const Edge> extra) {
  auto e = g.edges();
  e.insert(e.end(), extra.begin(), extra.end());
  return build_graph(e, g.n());
}

inline Rational eg_bound(const Graph& g) {
  if (g.n() < 2) throw PreconditionError("l_EG needs at least two vertices");
  return Rational(2 * g.m(), g.n() - 1);
}

inline Rational avg_degree_of_set(const Graph& g, std::span<const Vertex> X) {
  if (X.empty()) throw PreconditionError("average degree of an empty set");
  long long s = 0;
  for (Vertex v : X) s += g.degree(v);
  return Rational(s, static_cast<long long>(X.size()));
}

inline Rational average_degree(const Graph& g) {
  if (g.n() == 0) throw PreconditionError("average degree of the empty graph");
  return Rational(2 * g.m(), g.n());
}

// edges with both ends in X
inline long long induced_edge_count(const Graph& g, std::span<const Vertex> X) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : X) in[v] = 1;
  long long c = 0;
  for (Vertex v : X)
    for (Vertex w : g.neighbors(v))
      if (in[w] && v < w) ++c;
  return c;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local id -> parent id
  std::vector<Vertex> to_local;   // parent id -> local id or -1

  Vertex parent(Vertex local) const { return to_parent[local]; }
  Vertex local(Vertex parent) const { return to_local[parent]; }

  std::vector<Vertex> lift(std::span<const Vertex> local_ids) const {
    std::vector<Vertex> out;
    out.reserve(local_ids.size());
    for (Vertex v : local_ids) out.push_back(to_parent[v]);
    return out;
  }
};

// vertices are renumbered in increasing parent-id order
inline InducedSubgraph induce(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph s;
  s.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(s.to_parent.begin(), s.to_parent.end());
  s.to_parent.erase(std::unique(s.to_parent.begin(), s.to_parent.end()), s.to_parent.end());
  s.to_local.assign(g.n(), -1);
  for (int i = 0; i < static_cast<int>(s.to_parent.size()); ++i) s.to_local[s.to_parent[i]] = i;
  std::vector<Edge> e;
  for (Vertex v : s.to_parent)
    for (Vertex w : g.neighbors(v))
      if (v < w && s.to_local[w] >= 0) e.emplace_back(s.to_local[v], s.to_local[w]);
  s.graph = build_graph(e, static_cast<int>(s.to_parent.size()));
  return s;
}

inline std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> v(g.n());
  for (int i = 0; i < g.n(); ++i) v[i] = i;
  return v;
}

// components of g minus the vertices flagged in `removed`, each sorted, ordered by smallest vertex
inline std::vector<VertexSet> connected_components(const Graph& g, const std::vector<char>* removed = nullptr) {
  std::vector<char> seen(g.n(), 0);
  if (removed)
    for (Vertex v = 0; v < g.n(); ++v) seen[v] = (*removed)[v];
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex r = 0; r < g.n(); ++r) {
    if (seen[r]) continue;
    VertexSet comp;
    seen[r] = 1;
    stack.push_back(r);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) seen[w] = 1, stack.push_back(w);
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return g.n() > 0 && connected_components(g).size() == 1; }

struct BlockDecomposition {
  std::vector<VertexSet> blocks;  // sorted vertex lists, ordered lexicographically
  VertexSet cut_vertices;
};

namespace detail {

// Hopcroft-Tarjan over g minus `skip` (-1 for none). Requires the remaining graph connected.
// Returns per-vertex cut flags; optionally collects blocks.
inline std::vector<char> biconnected(const Graph& g, Vertex skip, std::vector<VertexSet>* blocks) {
  int n = g.n();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), it(n, 0);
  std::vector<char> cut(n, 0);
  std::vector<Edge> estack;
  std::vector<Vertex> stack;
  int timer = 0;
  Vertex root = -1;
  for (Vertex v = 0; v < n; ++v)
    if (v != skip) { root = v; break; }
  if (root < 0) return cut;
  int root_children = 0;
  disc[root] = low[root] = timer++;
  stack.push_back(root);
  while (!stack.empty()) {
    Vertex v = stack.back();
    auto nb = g.neighbors(v);
    if (it[v] < static_cast<int>(nb.size())) {
      Vertex w = nb[it[v]++];
      if (w == skip) continue;
      if (disc[w] < 0) {
        parent[w] = v;
        if (v == root) ++root_children;
        estack.emplace_back(v, w);
        disc[w] = low[w] = timer++;
        stack.push_back(w);
      } else if (w != parent[v] && disc[w] < disc[v]) {
        low[v] = std::min(low[v], disc[w]);
        estack.emplace_back(v, w);
      }
      continue;
    }
    stack.pop_back();
    Vertex p = parent[v];
    if (p < 0) continue;
    low[p] = std::min(low[p], low[v]);
    if (low[v] >= disc[p]) {
      if (p != root) cut[p] = 1;
      if (blocks) {
        VertexSet b;
        while (!estack.empty()) {
          Edge e = estack.back();
          estack.pop_back();
          b.push_back(e.first);
          b.push_back(e.second);
          if (e.first == p && e.second == v) break;
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        blocks->push_back(std::move(b));
      }
    }
  }
  if (root_children > 1) cut[root] = 1;
  if (blocks && blocks->empty()) blocks->push_back({root});
  return cut;
}

}  // namespace detail

inline BlockDecomposition blocks_and_cut_vertices(const Graph& g) {
  if (!is_connected(g)) throw PreconditionError("block decomposition needs a connected graph");
  BlockDecomposition d;
  auto cut = detail::biconnected(g, -1, &d.blocks);
  std::sort(d.blocks.begin(), d.blocks.end());
  for (Vertex v = 0; v < g.n(); ++v)
    if (cut[v]) d.cut_vertices.push_back(v);
  return d;
}

inline bool is_two_connected(const Graph& g) {
  if (g.n() < 3 || !is_connected(g)) return false;
  auto cut = detail::biconnected(g, -1, nullptr);
  return std::none_of(cut.begin(), cut.end(), [](char c) { return c != 0; });
}

// all {x,y} (x<y) whose removal disconnects g, lexicographic order
inline std::vector<Edge> two_separators(const Graph& g) {
  if (!is_two_connected(g)) throw PreconditionError("two_separators needs a 2-connected graph");
  std::vector<Edge> out;
  if (g.n() <= 3) return out;
  for (Vertex x = 0; x < g.n(); ++x) {
    auto cut = detail::biconnected(g, x, nullptr);
    for (Vertex y = x + 1; y < g.n(); ++y)
      if (cut[y]) out.emplace_back(x, y);
  }
  return out;
}

inline bool is_three_connected(const Graph& g) {
  return g.n() >= 4 && is_two_connected(g) && two_separators(g).empty();
}

inline int degeneracy(const Graph& g) {
  int n = g.n();
  std::vector<int> deg(n);
  int maxd = 0;
  for (Vertex v = 0; v < n; ++v) maxd = std::max(maxd, deg[v] = g.degree(v));
  std::vector<std::vector<Vertex>> bucket(maxd + 1);
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
  std::vector<char> gone(n, 0);
  int best = 0, d = 0;
  for (int done = 0; done < n;) {
    d = std::max(0, d - 1);
    while (d <= maxd && bucket[d].empty()) ++d;
    Vertex v = bucket[d].back();
    bucket[d].pop_back();
    if (gone[v] || deg[v] != d) continue;
    gone[v] = 1;
    ++done;
    best = std::max(best, d);
    for (Vertex w : g.neighbors(v))
      if (!gone[w]) bucket[--deg[w]].push_back(w);
  }
  return best;
}

struct CycleCertificate {
  std::vector<Vertex> vertices;
  long long claimed_min_length = 3;

  long long length() const { return static_cast<long long>(vertices.size()); }
};

struct PathCertificate {
  std::vector<Vertex> vertices;

  long long length() const { return static_cast<long long>(vertices.size()) - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
};

struct Verdict {
  bool ok = true;
  std::string diagnostic;

  static Verdict fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

namespace detail {

inline Verdict check_walk(const Graph& g, std::span<const Vertex> seq, bool closed) {
  std::vector<char> seen(g.n(), 0);
  for (Vertex v : seq) {
    if (v < 0 || v >= g.n()) return Verdict::fail("vertex id " + std::to_string(v) + " out of range");
    if (seen[v]) return Verdict::fail("repeated vertex " + std::to_string(v));
    seen[v] = 1;
  }
  std::size_t len = seq.size();
  if (closed && len < 3) return Verdict::fail("cycle has " + std::to_string(len) + " vertices, need at least 3");
  if (!closed && len < 1) return Verdict::fail("empty path");
  std::size_t stop = closed ? len : len - 1;
  for (std::size_t i = 0; i < stop; ++i) {
    Vertex u = seq[i], v = seq[(i + 1) % len];
    if (!g.adjacent(u, v))
      return Verdict::fail("missing edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  return {};
}

}  // namespace detail

inline Verdict verify_cycle_certificate(const Graph& g, const CycleCertificate& c) {
  auto v = detail::check_walk(g, c.vertices, true);
  if (!v) return v;
  if (c.length() < c.claimed_min_length)
    return Verdict::fail("length " + std::to_string(c.length()) + " below claimed minimum " +
                         std::to_string(c.claimed_min_length));
  return {};
}

inline Verdict verify_path_certificate(const Graph& g, const PathCertificate& p) {
  return detail::check_walk(g, p.vertices, false);
}

// true if u,v are consecutive somewhere on the cycle
inline bool cycle_has_edge(std::span<const Vertex> cyc, Vertex u, Vertex v) {
  std::size_t n = cyc.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vertex a = cyc[i], b = cyc[(i + 1) % n];
    if ((a == u && b == v) || (a == v && b == u)) return true;
  }
  return false;
}

}  // namespace lcmad
