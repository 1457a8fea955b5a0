#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "random.hpp"
#include "rotation.hpp"

namespace lcmad {

namespace detail {

// colorful (s,t)-path with at least min_vertices vertices among allowed vertices; colors in [0,q)
inline std::optional<Seq> colorful_st_path(const Graph& g, Vertex s, Vertex t, const std::vector<int>& color, int q,
                                           int min_vertices, const std::vector<char>* allowed) {
  int n = g.n();
  if (q > 20) throw std::invalid_argument("too many colors for subset DP");
  std::size_t masks = std::size_t(1) << q, words = (masks + 63) / 64;
  std::vector<Vertex> verts;
  for (Vertex v = 0; v < n; ++v)
    if (v == s || v == t || !allowed || (*allowed)[v]) verts.push_back(v);
  std::vector<int> idx(n, -1);
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) idx[verts[i]] = i;
  std::vector<std::vector<std::uint64_t>> reach(verts.size(), std::vector<std::uint64_t>(words, 0));
  auto get = [&](int i, std::size_t m) { return (reach[i][m >> 6] >> (m & 63)) & 1; };
  auto set = [&](int i, std::size_t m) { reach[i][m >> 6] |= std::uint64_t(1) << (m & 63); };
  set(idx[s], std::size_t(1) << color[s]);
  std::size_t found = 0;
  for (std::size_t m = 1; m < masks; ++m) {
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
      if (!get(i, m)) continue;
      Vertex v = verts[i];
      if (v == t) {
        if (std::popcount(m) >= min_vertices) {
          found = m;
          break;
        }
        continue;
      }
      for (Vertex w : g.neighbors(v)) {
        int j = idx[w];
        if (j < 0 || (m >> color[w] & 1)) continue;
        set(j, m | (std::size_t(1) << color[w]));
      }
    }
    if (found) break;
  }
  if (!found) return std::nullopt;
  Seq path{t};
  std::size_t m = found;
  Vertex cur = t;
  while (cur != s) {
    std::size_t prev = m & ~(std::size_t(1) << color[cur]);
    Vertex pick = -1;
    for (Vertex u : g.neighbors(cur)) {
      int j = idx[u];
      if (j >= 0 && u != t && get(j, prev)) {
        pick = u;
        break;
      }
    }
    cur = pick;
    m = prev;
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

inline CycleCertificate dirac_cycle(const Graph& g) {
  if (!is_two_connected(g)) throw PreconditionError("dirac_cycle needs a 2-connected graph");
  int n = g.n();
  int target = std::min(n, 2 * g.min_degree());
  detail::Posa eng(g);
  long long budget = 2000LL * n;
  auto res = eng.close_path({0}, budget);
  detail::Seq cyc = res.closed ? res.seq : *eng.best_sub_cycle(res.seq);
  while (static_cast<int>(cyc.size()) < target) {
    if (auto bigger = eng.enlarge(cyc, budget)) {
      cyc = std::move(*bigger);
      continue;
    }
    if (auto bigger = eng.ear_enlarge(cyc)) {
      cyc = std::move(*bigger);
      continue;
    }
    break;
  }
  if (static_cast<int>(cyc.size()) < target) {
    auto [status, found] = detail::dfs_cycle_at_least(g, target, 20'000'000);
    if (status != detail::SearchStatus::found)
      throw ConstructionFailure("dirac_cycle: no cycle of length " + std::to_string(target) + " found");
    cyc = std::move(found);
  }
  return {cyc, target};
}

inline PathCertificate fan_path(const Graph& g, Vertex s, Vertex t) {
  if (s == t) throw PreconditionError("fan_path needs distinct endpoints");
  if (!is_two_connected(g)) throw PreconditionError("fan_path needs a 2-connected graph");
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < g.n(); ++v)
    if (v != s && v != t) rest.push_back(v);
  int target = static_cast<int>(avg_degree_of_set(g, rest).ceil()) + 1;  // vertices
  Edge st{s, t};
  Graph g2 = with_extra_edges(g, std::span<const Edge>(&st, 1));
  detail::Posa eng(g2, std::span<const Edge>(&st, 1));
  long long budget = 2000LL * g.n();
  auto res = eng.close_path({s, t}, budget);
  std::optional<detail::Seq> cyc;
  if (res.closed && eng.keeps_fixed(res.seq)) cyc = res.seq;
  else cyc = eng.best_sub_cycle(res.seq);
  while (cyc && static_cast<int>(cyc->size()) < target) {
    auto bigger = eng.enlarge(*cyc, budget);
    if (!bigger) bigger = eng.ear_enlarge(*cyc);
    if (!bigger) break;
    cyc = std::move(bigger);
  }
  if (cyc && static_cast<int>(cyc->size()) >= target) {
    const auto& c = *cyc;
    int len = static_cast<int>(c.size());
    int i = static_cast<int>(std::find(c.begin(), c.end(), s) - c.begin());
    int dir = c[(i + 1) % len] == t ? -1 : 1;
    PathCertificate p;
    for (int k = 0; k < len; ++k) p.vertices.push_back(c[((i + dir * k) % len + len) % len]);
    return p;
  }
  auto [status, path] = detail::dfs_st_path(g, s, t, target, 20'000'000);
  if (status != detail::SearchStatus::found)
    throw ConstructionFailure("fan_path: no long (s,t)-path found");
  return {path};
}

struct StPathResult {
  std::optional<PathCertificate> path;
  bool exhaustive = false;  // an absent path is proven absent
  std::uint64_t trials = 0;
};

inline std::uint64_t default_trials(double exponent, std::uint64_t budget) {
  double want = std::ceil(5.0 * std::exp(std::min(exponent, 60.0)));
  return want >= static_cast<double>(budget) ? budget : static_cast<std::uint64_t>(want);
}

// (s,t)-path with at least target_vertices vertices; `allowed` restricts the interior
inline StPathResult st_path_at_least(const Graph& g, Vertex s, Vertex t, int target_vertices,
                                     const TrialConfig& cfg = {}, const std::vector<char>* allowed = nullptr) {
  if (s == t) throw PreconditionError("st_path_at_least needs distinct endpoints");
  StPathResult out;
  int pool = 0;
  for (Vertex v = 0; v < g.n(); ++v) pool += (v == s || v == t || !allowed || (*allowed)[v]);
  if (target_vertices > pool) {
    out.exhaustive = true;
    return out;
  }
  if (target_vertices <= 2 && g.adjacent(s, t)) {
    out.path = PathCertificate{{s, t}};
    out.exhaustive = true;
    return out;
  }
  if (pool <= 12) {
    // one color per vertex: the colorful DP is exact
    std::vector<int> color(g.n(), 0);
    int c = 0;
    for (Vertex v = 0; v < g.n(); ++v)
      if (v == s || v == t || !allowed || (*allowed)[v]) color[v] = c++;
    if (auto p = detail::colorful_st_path(g, s, t, color, c, target_vertices, allowed)) out.path = PathCertificate{*p};
    out.exhaustive = true;
    return out;
  }
  auto [status, path] = detail::dfs_st_path(g, s, t, target_vertices, 200'000, allowed);
  if (status == detail::SearchStatus::found) {
    out.path = PathCertificate{path};
    return out;
  }
  if (status == detail::SearchStatus::none) {
    out.exhaustive = true;
    return out;
  }
  int q = std::min({pool, 2 * target_vertices, 16});
  if (q < target_vertices) return out;
  std::uint64_t trials = cfg.trials.value_or(default_trials(target_vertices, cfg.budget));
  out.trials = trials;
  auto hit = run_trials<detail::Seq>(trials, cfg.offset, cfg.jobs, [&](std::uint64_t trial) -> std::optional<detail::Seq> {
    Rng rng(derive_seed(cfg.seed, 0x57a7, trial));
    std::vector<int> color(g.n());
    for (auto& c : color) c = static_cast<int>(uniform_below(rng, q));
    return detail::colorful_st_path(g, s, t, color, q, target_vertices, allowed);
  });
  if (hit) out.path = PathCertificate{*hit};
  return out;
}

}  // namespace lcmad
