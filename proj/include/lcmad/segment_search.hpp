#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "long_paths.hpp"
#include "random.hpp"

namespace lcmad {

struct Partition {
  VertexSet A, B;
};

struct SegmentSystem {
  std::vector<PathCertificate> paths;
  VertexSet T;
  int s = 0;  // A-segments
  int t = 0;  // B-segments
  bool partitioned = false;

  int r() const { return static_cast<int>(paths.size()); }
  int p() const {
    int total = 0;
    for (const auto& P : paths) total += static_cast<int>(P.vertices.size()) - 2;
    return total;
  }
};

struct SegmentResult {
  std::optional<SegmentSystem> system;
  bool exhaustive = false;  // an absent system is proven absent
  std::uint64_t trials = 0;
};

namespace detail {

inline std::vector<char> membership(int n, const VertexSet& s) {
  std::vector<char> in(n, 0);
  for (Vertex v : s) in[v] = 1;
  return in;
}

inline void validate_terminals(const Graph& g, const VertexSet& T) {
  std::vector<char> seen(g.n(), 0);
  for (Vertex v : T) {
    if (v < 0 || v >= g.n()) throw DataError("terminal " + std::to_string(v) + " out of range");
    if (seen[v]) throw DataError("terminal " + std::to_string(v) + " listed twice");
    seen[v] = 1;
  }
}

inline void validate_partition(const Graph& g, const VertexSet& T, const Partition& part) {
  auto inT = membership(g.n(), T);
  std::vector<char> hit(g.n(), 0);
  for (const VertexSet* side : {&part.A, &part.B})
    for (Vertex v : *side) {
      if (v < 0 || v >= g.n() || !inT[v]) throw DataError("partition vertex " + std::to_string(v) + " not in T");
      if (hit[v]) throw DataError("partition classes overlap at " + std::to_string(v));
      hit[v] = 1;
    }
  for (Vertex v : T)
    if (!hit[v]) throw DataError("terminal " + std::to_string(v) + " missing from the partition");
}

// Colorful segment DP. alpha: colorful T-segments from each terminal; beta: systems peeled one
// segment at a time. Colour sets are "available" masks rather than exact ones.
class SegmentDP {
 public:
  SegmentDP(const Graph& g, const VertexSet& T, const std::vector<char>& inA, const std::vector<int>& color, int q,
            int max_inner)
      : g_(g), T_(T), inA_(inA), color_(color), q_(q) {
    int n = g.n();
    tindex_.assign(n, -1);
    for (int i = 0; i < static_cast<int>(T.size()); ++i) tindex_[T[i]] = i;
    alpha_.resize(T.size());
    states_.resize(T.size());
    for (int xi = 0; xi < static_cast<int>(T.size()); ++xi) grow(xi, max_inner);
  }

  std::optional<std::vector<Seq>> solve(int p, int r, int s, int t) {
    std::uint32_t all = q_ >= 32 ? ~0u : (1u << q_) - 1;
    for (int xi = 0; xi < static_cast<int>(T_.size()); ++xi)
      if (beta(xi, p, r, s, t, all)) {
        std::vector<Seq> out;
        rebuild(xi, p, r, s, t, all, out);
        return out;
      }
    return std::nullopt;
  }

 private:
  struct Seg {
    int yi;
    std::uint32_t colors;
  };

  const Graph& g_;
  const VertexSet& T_;
  const std::vector<char>& inA_;
  const std::vector<int>& color_;
  int q_;
  std::vector<int> tindex_;
  std::vector<std::vector<Seg>> alpha_;
  std::vector<std::unordered_set<std::uint64_t>> states_;
  std::unordered_map<std::uint64_t, bool> memo_;

  std::uint32_t bit(Vertex v) const { return 1u << color_[v]; }
  static std::uint64_t state_key(Vertex v, std::uint32_t mask) { return (std::uint64_t(v) << 32) | mask; }

  void grow(int xi, int max_inner) {
    Vertex x = T_[xi];
    auto& seen = states_[xi];
    std::unordered_set<std::uint64_t> found;
    std::vector<std::pair<Vertex, std::uint32_t>> frontier{{x, bit(x)}}, next;
    while (!frontier.empty()) {
      next.clear();
      for (auto [v, mask] : frontier) {
        int inner = std::popcount(mask) - 1;
        for (Vertex w : g_.neighbors(v)) {
          if (mask & bit(w)) continue;
          std::uint32_t grown = mask | bit(w);
          if (tindex_[w] >= 0) {
            if (v != x && found.insert(state_key(tindex_[w], grown)).second) alpha_[xi].push_back({tindex_[w], grown});
          } else if (inner < max_inner && seen.insert(state_key(w, grown)).second) {
            next.emplace_back(w, grown);
          }
        }
      }
      std::swap(frontier, next);
    }
  }

  bool gated(Vertex x, Vertex y, std::uint32_t Y) const { return inA_[x] && inA_[y] && std::popcount(Y) == 3; }

  // (A-segment, B-segment) increments of a segment x..y
  std::pair<int, int> kind(Vertex x, Vertex y) const {
    if (inA_[x] && inA_[y]) return {1, 0};
    if (!inA_[x] && !inA_[y]) return {0, 1};
    return {0, 0};
  }

  static std::uint64_t key(int xi, int p, int r, int s, int t, std::uint32_t avail) {
    return std::uint64_t(avail) | std::uint64_t(xi) << 24 | std::uint64_t(p) << 40 | std::uint64_t(r) << 48 |
           std::uint64_t(s) << 54 | std::uint64_t(t) << 59;
  }

  // each callback gets (segment, next terminal index or -1, next avail); returns true to stop
  template <class Fn>
  bool for_each_step(int xi, int p, int r, int s, int t, std::uint32_t avail, Fn&& fn) {
    Vertex x = T_[xi];
    for (const Seg& seg : alpha_[xi]) {
      if (seg.colors & ~avail) continue;
      Vertex y = T_[seg.yi];
      if (gated(x, y, seg.colors)) continue;
      int inner = std::popcount(seg.colors) - 2;
      auto [ds, dt] = kind(x, y);
      if (r == 1) {
        if (inner == p && ds == s && dt == t && fn(seg, -1, 0u)) return true;
        continue;
      }
      if (inner > p - (r - 1) || s - ds < 0 || t - dt < 0) continue;
      std::uint32_t rest = avail & ~seg.colors;
      if (fn(seg, seg.yi, rest | bit(y))) return true;
      for (int zi = 0; zi < static_cast<int>(T_.size()); ++zi) {
        Vertex z = T_[zi];
        if (zi == xi || zi == seg.yi || !(rest & bit(z))) continue;
        if (fn(seg, zi, rest)) return true;
      }
    }
    return false;
  }

  bool beta(int xi, int p, int r, int s, int t, std::uint32_t avail) {
    if (r < 1 || p < r || s < 0 || t < 0 || s + t > r) return false;
    if (!(avail & bit(T_[xi])) || std::popcount(avail) < p + r + 1) return false;
    std::uint64_t k = key(xi, p, r, s, t, avail);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    Vertex x = T_[xi];
    bool ok = for_each_step(xi, p, r, s, t, avail, [&](const Seg& seg, int next, std::uint32_t nav) {
      if (next < 0) return true;
      auto [ds, dt] = kind(x, T_[seg.yi]);
      return beta(next, p - (std::popcount(seg.colors) - 2), r - 1, s - ds, t - dt, nav);
    });
    memo_.emplace(k, ok);
    return ok;
  }

  Seq segment_path(int xi, const Seg& seg) const {
    Vertex x = T_[xi], y = T_[seg.yi];
    Seq path{y};
    std::uint32_t m = seg.colors & ~bit(y);
    Vertex cur = y;
    while (m != bit(x)) {
      Vertex pick = -1;
      for (Vertex v : g_.neighbors(cur))
        if (tindex_[v] < 0 && (m & bit(v)) && states_[xi].count(state_key(v, m))) {
          pick = v;
          break;
        }
      path.push_back(pick);
      m &= ~bit(pick);
      cur = pick;
    }
    path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
  }

  void rebuild(int xi, int p, int r, int s, int t, std::uint32_t avail, std::vector<Seq>& out) {
    Vertex x = T_[xi];
    for_each_step(xi, p, r, s, t, avail, [&](const Seg& seg, int next, std::uint32_t nav) {
      if (next >= 0) {
        auto [ds, dt] = kind(x, T_[seg.yi]);
        int rest = p - (std::popcount(seg.colors) - 2);
        if (!beta(next, rest, r - 1, s - ds, t - dt, nav)) return false;
        out.push_back(segment_path(xi, seg));
        rebuild(next, rest, r - 1, s - ds, t - dt, nav, out);
        return true;
      }
      out.push_back(segment_path(xi, seg));
      return true;
    });
  }
};

inline SegmentResult segment_search(const Graph& g, const VertexSet& T, const std::vector<char>& inA, int r, int p,
                                    int s, int t, const TrialConfig& cfg) {
  SegmentResult out;
  if (r > p || static_cast<int>(T.size()) < 2) {
    out.exhaustive = true;
    return out;
  }
  if (p > 255 || r > 31) throw CapExceeded("segment search supports p <= 255 and r <= 31");
  int max_inner = p - r + 1;
  auto wrap = [&](std::vector<Seq> segs) {
    SegmentSystem sys;
    sys.T = T;
    for (auto& sq : segs) sys.paths.push_back(PathCertificate{std::move(sq)});
    sys.s = s;
    sys.t = t;
    return sys;
  };
  if (g.n() <= 12) {
    std::vector<int> color(g.n());
    std::iota(color.begin(), color.end(), 0);
    SegmentDP dp(g, T, inA, color, g.n(), max_inner);
    if (auto segs = dp.solve(p, r, s, t)) out.system = wrap(std::move(*segs));
    out.exhaustive = true;
    return out;
  }
  int q = p + 2 * r;
  if (q > 24) throw CapExceeded("segment search needs p + 2r <= 24 colours");
  std::uint64_t trials = cfg.trials.value_or(default_trials(3.0 * p, cfg.budget));
  out.trials = trials;
  auto hit = run_trials<std::vector<Seq>>(trials, cfg.offset, cfg.jobs, [&](std::uint64_t trial) {
    Rng rng(derive_seed(cfg.seed, 0x5e65, trial));
    std::vector<int> color(g.n());
    for (auto& c : color) c = static_cast<int>(uniform_below(rng, q));
    SegmentDP dp(g, T, inA, color, q, max_inner);
    return dp.solve(p, r, s, t);
  });
  if (hit) out.system = wrap(std::move(*hit));
  return out;
}

}  // namespace detail

inline Verdict check_segment_system(const Graph& g, const SegmentSystem& sys, const std::optional<Partition>& part = {},
                                    bool require_long_a = true) {
  int n = g.n();
  auto inT = detail::membership(n, sys.T);
  std::vector<char> inA(n, 0);
  if (part) inA = detail::membership(n, part->A);
  std::vector<char> used(n, 0);
  std::vector<int> deg(n, 0), parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int a_segs = 0, b_segs = 0;
  for (const auto& P : sys.paths) {
    const auto& vs = P.vertices;
    if (vs.size() < 3) return Verdict::fail("segment with no internal vertex");
    if (auto v = verify_path_certificate(g, P); !v) return v;
    Vertex x = vs.front(), y = vs.back();
    if (!inT[x] || !inT[y]) return Verdict::fail("segment endpoint outside T");
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
      if (inT[vs[i]]) return Verdict::fail("internal vertex " + std::to_string(vs[i]) + " lies in T");
      if (used[vs[i]]) return Verdict::fail("segments share internal vertex " + std::to_string(vs[i]));
      used[vs[i]] = 1;
    }
    if (++deg[x] > 2 || ++deg[y] > 2) return Verdict::fail("endpoint pairs have a vertex of degree 3");
    if (find(x) == find(y)) return Verdict::fail("endpoint pairs contain a cycle");
    parent[find(x)] = find(y);
    if (part) {
      if (inA[x] && inA[y]) {
        ++a_segs;
        if (require_long_a && vs.size() < 4) return Verdict::fail("A-segment with a single internal vertex");
      } else if (!inA[x] && !inA[y]) {
        ++b_segs;
      }
    }
  }
  if (part && (a_segs != sys.s || b_segs != sys.t))
    return Verdict::fail("segment classification (" + std::to_string(a_segs) + "," + std::to_string(b_segs) +
                         ") does not match the recorded counts");
  return {};
}

inline SegmentResult find_segments(const Graph& g, const VertexSet& T, int r, int p, const TrialConfig& cfg = {}) {
  if (r < 1 || p < 1) throw PreconditionError("find_segments needs r, p >= 1");
  detail::validate_terminals(g, T);
  std::vector<char> inA(g.n(), 0);
  return detail::segment_search(g, T, inA, r, p, 0, r, cfg);
}

inline SegmentResult find_segments_partitioned(const Graph& g, const VertexSet& T, const Partition& part, int r, int p,
                                               int s, int t, const TrialConfig& cfg = {}) {
  if (r < 1 || p < 1) throw PreconditionError("find_segments_partitioned needs r, p >= 1");
  if (s < 0 || t < 0 || s + t > r) throw PreconditionError("need s, t >= 0 and s + t <= r");
  detail::validate_terminals(g, T);
  detail::validate_partition(g, T, part);
  auto inA = detail::membership(g.n(), part.A);
  auto res = detail::segment_search(g, T, inA, r, p, s, t, cfg);
  if (res.system) res.system->partitioned = true;
  return res;
}

}  // namespace lcmad
