#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dense_extract.hpp"
#include "dense_routing.hpp"
#include "density.hpp"
#include "long_paths.hpp"
#include "reduce.hpp"
#include "segment_search.hpp"

namespace lcmad {

enum class Answer { yes, no, unknown };
enum class Target { cycle, path };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    default: return "unknown";
  }
}

struct SolveOptions {
  Target target = Target::cycle;
  Mode mode = Mode::strict;
  TrialConfig trials;
  EngineConfig engine;
  int fallback_cap = 24;
  long long dfs_budget = 2'000'000;
};

struct SolveStats {
  int probes = 0;
  std::optional<int> k_prime;
  std::string dense_branch;  // separator | dirac | engine, when find_dense ran
  int engine_rounds = 0;
  int searches = 0;
  std::uint64_t trials = 0;
  std::string reason;  // why the answer is unknown, or which condition fired
};

struct SolveResult {
  Answer answer = Answer::unknown;
  Target target = Target::cycle;
  int k = 0;
  Rational mad;
  long long threshold = 0;  // cycle length, or vertex count in path mode
  std::optional<CycleCertificate> certificate;
  std::optional<PathCertificate> path;
  std::string branch;  // k0 | fallback | case_i | case_ii | case_iii
  SolveStats stats;
  ReductionTrace trace;
};

namespace detail {

// replace each pair-edge of `base` by the interior of the segment joining the pair
inline Seq splice_segments(Seq cyc, const std::vector<PathCertificate>& segs) {
  std::size_t want = cyc.size();
  for (const auto& P : segs) {
    const auto& vs = P.vertices;
    Vertex x = vs.front(), y = vs.back();
    int len = static_cast<int>(cyc.size()), at = -1;
    bool forward = true;
    for (int i = 0; i < len && at < 0; ++i) {
      Vertex a = cyc[i], b = cyc[(i + 1) % len];
      if (a == x && b == y) at = i;
      if (a == y && b == x) at = i, forward = false;
    }
    if (at < 0) throw ConstructionFailure("assembly: base cycle misses a segment's pair");
    Seq inner(vs.begin() + 1, vs.end() - 1);
    if (!forward) std::reverse(inner.begin(), inner.end());
    cyc = splice(cyc, at, inner);
    want += inner.size();
  }
  if (cyc.size() != want) throw ConstructionFailure("assembly: length identity violated");
  return cyc;
}

struct Region {
  Graph graph;          // outside component(s) plus the H-vertices touching them
  std::vector<Vertex> to_parent;
  VertexSet terminals;  // local ids of H-vertices
  std::vector<char> interior;
  int outside = 0;
};

inline Region make_region(const Graph& g, const std::vector<char>& inH, const VertexSet& outside) {
  std::vector<char> take(g.n(), 0);
  for (Vertex v : outside) {
    take[v] = 1;
    for (Vertex w : g.neighbors(v)) take[w] = 1;
  }
  VertexSet keep;
  for (Vertex v = 0; v < g.n(); ++v)
    if (take[v]) keep.push_back(v);
  auto sub = induce(g, keep);
  // edges inside H are never used by an outside connection
  std::vector<Edge> e;
  for (auto [u, v] : sub.graph.edges())
    if (!inH[sub.to_parent[u]] || !inH[sub.to_parent[v]]) e.emplace_back(u, v);
  Region r;
  r.graph = build_graph(e, sub.graph.n());
  r.to_parent = sub.to_parent;
  r.interior.assign(r.graph.n(), 0);
  for (Vertex v = 0; v < r.graph.n(); ++v) {
    if (inH[r.to_parent[v]]) r.terminals.push_back(v);
    else r.interior[v] = 1, ++r.outside;
  }
  return r;
}

struct Connection {
  std::optional<PathCertificate> path;  // in G ids
  bool exhaustive = true;
  std::uint64_t trials = 0;
  int searches = 0;
};

// an (s,t)-path with both ends in H, interior outside H, at least `target` vertices
inline Connection long_outside_connection(const Graph& g, const std::vector<char>& inH, int target,
                                          const TrialConfig& cfg) {
  Connection out;
  std::vector<char> removed(inH.begin(), inH.end());
  auto comps = connected_components(g, &removed);
  std::uint64_t stream = 0;
  for (const auto& C : comps) {
    if (static_cast<int>(C.size()) + 2 < target) continue;
    Region reg = make_region(g, inH, C);
    const auto& ts = reg.terminals;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        TrialConfig c = cfg;
        c.seed = derive_seed(cfg.seed, 0xa11, stream++);
        auto res = st_path_at_least(reg.graph, ts[i], ts[j], target, c, &reg.interior);
        ++out.searches;
        out.trials += res.trials;
        if (res.path) {
          std::vector<Vertex> lifted;
          for (Vertex v : res.path->vertices) lifted.push_back(reg.to_parent[v]);
          out.path = PathCertificate{lifted};
          return out;
        }
        out.exhaustive = out.exhaustive && res.exhaustive;
      }
  }
  return out;
}

inline SegmentSystem lift_system(const SegmentSystem& sys, const Region& reg, const VertexSet& T) {
  SegmentSystem out = sys;
  out.T = T;
  for (auto& P : out.paths)
    for (auto& v : P.vertices) v = reg.to_parent[v];
  return out;
}

inline std::vector<Edge> pairs_of(const std::vector<PathCertificate>& segs, const InducedSubgraph& sub) {
  std::vector<Edge> S;
  for (const auto& P : segs) S.emplace_back(sub.local(P.front()), sub.local(P.back()));
  return S;
}

inline void finish_yes(SolveResult& res, const Graph& g, Seq cyc, long long threshold) {
  CycleCertificate c{std::move(cyc), threshold};
  if (auto v = verify_cycle_certificate(g, c); !v) throw ConstructionFailure("assembled cycle invalid: " + v.diagnostic);
  res.answer = Answer::yes;
  res.certificate = std::move(c);
}

inline void exhausted(SolveResult& res, bool all_exhaustive, const std::string& what) {
  res.answer = all_exhaustive ? Answer::no : Answer::unknown;
  if (!all_exhaustive) res.stats.reason = what;
}

inline std::vector<char> membership_of(int n, const VertexSet& s) {
  std::vector<char> m(n, 0);
  for (Vertex v : s) m[v] = 1;
  return m;
}

inline VertexSet complement_of(const std::vector<char>& in) {
  VertexSet out;
  for (Vertex v = 0; v < static_cast<Vertex>(in.size()); ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

// forward subset DP over paths rooted at the lowest vertex of their mask
inline std::optional<Seq> held_karp_cycle_at_least(const Graph& g, int target) {
  int n = g.n();
  target = std::max(target, 3);
  if (target > n) return std::nullopt;
  if (n > 26) throw CapExceeded("subset DP supports at most 26 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= std::uint32_t(1) << w;
  std::uint32_t full = (std::uint32_t(1) << n) - 1;
  std::vector<std::uint32_t> ends(std::size_t(full) + 1, 0);
  for (Vertex v = 0; v < n; ++v) ends[std::uint32_t(1) << v] = std::uint32_t(1) << v;
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    std::uint32_t e = ends[mask];
    if (!e) continue;
    int root = std::countr_zero(mask);
    std::uint32_t above = ~((std::uint32_t(2) << root) - 1);
    if (std::popcount(mask) >= target && (e & adj[root])) {
      Vertex cur = std::countr_zero(e & adj[root]);
      std::uint32_t m = mask;
      Seq seq{cur};
      while (std::popcount(m) > 1) {
        std::uint32_t prev = m ^ (std::uint32_t(1) << cur);
        cur = std::countr_zero(ends[prev] & adj[cur]);
        m = prev;
        seq.push_back(cur);
      }
      std::reverse(seq.begin(), seq.end());
      return seq;
    }
    for (std::uint32_t rest = e; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      for (std::uint32_t nxt = adj[v] & ~mask & above; nxt; nxt &= nxt - 1) {
        int w = std::countr_zero(nxt);
        ends[mask | (std::uint32_t(1) << w)] |= std::uint32_t(1) << w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline long long length_threshold(const Rational& mad, int k) { return (mad + Rational(k)).ceil(); }

// a cycle longer than mad(g): densest subgraph, reduction, then a long cycle in what survives
inline CycleCertificate constructive_eg_cycle(const Graph& g, ReductionTrace* trace = nullptr) {
  auto dens = mad_with_witness(g);
  if (dens.mad < Rational(2)) throw PreconditionError("graph is acyclic");
  auto [hv, tr] = reduce_exhaustive(g, dens.vertices);
  auto sub = induce(g, hv);
  auto cyc = dirac_cycle(sub.graph);
  CycleCertificate out{sub.lift(cyc.vertices), dens.mad.floor() + 1};
  if (auto v = verify_cycle_certificate(g, out); !v) throw ConstructionFailure("constructive cycle: " + v.diagnostic);
  if (trace) *trace = std::move(tr);
  return out;
}

inline SolveResult exact_longest_cycle_fallback(const Graph& g, const Rational& threshold, int cap = 24,
                                                long long dfs_budget = 2'000'000) {
  SolveResult res;
  res.branch = "fallback";
  long long L = std::max<long long>(threshold.ceil(), 3);
  res.threshold = threshold.ceil();
  if (L > g.n()) {
    res.answer = Answer::no;
    return res;
  }
  auto [status, seq] = detail::dfs_cycle_at_least(g, static_cast<int>(L), dfs_budget);
  if (status == detail::SearchStatus::found) {
    detail::finish_yes(res, g, seq, L);
    return res;
  }
  if (status == detail::SearchStatus::none) {
    res.answer = Answer::no;
    return res;
  }
  if (g.n() > cap) {
    res.answer = Answer::unknown;
    res.stats.reason = "exact fallback: " + std::to_string(g.n()) + " vertices exceeds cap " + std::to_string(cap);
    return res;
  }
  if (auto cyc = detail::held_karp_cycle_at_least(g, static_cast<int>(L))) detail::finish_yes(res, g, *cyc, L);
  else res.answer = Answer::no;
  return res;
}

// route_budget 0 means k'+1
inline SolveResult case_small_dense(const Graph& g, const VertexSet& H, int k_prime, const TrialConfig& cfg = {},
                                    Mode mode = Mode::relaxed, int route_budget = 0) {
  if (k_prime < 1) throw PreconditionError("case_small_dense needs k' >= 1");
  if (H.size() < 3) throw PreconditionError("dense part has fewer than three vertices");
  SolveResult res;
  res.branch = "case_ii";
  res.stats.k_prime = k_prime;
  long long goal = static_cast<long long>(H.size()) + k_prime;
  res.threshold = goal;
  int budget = route_budget > 0 ? route_budget : k_prime + 1;
  auto inH = detail::membership_of(g.n(), H);
  auto sub = induce(g, H);

  auto route = [&](const std::vector<PathCertificate>& segs) {
    auto base = hamiltonian_through_pairs(sub.graph, detail::pairs_of(segs, sub), budget, mode);
    detail::finish_yes(res, g, detail::splice_segments(sub.lift(base.vertices), segs), goal);
  };

  auto conn = detail::long_outside_connection(g, inH, k_prime + 2, cfg);
  res.stats.searches += conn.searches;
  res.stats.trials += conn.trials;
  if (conn.path) {
    res.stats.reason = "long outside path";
    route({*conn.path});
    return res;
  }
  bool all_exhaustive = conn.exhaustive;
  VertexSet outside = detail::complement_of(inH);
  detail::Region reg = detail::make_region(g, inH, outside);
  for (int r = 1; r <= k_prime; ++r)
    for (int p = std::max(k_prime, r); p <= 2 * k_prime - 2; ++p) {
      if (p > reg.outside) continue;
      TrialConfig c = cfg;
      c.seed = derive_seed(cfg.seed, 0x5e6, static_cast<std::uint64_t>(r) * 1024 + p);
      SegmentResult found;
      try {
        found = find_segments(reg.graph, reg.terminals, r, p, c);
      } catch (const CapExceeded& e) {
        all_exhaustive = false;
        res.stats.reason = e.what();
        continue;
      }
      ++res.stats.searches;
      res.stats.trials += found.trials;
      if (found.system) {
        auto sys = detail::lift_system(*found.system, reg, H);
        res.stats.reason = "segment system r=" + std::to_string(r) + " p=" + std::to_string(p);
        route(sys.paths);
        return res;
      }
      all_exhaustive = all_exhaustive && found.exhaustive;
    }
  std::string why = res.stats.reason.empty() ? "randomized search budget exhausted" : res.stats.reason;
  detail::exhausted(res, all_exhaustive, why);
  return res;
}

// route_budget 0 means 4k'
inline SolveResult case_bipartite_dense(const Graph& g, const BipartiteDense& w, int k_prime, const TrialConfig& cfg = {},
                                        Mode mode = Mode::relaxed, int route_budget = 0) {
  if (k_prime < 1) throw PreconditionError("case_bipartite_dense needs k' >= 1");
  if (2 * static_cast<long long>(w.A.size()) < 3LL * k_prime) throw PreconditionError("need |A| >= 3k'/2");
  SolveResult res;
  res.branch = "case_iii";
  res.stats.k_prime = k_prime;
  long long goal = 2 * static_cast<long long>(w.A.size()) + k_prime;
  res.threshold = goal;
  int budget = route_budget > 0 ? route_budget : 4 * k_prime;
  auto inH = detail::membership_of(g.n(), w.H);
  auto sub = induce(g, w.H);
  VertexSet A, B;
  for (Vertex v : w.A) A.push_back(sub.local(v));
  for (Vertex v : w.B) B.push_back(sub.local(v));
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());

  auto route = [&](const std::vector<PathCertificate>& segs) {
    auto base = cover_side_through_pairs(sub.graph, A, B, detail::pairs_of(segs, sub), budget, mode);
    detail::finish_yes(res, g, detail::splice_segments(sub.lift(base.vertices), segs), goal);
  };

  auto conn = detail::long_outside_connection(g, inH, k_prime + 3, cfg);
  res.stats.searches += conn.searches;
  res.stats.trials += conn.trials;
  if (conn.path) {
    res.stats.reason = "long outside path";
    route({*conn.path});
    return res;
  }
  bool all_exhaustive = conn.exhaustive;
  VertexSet outside = detail::complement_of(inH);
  detail::Region reg = detail::make_region(g, inH, outside);
  Partition part;
  auto inA = detail::membership_of(g.n(), w.A);
  for (Vertex v : reg.terminals) (inA[reg.to_parent[v]] ? part.A : part.B).push_back(v);
  for (int r = 1; r <= k_prime; ++r)
    for (int s = 0; s <= r; ++s)
      for (int t = 0; s + t <= r; ++t)
        for (int p = std::max(k_prime + s - t, r); p <= 3 * k_prime - 2; ++p) {
          if (p > reg.outside) continue;
          TrialConfig c = cfg;
          c.seed = derive_seed(cfg.seed, 0xb1e, ((static_cast<std::uint64_t>(r) * 64 + s) * 64 + t) * 1024 + p);
          SegmentResult found;
          try {
            found = find_segments_partitioned(reg.graph, reg.terminals, part, r, p, s, t, c);
          } catch (const CapExceeded& e) {
            all_exhaustive = false;
            res.stats.reason = e.what();
            continue;
          }
          ++res.stats.searches;
          res.stats.trials += found.trials;
          if (found.system) {
            auto sys = detail::lift_system(*found.system, reg, w.H);
            res.stats.reason = "segment system r=" + std::to_string(r) + " p=" + std::to_string(p) +
                               " s=" + std::to_string(s) + " t=" + std::to_string(t);
            route(sys.paths);
            return res;
          }
          all_exhaustive = all_exhaustive && found.exhaustive;
        }
  std::string why = res.stats.reason.empty() ? "randomized search budget exhausted" : res.stats.reason;
  detail::exhausted(res, all_exhaustive, why);
  return res;
}

namespace detail {

// decides "cycle with at least L vertices" on a 2-connected graph whose mad is known
inline SolveResult decide_cycle(const Graph& g, long long L, const DensityWitness& dens, const SolveOptions& opt) {
  SolveResult res;
  const Rational& mad = dens.mad;
  long long kk = L - mad.ceil();
  auto stamp = [&](SolveResult r) {
    r.mad = mad;
    r.threshold = L;
    r.stats.probes += dens.probes;
    return r;
  };

  if (kk <= 0) {
    res.branch = "k0";
    auto c = constructive_eg_cycle(g, &res.trace);
    c.claimed_min_length = std::max<long long>(L, 3);
    if (c.length() < L) throw ConstructionFailure("constructive cycle below threshold");
    res.answer = Answer::yes;
    res.certificate = std::move(c);
    return stamp(std::move(res));
  }
  int k = static_cast<int>(kk);
  auto fallback = [&](std::string why) {
    auto r = exact_longest_cycle_fallback(g, Rational(L), opt.fallback_cap, opt.dfs_budget);
    if (r.answer == Answer::unknown && !why.empty()) r.stats.reason = why + "; " + r.stats.reason;
    return stamp(std::move(r));
  };
  bool gated = Rational(88LL * (k + 1)) > mad;
  if (gated && opt.mode == Mode::strict) return fallback("");

  DenseWitness w;
  try {
    w = find_dense(g, k, gated ? Mode::relaxed : opt.mode, opt.engine);
  } catch (const Error& e) {
    if (gated || opt.mode == Mode::relaxed) return fallback(std::string("dense pipeline: ") + e.what());
    if (!dynamic_cast<const ConstructionFailure*>(&e)) throw;
    res.answer = Answer::unknown;
    res.branch = "case_i";
    res.stats.reason = e.what();
    return stamp(std::move(res));
  }
  res.trace = w.trace;
  res.stats.dense_branch = w.branch;
  res.stats.engine_rounds = w.engine_rounds;
  res.stats.probes += w.probes;
  bool trust_no = !gated && opt.mode == Mode::strict;
  Mode route_mode = trust_no ? Mode::strict : Mode::relaxed;

  auto settle = [&](SolveResult r) {
    r.trace = std::move(res.trace);
    r.stats.dense_branch = res.stats.dense_branch;
    r.stats.engine_rounds = res.stats.engine_rounds;
    r.stats.probes += res.stats.probes;
    if (r.answer == Answer::yes) {
      r.certificate->claimed_min_length = L;
      if (r.certificate->length() < L) throw ConstructionFailure("certificate below threshold");
      return stamp(std::move(r));
    }
    if (!trust_no) return fallback("dense pipeline inconclusive");
    return stamp(std::move(r));
  };
  auto guarded = [&](auto&& body) {
    try {
      return settle(body());
    } catch (const Error& e) {
      if (!trust_no) return fallback(std::string("dense pipeline: ") + e.what());
      SolveResult r;
      r.answer = Answer::unknown;
      r.branch = res.branch;
      r.stats.reason = e.what();
      return stamp(std::move(r));
    }
  };

  if (auto* f = std::get_if<FoundCycle>(&w.value)) {
    res.branch = "case_i";
    res.answer = Answer::yes;
    res.certificate = f->cycle;
    return settle(std::move(res));
  }
  if (auto* s = std::get_if<SmallDense>(&w.value)) {
    res.branch = "case_ii";
    int kp = static_cast<int>(L - static_cast<long long>(s->H.size()));
    return guarded([&] {
      if (kp <= 0) {
        SolveResult r;
        r.branch = "case_ii";
        r.stats.k_prime = kp;
        auto sub = induce(g, s->H);
        auto base = hamiltonian_through_pairs(sub.graph, {}, k + 1, route_mode);
        finish_yes(r, g, sub.lift(base.vertices), L);
        return r;
      }
      return case_small_dense(g, s->H, kp, opt.trials, route_mode, k + 1);
    });
  }
  auto& b = std::get<BipartiteDense>(w.value);
  res.branch = "case_iii";
  int kp = static_cast<int>(L - 2LL * static_cast<long long>(b.A.size()));
  return guarded([&] {
    if (kp <= 0) {
      SolveResult r;
      r.branch = "case_iii";
      r.stats.k_prime = kp;
      auto sub = induce(g, b.H);
      VertexSet A, B;
      for (Vertex v : b.A) A.push_back(sub.local(v));
      for (Vertex v : b.B) B.push_back(sub.local(v));
      auto base = cover_side_through_pairs(sub.graph, A, B, {}, 4 * k, route_mode);
      finish_yes(r, g, sub.lift(base.vertices), L);
      return r;
    }
    return case_bipartite_dense(g, b, kp, opt.trials, route_mode, 4 * k);
  });
}

}  // namespace detail

inline SolveResult solve(const Graph& g, int k, const SolveOptions& opt = {}) {
  if (k < 0) throw PreconditionError("k must be non-negative");
  if (opt.target == Target::cycle) {
    if (!is_two_connected(g)) throw PreconditionError("cycle mode needs a 2-connected graph");
    auto dens = mad_with_witness(g);
    long long L = length_threshold(dens.mad, k);
    auto res = detail::decide_cycle(g, L, dens, opt);
    res.k = k;
    res.target = Target::cycle;
    if (res.answer == Answer::yes &&
        (!res.certificate || !verify_cycle_certificate(g, *res.certificate) || Rational(res.certificate->length()) < dens.mad + Rational(k)))
      throw ConstructionFailure("solver produced an invalid certificate");
    return res;
  }

  if (!is_connected(g)) throw PreconditionError("path mode needs a connected graph");
  auto dens = mad_with_witness(g);
  long long L = length_threshold(dens.mad, k);  // vertices
  SolveResult res;
  if (g.n() <= 2) {
    res.branch = "k0";
    res.answer = g.n() >= L ? Answer::yes : Answer::no;
    if (res.answer == Answer::yes) {
      res.path = PathCertificate{};
      for (Vertex v = 0; v < g.n(); ++v) res.path->vertices.push_back(v);
    }
  } else {
    int n = g.n();
    std::vector<Edge> e = g.edges();
    for (Vertex v = 0; v < n; ++v) e.emplace_back(v, n);
    Graph gu = build_graph(e, n + 1);
    auto dens_u = mad_with_witness(gu);
    res = detail::decide_cycle(gu, L + 1, dens_u, opt);
    if (res.certificate) {
      auto cyc = res.certificate->vertices;
      auto it = std::find(cyc.begin(), cyc.end(), n);
      if (it != cyc.end()) {
        std::rotate(cyc.begin(), it, cyc.end());
        cyc.erase(cyc.begin());
      }
      res.path = PathCertificate{cyc};
      res.certificate.reset();
    }
  }
  res.mad = dens.mad;
  res.threshold = L;
  res.k = k;
  res.target = Target::path;
  if (res.answer == Answer::yes &&
      (!res.path || !verify_path_certificate(g, *res.path) || Rational(static_cast<long long>(res.path->vertices.size())) < dens.mad + Rational(k)))
    throw ConstructionFailure("solver produced an invalid path certificate");
  return res;
}

}  // namespace lcmad
