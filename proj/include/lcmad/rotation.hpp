#pragma once

// Posa rotation-extension machinery shared by the cycle constructions. Cycles and paths are plain
// vertex sequences; "fixed" pairs must stay consecutive in every cycle produced.

#include <algorithm>
#include <array>
#include <optional>
#include <queue>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace lcmad::detail {

using Seq = std::vector<Vertex>;

class Posa {
 public:
  struct Closure {
    bool closed = false;
    Seq seq;  // the cycle when closed, otherwise the last path
  };

  Posa(const Graph& g, std::span<const Edge> fixed = {}, std::uint64_t seed = 0x5eed)
      : g_(g), partner_(g.n(), {-1, -1}), pos_(g.n(), -1), stamp_(g.n(), 0), rng_(seed) {
    for (auto [u, v] : fixed) {
      add_partner(u, v);
      add_partner(v, u);
      fixed_.emplace_back(u, v);
    }
  }

  const Graph& graph() const { return g_; }

  bool fixed(Vertex u, Vertex v) const { return partner_[u][0] == v || partner_[u][1] == v; }
  bool free(Vertex v) const { return partner_[v][0] < 0; }

  bool keeps_fixed(const Seq& cyc) const {
    for (auto [u, v] : fixed_)
      if (!cycle_has_edge(cyc, u, v)) return false;
    return true;
  }

  Closure close_path(Seq path, long long& budget) {
    for (Vertex v : path) pos_[v] = -1;
    for (int i = 0; i < static_cast<int>(path.size()); ++i) pos_[path[i]] = i;
    ++epoch_;
    Closure out;
    while (true) {
      int l = static_cast<int>(path.size()) - 1;
      Vertex head = path.front(), tail = path.back();
      if (Vertex w = extension(tail); w >= 0) {
        pos_[w] = l + 1;
        path.push_back(w);
        ++epoch_;
        continue;
      }
      if (Vertex w = extension(head); w >= 0) {
        reverse_range(path, 0, l);
        pos_[w] = l + 1;
        path.push_back(w);
        ++epoch_;
        continue;
      }
      if (l >= 2 && g_.adjacent(head, tail)) {
        out.closed = true;
        break;
      }
      if (int i = crossing(path); i >= 0) {
        reverse_range(path, i + 1, l);
        out.closed = true;
        break;
      }
      if (budget-- <= 0) break;
      if (uniform_below(rng_, 2)) reverse_range(path, 0, l);
      rotate(path);
    }
    for (Vertex v : path) pos_[v] = -1;
    out.seq = std::move(path);
    return out;
  }

  // longest cycle obtained by closing a prefix or suffix of a path with an endpoint chord
  std::optional<Seq> best_sub_cycle(const Seq& path) const {
    std::optional<Seq> best;
    int l = static_cast<int>(path.size()) - 1;
    int bi = -1, bj = l + 1;
    for (int i = l; i >= 2; --i)
      if (g_.adjacent(path[0], path[i])) {
        bi = i;
        break;
      }
    for (int j = 0; j <= l - 2; ++j)
      if (g_.adjacent(path[l], path[j])) {
        bj = j;
        break;
      }
    auto consider = [&](int a, int b) {
      if (b - a < 2) return;
      Seq c(path.begin() + a, path.begin() + b + 1);
      if (keeps_fixed(c) && (!best || c.size() > best->size())) best = std::move(c);
    };
    if (bi >= 0) consider(0, bi);
    if (bj <= l) consider(bj, l);
    return best;
  }

  // one Posa attempt per outside vertex; returns a strictly longer cycle keeping the fixed pairs
  std::optional<Seq> enlarge(const Seq& cyc, long long& budget, const std::vector<char>* allowed = nullptr) {
    int len = static_cast<int>(cyc.size());
    std::vector<int> where(g_.n(), -1);
    for (int i = 0; i < len; ++i) where[cyc[i]] = i;
    for (Vertex v = 0; v < g_.n() && budget > 0; ++v) {
      if (where[v] >= 0 || !free(v) || (allowed && !(*allowed)[v])) continue;
      for (Vertex c : g_.neighbors(v)) {
        int i = where[c];
        if (i < 0) continue;
        Vertex prev = cyc[(i + len - 1) % len], next = cyc[(i + 1) % len];
        Seq path{v};
        if (!fixed(prev, c)) {
          for (int s = 0; s < len; ++s) path.push_back(cyc[(i + s) % len]);
        } else if (!fixed(c, next)) {
          for (int s = 0; s < len; ++s) path.push_back(cyc[(i - s + len) % len]);
        } else {
          continue;
        }
        auto res = close_path(std::move(path), budget);
        if (res.closed && static_cast<int>(res.seq.size()) > len && keeps_fixed(res.seq)) return res.seq;
        if (auto sub = best_sub_cycle(res.seq); sub && static_cast<int>(sub->size()) > len) return sub;
        break;
      }
    }
    return std::nullopt;
  }

  // replace a short arc of the cycle by a longer ear through outside vertices
  std::optional<Seq> ear_enlarge(const Seq& cyc, const std::vector<char>* allowed = nullptr) const {
    int len = static_cast<int>(cyc.size()), n = g_.n();
    std::vector<int> where(n, -1), comp(n, -1);
    for (int i = 0; i < len; ++i) where[cyc[i]] = i;
    auto outside = [&](Vertex v) { return where[v] < 0 && free(v) && (!allowed || (*allowed)[v]); };
    std::optional<Seq> best;
    int best_len = len;
    std::vector<int> par(n, -1);
    for (Vertex root = 0; root < n; ++root) {
      if (!outside(root) || comp[root] >= 0) continue;
      std::vector<Vertex> members{root};
      comp[root] = root;
      for (std::size_t q = 0; q < members.size(); ++q)
        for (Vertex w : g_.neighbors(members[q]))
          if (outside(w) && comp[w] < 0) comp[w] = root, members.push_back(w);
      if (members.size() > 64) continue;
      for (Vertex u : members) {
        bool attached = false;
        for (Vertex c : g_.neighbors(u)) attached |= where[c] >= 0;
        if (!attached) continue;
        for (Vertex v : members) par[v] = -2;
        std::vector<Vertex> order{u};
        par[u] = -1;
        for (std::size_t q = 0; q < order.size(); ++q)
          for (Vertex w : g_.neighbors(order[q]))
            if (comp[w] == root && where[w] < 0 && par[w] == -2) par[w] = order[q], order.push_back(w);
        for (Vertex w : order) {
          int ear = 1;
          for (Vertex x = w; par[x] >= 0; x = par[x]) ++ear;
          for (Vertex a : g_.neighbors(u)) {
            int i = where[a];
            if (i < 0) continue;
            for (Vertex b : g_.neighbors(w)) {
              int j = where[b];
              if (j < 0 || j == i) continue;
              int fwd = (j - i + len) % len;  // i -> j forward
              int back = len - fwd;
              int keep = std::max(fwd, back) + 1;
              if (keep + ear <= best_len) continue;
              Seq cand;
              std::vector<Vertex> earseq;
              for (Vertex x = w; x >= 0; x = par[x]) earseq.push_back(x);
              std::reverse(earseq.begin(), earseq.end());  // u ... w
              if (back >= fwd) {
                // keep j -> i forward, then i -> u..w -> j
                for (int s = 0; s <= back; ++s) cand.push_back(cyc[(j + s) % len]);
                cand.insert(cand.end(), earseq.begin(), earseq.end());
              } else {
                for (int s = 0; s <= fwd; ++s) cand.push_back(cyc[(i + s) % len]);
                cand.insert(cand.end(), earseq.rbegin(), earseq.rend());
              }
              if (!keeps_fixed(cand)) continue;
              best_len = static_cast<int>(cand.size());
              best = std::move(cand);
            }
          }
        }
      }
    }
    return best;
  }

 private:
  const Graph& g_;
  std::vector<std::array<Vertex, 2>> partner_;
  std::vector<Edge> fixed_;
  std::vector<int> pos_;
  std::vector<unsigned> stamp_;
  unsigned epoch_ = 1;
  Rng rng_;

  void add_partner(Vertex u, Vertex v) {
    if (partner_[u][0] < 0)
      partner_[u][0] = v;
    else if (partner_[u][1] < 0)
      partner_[u][1] = v;
    else
      throw DataError("vertex in more than two fixed pairs");
  }

  Vertex extension(Vertex end) const {
    for (Vertex w : g_.neighbors(end))
      if (pos_[w] < 0 && free(w)) return w;
    return -1;
  }

  void reverse_range(Seq& p, int a, int b) {
    std::reverse(p.begin() + a, p.begin() + b + 1);
    for (int i = a; i <= b; ++i) pos_[p[i]] = i;
  }

  // index i with head~p[i+1], tail~p[i], edge p[i]p[i+1] breakable
  int crossing(const Seq& p) const {
    int l = static_cast<int>(p.size()) - 1;
    Vertex head = p.front();
    for (Vertex w : g_.neighbors(p.back())) {
      int i = pos_[w];
      if (i < 0 || i + 1 > l - 1 || i < 1) continue;
      if (g_.adjacent(head, p[i + 1]) && !fixed(p[i], p[i + 1])) return i;
    }
    return -1;
  }

  void rotate(Seq& p) {
    int l = static_cast<int>(p.size()) - 1;
    Vertex tail = p.back();
    stamp_[tail] = epoch_;
    std::vector<int> fresh, any;
    for (Vertex w : g_.neighbors(tail)) {
      int i = pos_[w];
      if (i < 0 || i > l - 2 || fixed(p[i], p[i + 1])) continue;
      any.push_back(i);
      if (stamp_[p[i + 1]] != epoch_) fresh.push_back(i);
    }
    const auto& pick = fresh.empty() ? any : fresh;
    if (pick.empty()) return;
    int i = pick[uniform_below(rng_, pick.size())];
    reverse_range(p, i + 1, l);
    stamp_[p.back()] = epoch_;
  }
};

enum class SearchStatus { found, none, budget };

// exhaustive search for a cycle with at least `target` vertices; the smallest vertex of the cycle is the root
inline std::pair<SearchStatus, Seq> dfs_cycle_at_least(const Graph& g, int target, long long node_budget) {
  int n = g.n();
  target = std::max(target, 3);
  if (target > n) return {SearchStatus::none, {}};
  std::vector<char> on(n, 0), mark(n, 0);
  Seq path;
  bool out_of_budget = false;
  std::vector<Vertex> queue;
  auto reach = [&](Vertex from, Vertex root) {
    // unvisited vertices > root reachable from `from`
    std::fill(mark.begin(), mark.end(), 0);
    queue.assign(1, from);
    int cnt = 0;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (Vertex w : g.neighbors(queue[q]))
        if (w > root && !on[w] && !mark[w]) mark[w] = 1, ++cnt, queue.push_back(w);
    return cnt;
  };
  auto rec = [&](auto&& self, Vertex v, Vertex root) -> bool {
    if (--node_budget < 0) {
      out_of_budget = true;
      return false;
    }
    int len = static_cast<int>(path.size());
    if (len >= target && g.adjacent(v, root)) return true;
    if (len + reach(v, root) < target) return false;
    for (Vertex w : g.neighbors(v)) {
      if (w <= root || on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      if (self(self, w, root)) return true;
      path.pop_back();
      on[w] = 0;
      if (out_of_budget) return false;
    }
    return false;
  };
  for (Vertex r = 0; r + target <= n; ++r) {
    path = {r};
    on[r] = 1;
    if (rec(rec, r, r)) return {SearchStatus::found, path};
    on[r] = 0;
    if (out_of_budget) return {SearchStatus::budget, {}};
  }
  return {SearchStatus::none, {}};
}

// exhaustive search for an (s,t)-path with at least `target` vertices inside the allowed set
inline std::pair<SearchStatus, Seq> dfs_st_path(const Graph& g, Vertex s, Vertex t, int target, long long node_budget,
                                                const std::vector<char>* allowed = nullptr) {
  int n = g.n();
  std::vector<char> on(n, 0), mark(n, 0);
  auto ok = [&](Vertex v) { return !allowed || (*allowed)[v]; };
  Seq path{s};
  on[s] = 1;
  bool out_of_budget = false;
  std::vector<Vertex> queue;
  // vertices reachable from v avoiding the path, and whether t is among them
  auto reach = [&](Vertex from, bool& hits_t) {
    std::fill(mark.begin(), mark.end(), 0);
    queue.assign(1, from);
    int cnt = 0;
    hits_t = false;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (Vertex w : g.neighbors(queue[q])) {
        if (on[w] || mark[w] || !ok(w)) continue;
        if (w == t) {
          hits_t = true;
          continue;
        }
        mark[w] = 1, ++cnt, queue.push_back(w);
      }
    return cnt;
  };
  auto rec = [&](auto&& self, Vertex v) -> bool {
    if (--node_budget < 0) {
      out_of_budget = true;
      return false;
    }
    int len = static_cast<int>(path.size());
    if (len + 1 >= target && g.adjacent(v, t)) {
      path.push_back(t);
      return true;
    }
    bool hits_t = false;
    int cnt = reach(v, hits_t);
    if (!hits_t || len + cnt + 1 < target) return false;
    for (Vertex w : g.neighbors(v)) {
      if (w == t || on[w] || !ok(w)) continue;
      on[w] = 1;
      path.push_back(w);
      if (self(self, w)) return true;
      path.pop_back();
      on[w] = 0;
      if (out_of_budget) return false;
    }
    return false;
  };
  if (rec(rec, s)) return {SearchStatus::found, path};
  return {out_of_budget ? SearchStatus::budget : SearchStatus::none, {}};
}

}  // namespace lcmad::detail
