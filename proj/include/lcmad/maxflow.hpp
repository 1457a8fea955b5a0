#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace lcmad {

// Dinic with 64-bit capacities
class MaxFlow {
 public:
  using Cap = std::int64_t;

  explicit MaxFlow(int n) : g_(n), level_(n), it_(n) {}

  void add_arc(int u, int v, Cap cap, Cap rev_cap = 0) {
    g_[u].push_back({v, static_cast<int>(g_[v].size()), cap});
    g_[v].push_back({u, static_cast<int>(g_[u].size()) - 1, rev_cap});
  }

  Cap run(int s, int t) {
    Cap flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (Cap f = dfs(s, t, std::numeric_limits<Cap>::max())) flow += f;
    }
    return flow;
  }

  // vertices reachable from s in the residual graph after run()
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(g_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& a : g_[v])
        if (a.cap > 0 && !seen[a.to]) seen[a.to] = 1, stack.push_back(a.to);
    }
    return seen;
  }

 private:
  struct Arc {
    int to, rev;
    Cap cap;
  };
  std::vector<std::vector<Arc>> g_;
  std::vector<int> level_, it_;

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& a : g_[v])
        if (a.cap > 0 && level_[a.to] < 0) level_[a.to] = level_[v] + 1, q.push(a.to);
    }
    return level_[t] >= 0;
  }

  Cap dfs(int v, int t, Cap limit) {
    if (v == t) return limit;
    for (int& i = it_[v]; i < static_cast<int>(g_[v].size()); ++i) {
      Arc& a = g_[v][i];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      Cap f = dfs(a.to, t, std::min(limit, a.cap));
      if (f > 0) {
        a.cap -= f;
        g_[a.to][a.rev].cap += f;
        return f;
      }
    }
    return 0;
  }
};

}  // namespace lcmad
