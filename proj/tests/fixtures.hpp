#pragma once

#include <lcmad/graph.hpp>
#include <lcmad/random.hpp>

namespace fx {

using lcmad::Edge;
using lcmad::Graph;

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return lcmad::build_graph(e, n);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return lcmad::build_graph(e, n);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return lcmad::build_graph(e, n);
}

inline Graph bowtie() { return lcmad::build_graph({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}, 5); }

inline Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return lcmad::build_graph(e, 10);
}

// K5 on 0..4 plus vertex 5 hanging off 0
inline Graph k5_pendant() {
  auto e = complete(5).edges();
  e.emplace_back(0, 5);
  return lcmad::build_graph(e, 6);
}

// two K5 sharing vertices 0 and 1
inline Graph glued_k5() {
  std::vector<Edge> e;
  std::vector<int> a{0, 1, 2, 3, 4}, b{0, 1, 5, 6, 7};
  for (auto* s : {&a, &b})
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) e.emplace_back((*s)[i], (*s)[j]);
  return lcmad::build_graph(e, 8);
}

inline Graph gnp(int n, int num, int den, lcmad::Rng& rng) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (lcmad::bernoulli(rng, num, den)) e.emplace_back(u, v);
  return lcmad::build_graph(e, n);
}

inline Graph gnp_2connected(int n, int num, int den, lcmad::Rng& rng) {
  while (true) {
    auto g = gnp(n, num, den, rng);
    if (lcmad::is_two_connected(g)) return g;
  }
}

inline Graph gnp_connected(int n, int num, int den, lcmad::Rng& rng) {
  while (true) {
    auto g = gnp(n, num, den, rng);
    if (lcmad::is_connected(g)) return g;
  }
}

}  // namespace fx
