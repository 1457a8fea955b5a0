#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dense_routing.hpp"
#include "graph.hpp"
#include "random.hpp"
#include "solver.hpp"

namespace lcmad {

enum class Format { edgelist, dimacs };

inline constexpr long long kMaxVertexId = 1LL << 26;

namespace io_detail {

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] inline void fail(int line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

inline long long number(std::string_view tok, int line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range) fail(line, "id overflow in '" + std::string(tok) + "'");
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "not an integer: '" + std::string(tok) + "'");
  if (v > kMaxVertexId) fail(line, "id overflow in '" + std::string(tok) + "'");
  return v;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

inline Graph parse_edgelist(std::string_view text) {
  std::vector<Edge> edges;
  long long declared = -1, top = -1;
  for_each_line(text, [&](int no, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (tok.empty()) return;
    if (tok[0] == "n") {
      if (tok.size() != 2) fail(no, "expected 'n <count>'");
      if (declared >= 0) fail(no, "repeated vertex count");
      declared = number(tok[1], no);
      return;
    }
    if (tok.size() != 2) fail(no, "expected 'u v'");
    long long u = number(tok[0], no), v = number(tok[1], no);
    if (u < 0 || v < 0) fail(no, "negative vertex id");
    if (u == v) fail(no, "self-loop at vertex " + std::to_string(u));
    if (declared >= 0 && (u >= declared || v >= declared)) fail(no, "vertex id beyond the declared count");
    top = std::max({top, u, v});
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  });
  long long n = declared >= 0 ? declared : top + 1;
  if (top >= n) throw DataError("vertex id beyond the declared count");
  return build_graph(edges, static_cast<int>(n));
}

inline Graph parse_dimacs(std::string_view text) {
  std::vector<Edge> edges;
  long long n = -1;
  for_each_line(text, [&](int no, std::string_view line) {
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "p") {
      if (n >= 0) fail(no, "repeated problem line");
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col")) fail(no, "expected 'p edge <n> <m>'");
      n = number(tok[2], no);
      number(tok[3], no);
      return;
    }
    if (tok[0] == "e") {
      if (n < 0) fail(no, "edge before the problem line");
      if (tok.size() != 3) fail(no, "expected 'e <u> <v>'");
      long long u = number(tok[1], no), v = number(tok[2], no);
      if (u < 1 || v < 1 || u > n || v > n) fail(no, "vertex id out of range 1.." + std::to_string(n));
      if (u == v) fail(no, "self-loop at vertex " + std::to_string(u));
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
      return;
    }
    fail(no, "unknown line type '" + std::string(tok[0]) + "'");
  });
  if (n < 0) throw DataError("missing problem line");
  return build_graph(edges, static_cast<int>(n));
}

}  // namespace io_detail

inline Graph parse_graph(std::string_view text, Format format) {
  return format == Format::dimacs ? io_detail::parse_dimacs(text) : io_detail::parse_edgelist(text);
}

inline std::string emit_graph(const Graph& g, Format format) {
  std::ostringstream os;
  auto edges = g.edges();
  if (format == Format::dimacs) {
    os << "p edge " << g.n() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  } else {
    os << "n " << g.n() << '\n';
    for (auto [u, v] : edges) os << u << ' ' << v << '\n';
  }
  return os.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// by extension, then by the first meaningful line
inline Format detect_format(const std::string& path, std::string_view text) {
  for (const char* ext : {".dimacs", ".col", ".clq", ".dim"})
    if (path.size() >= std::char_traits<char>::length(ext) && path.ends_with(ext)) return Format::dimacs;
  Format f = Format::edgelist;
  bool decided = false;
  io_detail::for_each_line(text, [&](int, std::string_view line) {
    if (decided) return;
    auto tok = io_detail::tokens(line);
    if (tok.empty() || tok[0].starts_with("#")) return;
    decided = true;
    if (tok[0] == "p" || tok[0] == "c") f = Format::dimacs;
  });
  return f;
}

inline Graph read_graph_file(const std::string& path, std::optional<Format> format = std::nullopt) {
  auto text = read_text_file(path);
  return parse_graph(text, format ? *format : detect_format(path, text));
}

// ---------------------------------------------------------------- gadget

inline Graph gen_hardness_gadget(const Graph& g) {
  int n = g.n();
  if (n < 3) throw PreconditionError("gadget needs at least three vertices");
  if (eg_bound(g) > Rational(n - 1))
    throw PreconditionError("gadget needs 2m/(n-1) <= n-1, got " + eg_bound(g).str());
  auto e = g.edges();
  int next = n;
  for (Vertex v = 0; v < n; ++v) {
    int base = next;
    next += n - 2;
    for (int i = base; i < next; ++i) {
      e.emplace_back(v, i);
      for (int j = i + 1; j < next; ++j) e.emplace_back(i, j);
    }
  }
  return build_graph(e, next);
}

// ---------------------------------------------------------------- generators

struct GeneratedInstance {
  Graph graph;
  nlohmann::ordered_json meta;
};

inline constexpr int kGeneratorAttempts = 1000;

inline GeneratedInstance gen_gnp2c(int n, const Rational& prob, std::uint64_t seed) {
  if (n < 3) throw PreconditionError("gnp2c needs n >= 3");
  if (prob <= Rational(0) || prob > Rational(1)) throw PreconditionError("gnp2c needs 0 < prob <= 1");
  Rng rng(derive_seed(seed, 0x62c));
  for (int attempt = 1; attempt <= kGeneratorAttempts; ++attempt) {
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (bernoulli(rng, prob.num(), prob.den())) e.emplace_back(u, v);
    auto g = build_graph(e, n);
    if (is_two_connected(g))
      return {std::move(g), {{"family", "gnp2c"}, {"n", n}, {"prob", prob.str()}, {"seed", seed}, {"attempts", attempt}}};
  }
  throw PreconditionError("gnp2c: no 2-connected sample in " + std::to_string(kGeneratorAttempts) + " attempts");
}

// K_n minus a random edge set, keeping the minimum degree at least delta_floor
inline GeneratedInstance gen_near_complete(int n, int delta_floor, int k, std::uint64_t seed) {
  if (n < 3 || delta_floor > n - 1 || 2 * delta_floor < n) throw PreconditionError("near_complete: need n/2 <= delta_floor < n");
  Rng rng(derive_seed(seed, 0x9c0));
  long long slack = static_cast<long long>(n) * (n - 1 - delta_floor) / 2;
  for (int attempt = 1; attempt <= kGeneratorAttempts; ++attempt) {
    long long target = slack > 0 ? static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(slack) + 1)) : 0;
    std::vector<int> deg(n, n - 1);
    std::set<Edge> gone;
    for (long long tries = 0; static_cast<long long>(gone.size()) < target && tries < 20 * target; ++tries) {
      Vertex u = static_cast<Vertex>(uniform_below(rng, n)), v = static_cast<Vertex>(uniform_below(rng, n));
      if (u == v) continue;
      Edge key = std::minmax(u, v);
      if (gone.count(key) || deg[u] <= delta_floor || deg[v] <= delta_floor) continue;
      gone.insert(key);
      --deg[u];
      --deg[v];
    }
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!gone.count({u, v})) e.emplace_back(u, v);
    auto g = build_graph(e, n);
    if (g.min_degree() < delta_floor || Rational(2 * g.min_degree()) < average_degree(g)) continue;
    auto strict = check_dense_preconditions(g, k, 0);
    return {std::move(g),
            {{"family", "near_complete"}, {"n", n}, {"delta_floor", delta_floor}, {"k", k}, {"seed", seed},
             {"missing", gone.size()}, {"attempts", attempt}, {"strict_ok", strict.ok},
             {"strict_diagnostic", strict.diagnostic}}};
  }
  throw PreconditionError("near_complete: degree conditions unmet after " + std::to_string(kGeneratorAttempts) + " attempts");
}

// A = 0..p-1, B = p..p+q-1 independent; each B-vertex misses at most k A-vertices
inline GeneratedInstance gen_bipartite_dense(int p, int k, std::uint64_t seed, int q = 0) {
  if (q == 0) q = 3 * p;
  if (p < 1 || k < 1 || q < 1) throw PreconditionError("bipartite_dense: need p, k, q >= 1");
  VertexSet A, B;
  for (int v = 0; v < p + q; ++v) (v < p ? A : B).push_back(v);
  Rng rng(derive_seed(seed, 0xb1d));
  for (int attempt = 1; attempt <= kGeneratorAttempts; ++attempt) {
    std::vector<Edge> e;
    for (int b = 0; b < q; ++b) {
      std::set<int> miss;
      int drop = static_cast<int>(uniform_below(rng, k + 1));
      while (static_cast<int>(miss.size()) < drop) miss.insert(static_cast<int>(uniform_below(rng, p)));
      for (int a = 0; a < p; ++a)
        if (!miss.count(a)) e.emplace_back(a, p + b);
    }
    auto g = build_graph(e, p + q);
    if (auto v = check_cover_side_preconditions(g, A, B, k, 0); v)
      return {std::move(g),
              {{"family", "bipartite_dense"}, {"p", p}, {"q", q}, {"k", k}, {"seed", seed}, {"A", A}, {"attempts", attempt}}};
    else if (attempt == kGeneratorAttempts)
      throw PreconditionError("bipartite_dense: " + v.diagnostic);
  }
  throw PreconditionError("bipartite_dense: unsatisfiable parameters");
}

// instances that drive the dense-extraction pipeline into a chosen branch
inline GeneratedInstance gen_lemma7_trace(const std::string& target, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x1e7));
  std::vector<Edge> e;
  int n = 0, k = 1;
  std::string mode = "strict", branch, witness;
  auto clique = [&](const std::vector<int>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) e.emplace_back(vs[i], vs[j]);
  };
  if (target == "dirac") {
    n = 170 + static_cast<int>(uniform_below(rng, 21));
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    clique(all);
    branch = "dirac";
    witness = "found_cycle";
  } else if (target == "small_dense") {
    n = 2 * (165 + static_cast<int>(uniform_below(rng, 16)));
    k = 3;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!(u % 2 == 0 && v == u + 1)) e.emplace_back(u, v);
    branch = "dirac";
    witness = "small_dense";
  } else if (target == "separator") {
    int m = 7 + static_cast<int>(uniform_below(rng, 5));
    n = 2 * m - 2;
    std::vector<int> a(m), b{0, 1};
    std::iota(a.begin(), a.end(), 0);
    for (int v = m; v < n; ++v) b.push_back(v);
    clique(a);
    clique(b);
    mode = "relaxed";
    branch = "separator";
    witness = "found_cycle";
  } else if (target == "bipartite") {
    int p = 6, q = 40;
    n = p + q;
    std::vector<int> a(p);
    std::iota(a.begin(), a.end(), 0);
    clique(a);
    for (int u = 0; u < p; ++u)
      for (int b = 0; b < q; ++b) e.emplace_back(u, p + b);
    mode = "relaxed";
    branch = "engine";
    witness = "bipartite_dense";
  } else {
    throw PreconditionError("lemma7_trace: unknown target '" + target + "' (dirac|small_dense|separator|bipartite)");
  }
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  portable_shuffle(perm, rng);
  for (auto& [u, v] : e) u = perm[u], v = perm[v];
  return {build_graph(e, n),
          {{"family", "lemma7_trace"}, {"target", target}, {"n", n}, {"k", k}, {"mode", mode},
           {"expected_branch", branch}, {"expected_witness", witness}, {"seed", seed}}};
}

// ---------------------------------------------------------------- results

inline nlohmann::ordered_json rational_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

inline nlohmann::ordered_json result_json(const SolveResult& r, bool with_trace = false) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["answer"] = to_string(r.answer);
  j["k"] = r.k;
  j["mad"] = rational_json(r.mad);
  j["threshold_len"] = r.threshold;
  j["cycle"] = r.certificate ? ordered_json(r.certificate->vertices) : ordered_json(nullptr);
  if (r.target == Target::path) j["path"] = r.path ? ordered_json(r.path->vertices) : ordered_json(nullptr);
  j["branch"] = r.branch;
  ordered_json s;
  s["probes"] = r.stats.probes;
  s["k_prime"] = r.stats.k_prime ? ordered_json(*r.stats.k_prime) : ordered_json(nullptr);
  s["dense_branch"] = r.stats.dense_branch;
  s["engine_rounds"] = r.stats.engine_rounds;
  s["searches"] = r.stats.searches;
  s["trials"] = r.stats.trials;
  if (!r.stats.reason.empty()) s["reason"] = r.stats.reason;
  j["stats"] = s;
  if (with_trace) {
    ordered_json steps = ordered_json::array();
    for (const auto& st : r.trace.steps)
      steps.push_back({{"rule", st.rule}, {"removed", st.removed}, {"eg_before", rational_json(st.eg_before)},
                       {"eg_after", rational_json(st.eg_after)}});
    j["trace"] = steps;
  }
  return j;
}

inline std::string emit_result(const SolveResult& r, bool with_trace = false) { return result_json(r, with_trace).dump(); }

}  // namespace lcmad
