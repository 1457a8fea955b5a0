#pragma once

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <lcmad/instances_io.hpp>
#include <lcmad/oracle.hpp>
#include <lcmad/solver.hpp>

namespace lcmad::cli {

enum Exit { kOk = 0, kNo = 1, kUnknown = 2, kUsage = 64, kData = 65 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::optional<Format> format_of(const std::string& name) {
  if (name.empty() || name == "auto") return std::nullopt;
  if (name == "edgelist") return Format::edgelist;
  if (name == "dimacs") return Format::dimacs;
  throw UsageError("unknown format '" + name + "'");
}

inline Graph load(const std::string& path, const std::string& fmt, std::istream& in) {
  if (path == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    auto text = ss.str();
    auto f = format_of(fmt);
    return parse_graph(text, f ? *f : detect_format("", text));
  }
  return read_graph_file(path, format_of(fmt));
}

inline std::vector<Vertex> parse_id_list(const std::string& s) {
  std::vector<Vertex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0 || v > INT32_MAX) throw std::invalid_argument(item);
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::logic_error&) {
      throw UsageError("bad vertex id '" + item + "'");
    }
  }
  return out;
}

inline std::string join(const std::vector<Vertex>& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long cycles above the maximum average degree", "lcmad"};
  app.require_subcommand(1);
  std::string file, fmt = "auto";

  auto* mad = app.add_subcommand("mad", "exact maximum average degree and a densest subgraph");
  mad->add_option("file", file, "graph file, - for stdin")->required();
  mad->add_option("--format", fmt, "edgelist|dimacs|auto");
  bool mad_json = false;
  mad->add_flag("--json", mad_json);

  auto* sol = app.add_subcommand("solve", "decide whether a cycle (or path) of length >= mad + k exists");
  int k = -1;
  bool path = false, trace = false, json = false;
  std::string mode = "strict";
  std::uint64_t seed = 1, budget = 4096;
  int jobs = 1;
  sol->add_option("file", file)->required();
  sol->add_option("-k", k, "excess over mad")->required();
  sol->add_flag("--path", path, "look for a path with at least mad + k vertices");
  sol->add_option("--mode", mode)->check(CLI::IsMember({"strict", "relaxed"}));
  sol->add_option("--seed", seed);
  sol->add_option("--budget", budget, "cap on randomized trials per search");
  sol->add_option("--jobs", jobs, "worker threads for randomized trials")->check(CLI::Range(1, 256));
  sol->add_flag("--trace", trace, "include the reduction trace");
  sol->add_option("--format", fmt);
  sol->add_flag("--json", json);

  auto* ver = app.add_subcommand("verify", "check a cycle certificate");
  std::string cycle_list, result_file;
  long long min_len = 3;
  ver->add_option("file", file)->required();
  auto* cyc_opt = ver->add_option("--cycle", cycle_list, "comma separated vertex ids");
  auto* res_opt = ver->add_option("--result", result_file, "solve --json output, - for stdin");
  cyc_opt->excludes(res_opt);
  auto* min_opt = ver->add_option("--min-len", min_len);
  ver->add_option("--format", fmt);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family, prob = "1/2", target = "dirac";
  int n = 10, delta_floor = -1, gk = 1, p = 20, q = 0;
  bool meta = false;
  gen->add_option("family", family)->required()->check(
      CLI::IsMember({"gnp2c", "near_complete", "bipartite_dense", "lemma7_trace"}));
  gen->add_option("--n", n);
  gen->add_option("--prob", prob);
  gen->add_option("--delta-floor", delta_floor);
  gen->add_option("-k", gk);
  gen->add_option("--p", p);
  gen->add_option("--q", q);
  gen->add_option("--target", target, "dirac|small_dense|separator|bipartite");
  gen->add_option("--seed", seed);
  gen->add_flag("--meta", meta, "prefix the graph with a metadata comment");

  auto* orc = app.add_subcommand("oracle", "brute-force reference answers for small graphs");
  std::string which;
  int s = -1, t = -1;
  orc->add_option("which", which)->required()->check(CLI::IsMember({"cycle", "mad", "st_path"}));
  orc->add_option("file", file)->required();
  orc->add_option("--s", s);
  orc->add_option("--t", t);
  orc->add_option("--format", fmt);

  auto* gad = app.add_subcommand("gadget", "hardness gadget: a clique of n-2 vertices hung on every vertex");
  gad->add_option("file", file)->required();
  gad->add_option("--format", fmt);
  std::string out_fmt = "edgelist";
  gad->add_option("--out-format", out_fmt)->check(CLI::IsMember({"edgelist", "dimacs"}));
  gen->add_option("--out-format", out_fmt)->check(CLI::IsMember({"edgelist", "dimacs"}));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (mad->parsed()) {
      auto g = load(file, fmt, in);
      auto w = mad_with_witness(g);
      if (mad_json) {
        nlohmann::ordered_json j{{"mad", rational_json(w.mad)}, {"witness", w.vertices}};
        out << j.dump() << "\n";
      } else {
        out << w.mad.str() << "\n" << "witness: " << join(w.vertices) << "\n";
      }
      return kOk;
    }
    if (sol->parsed()) {
      if (k < 0) throw UsageError("-k must be non-negative");
      auto g = load(file, fmt, in);
      SolveOptions opt;
      opt.target = path ? Target::path : Target::cycle;
      opt.mode = mode == "relaxed" ? Mode::relaxed : Mode::strict;
      opt.trials.seed = seed;
      opt.trials.budget = budget;
      opt.trials.jobs = jobs;
      auto r = solve(g, k, opt);
      if (json) {
        out << emit_result(r, trace) << "\n";
      } else {
        out << "answer: " << to_string(r.answer) << "\n";
        out << "mad: " << r.mad.str() << "\n";
        out << "threshold: " << r.threshold << "\n";
        out << "branch: " << r.branch << "\n";
        if (r.certificate) out << "cycle: " << join(r.certificate->vertices) << "\n";
        if (r.path) out << "path: " << join(r.path->vertices) << "\n";
        if (!r.stats.reason.empty()) out << "reason: " << r.stats.reason << "\n";
        if (trace)
          for (const auto& st : r.trace.steps)
            out << "rule " << st.rule << " removed " << join(st.removed) << " eg " << st.eg_before.str() << " -> "
                << st.eg_after.str() << "\n";
      }
      return r.answer == Answer::yes ? kOk : r.answer == Answer::no ? kNo : kUnknown;
    }
    if (ver->parsed()) {
      std::vector<Vertex> seq;
      bool as_path = false;
      if (!result_file.empty()) {
        std::string text;
        if (result_file == "-") {
          std::stringstream ss;
          ss << in.rdbuf();
          text = ss.str();
        } else {
          text = read_text_file(result_file);
        }
        try {
          auto j = nlohmann::json::parse(text);
          if (j.contains("path") && !j["path"].is_null()) {
            as_path = true;
            seq = j["path"].get<std::vector<Vertex>>();
          } else if (j.contains("cycle") && !j["cycle"].is_null()) {
            seq = j["cycle"].get<std::vector<Vertex>>();
          } else {
            out << "rejected: result carries no certificate\n";
            return kNo;
          }
          if (min_opt->count() == 0) min_len = j.value("threshold_len", 3LL);
        } catch (const nlohmann::json::exception& e) {
          throw DataError(std::string("bad result JSON: ") + e.what());
        }
        if (file == "-") throw UsageError("graph and result cannot both come from stdin");
      } else if (!cycle_list.empty()) {
        seq = parse_id_list(cycle_list);
      } else {
        throw UsageError("verify needs --cycle or --result");
      }
      auto g = load(file, fmt, in);
      Verdict v;
      long long len = static_cast<long long>(seq.size());
      if (as_path) {
        v = verify_path_certificate(g, PathCertificate{seq});
        if (v && len < min_len) v = Verdict::fail("path has " + std::to_string(len) + " vertices, below " + std::to_string(min_len));
      } else {
        v = verify_cycle_certificate(g, CycleCertificate{seq, min_len});
      }
      if (v) {
        out << "ok: " << (as_path ? "path" : "cycle") << " with " << len << " vertices\n";
        return kOk;
      }
      out << "rejected: " << v.diagnostic << "\n";
      return kNo;
    }
    if (gen->parsed()) {
      GeneratedInstance inst;
      Rational pr;
      try {
        pr = Rational::parse(prob);
      } catch (const std::exception&) {
        throw UsageError("bad --prob '" + prob + "'");
      }
      if (family == "gnp2c") inst = gen_gnp2c(n, pr, seed);
      else if (family == "near_complete") inst = gen_near_complete(n, delta_floor < 0 ? (11 * n + 19) / 20 : delta_floor, gk, seed);
      else if (family == "bipartite_dense") inst = gen_bipartite_dense(p, gk, seed, q);
      else inst = gen_lemma7_trace(target, seed);
      Format f = out_fmt == "dimacs" ? Format::dimacs : Format::edgelist;
      if (meta) out << (f == Format::dimacs ? "c " : "# ") << inst.meta.dump() << "\n";
      out << emit_graph(inst.graph, f);
      return kOk;
    }
    if (orc->parsed()) {
      auto g = load(file, fmt, in);
      if (which == "cycle") {
        auto c = oracle_longest_cycle(g);
        out << c.length << "\n";
        if (c.cycle) out << "cycle: " << join(*c.cycle) << "\n";
      } else if (which == "mad") {
        out << oracle_mad(g).str() << "\n";
      } else {
        if (s < 0 || t < 0 || s >= g.n() || t >= g.n()) throw UsageError("st_path needs --s and --t in range");
        out << oracle_longest_st_path(g, s, t) << "\n";
      }
      return kOk;
    }
    if (gad->parsed()) {
      auto g = load(file, fmt, in);
      out << emit_graph(gen_hardness_gadget(g), out_fmt == "dimacs" ? Format::dimacs : Format::edgelist);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace lcmad::cli
