#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = lcmad::cli::run_cli(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(LCMAD_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, SolveJsonOnK4) {
  auto r = run({"solve", data("k4.el"), "-k", "0", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["answer"], "yes");
  EXPECT_EQ(j["cycle"].size(), 4u);
  EXPECT_EQ(j["mad"]["num"], 3);
}

TEST(Cli, SolveNoAndUnknownExitCodes) {
  EXPECT_EQ(run({"solve", data("k4.el"), "-k", "2"}).code, 1);
  auto p = run({"solve", data("petersen.dimacs"), "-k", "6"});
  EXPECT_EQ(p.code, 0) << p.out;
  EXPECT_EQ(run({"solve", data("petersen.dimacs"), "-k", "7"}).code, 1);
}

TEST(Cli, VerifyRejectsShortCycle) {
  auto r = run({"verify", data("k4.el"), "--cycle", "0,1,2", "--min-len", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("rejected"), std::string::npos);
  EXPECT_EQ(run({"verify", data("k4.el"), "--cycle", "0,1,2,3", "--min-len", "4"}).code, 0);
  EXPECT_EQ(run({"verify", data("k4.el"), "--cycle", "0,1,x"}).code, 64);
}

TEST(Cli, MadOfBowtie) {
  auto r = run({"mad", data("bowtie.el")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "12/5\nwitness: 0 1 2 3 4\n");
}

TEST(Cli, SolveThenVerify) {
  for (std::string k : {"0", "1"}) {
    auto s = run({"solve", data("petersen.dimacs"), "-k", k, "--json"});
    ASSERT_EQ(s.code, 0);
    auto v = run({"verify", data("petersen.dimacs"), "--result", "-"}, s.out);
    EXPECT_EQ(v.code, 0) << v.out << v.err;
  }
  auto path = run({"solve", data("bowtie.el"), "-k", "1", "--path", "--json"});
  ASSERT_EQ(path.code, 0);
  EXPECT_EQ(run({"verify", data("bowtie.el"), "--result", "-"}, path.out).code, 0);
  auto no = run({"solve", data("k4.el"), "-k", "2", "--json"});
  EXPECT_EQ(run({"verify", data("k4.el"), "--result", "-"}, no.out).code, 1);
  EXPECT_EQ(run({"verify", data("k4.el"), "--result", "-"}, "{oops").code, 65);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"solve", data("k4.el")}).code, 64);
  EXPECT_EQ(run({"solve", data("k4.el"), "-k", "-1"}).code, 64);
  EXPECT_EQ(run({"solve", data("k4.el"), "-k", "0", "--mode", "fast"}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(run({"mad", data("missing.el")}).code, 65);
  auto bad = run({"mad", "-"}, "0 1\n1 1\n");
  EXPECT_EQ(bad.code, 65);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"solve", data("bowtie.el"), "-k", "0"}).code, 65);
  EXPECT_EQ(run({"gadget", data("k4.el")}).code, 65);
}

TEST(Cli, StdinAndFormats) {
  auto r = run({"mad", "-", "--format", "dimacs"}, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 2), "2\n");
  EXPECT_EQ(run({"oracle", "mad", data("bowtie.el")}).out, "12/5\n");
  EXPECT_EQ(run({"oracle", "cycle", data("petersen.dimacs")}).out.substr(0, 2), "9\n");
  EXPECT_EQ(run({"oracle", "st_path", data("k4.el"), "--s", "0", "--t", "1"}).out, "4\n");
}

TEST(Cli, GenIsDeterministicAndParses) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"gen", "gnp2c", "--n", "9", "--seed", "4", "--meta"},
        {"gen", "near_complete", "--n", "70", "--seed", "2"},
        {"gen", "bipartite_dense", "--p", "20", "-k", "2", "--seed", "3", "--out-format", "dimacs", "--meta"},
        {"gen", "lemma7_trace", "--target", "separator", "--seed", "5"}}) {
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto m = run({"mad", "-"}, a.out);
    EXPECT_EQ(m.code, 0) << m.err;
  }
  auto c4 = run({"gadget", "-"}, "0 1\n1 2\n2 3\n3 0\n");
  ASSERT_EQ(c4.code, 0);
  EXPECT_EQ(c4.out.substr(0, 5), "n 12\n");
}

TEST(Cli, SolveOutputIsDeterministic) {
  std::vector<std::string> args{"solve", data("petersen.dimacs"), "-k", "3", "--json", "--trace", "--seed", "9"};
  EXPECT_EQ(run(args).out, run(args).out);
}
