#include "support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#ifndef VSE_CLI_PATH
#error "VSE_CLI_PATH must point at the built vse executable"
#endif

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stdout captured; stderr goes to /dev/null.
Run run(const std::string& args) {
  std::string cmd = std::string(VSE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string link(const std::string& name) { return vse::test::data_path("links/" + name); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, Count) {
  EXPECT_EQ(run("count --n 500 --k 2").out, "500001\n");
  EXPECT_EQ(run("count --n 20 --k 2").out, "801\n");
  EXPECT_EQ(run("count --n 3 --k inf").out, "27\n");
}

TEST(Cli, StateSum) {
  auto r = run("statesum --link " + link("kink_x1.vse") + " --full");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(vse::parse(r.out.substr(0, r.out.size() - 1)), vse::parse("M*A*o^2 + M*B*o + F*o"));
  EXPECT_EQ(run("statesum --link " + link("kink_x1.vse") + " --k 0").out, "F*o\n");
}

TEST(Cli, KAndFullAreExclusive) {
  EXPECT_EQ(run("statesum --link " + link("kink_x1.vse") + " --k 1 --full").code, 1);
  EXPECT_EQ(run("statesum --link " + link("kink_x1.vse")).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("count --n 3").code, 1);
  EXPECT_EQ(run("eta --link " + link("js14.vse") + " --k two").code, 1);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("eta --link /nonexistent.vse --k 1").code, 2);
  auto bad = std::filesystem::temp_directory_path() / "vse-cli-bad.vse";
  std::ofstream(bad) << "X1 a b c d\n";
  EXPECT_EQ(run("statesum --link " + bad.string() + " --full").code, 2);
  std::ofstream(bad) << "X7 a b c d\n";
  EXPECT_EQ(run("statesum --link " + bad.string() + " --full").code, 2);
  std::filesystem::remove(bad);
}

TEST(Cli, BudgetExceeded) {
  EXPECT_EQ(run("eta --link " + link("js14.vse") + " --k inf").code, 3);
  EXPECT_EQ(run("statesum --link " + link("js14.vse") + " --k 2 --max-states 10").code, 3);
}

TEST(Cli, EtaJs14) {
  auto r = run("eta --link " + link("js14.vse") + " --k 2");
  ASSERT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[0], "eta_2: 16*Z^2*o^3 + 16*Z^2*o^2 - 32*Z^2*o - 16*o^3 - 15*o^2 + 32*o");
  EXPECT_EQ(ls[1], "states: 801");
}

TEST(Cli, CompareVerdicts) {
  auto eq = run("compare --a " + link("js14.vse") + " --b " + link("unlink2.vse") + " --k 1");
  EXPECT_EQ(eq.code, 0);
  EXPECT_EQ(lines(eq.out).at(0), "EQUAL-at-level");
  auto ne = run("compare --a " + link("js14.vse") + " --b " + link("unlink2.vse") + " --k 2");
  EXPECT_EQ(lines(ne.out).at(0), "DISTINGUISHED");
  EXPECT_EQ(lines(ne.out).at(2), "b: o^2");
}

TEST(Cli, RelationsOutput) {
  auto r = run("relations");
  ASSERT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 27u);
  auto gen = vse::generate_all_relations();
  for (std::size_t i = 0; i < ls.size(); ++i) EXPECT_EQ(vse::parse(ls[i]), gen[i]);

  auto out = std::filesystem::temp_directory_path() / "vse-cli-relations.txt";
  EXPECT_EQ(run("relations --out " + out.string()).code, 0);
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), r.out);
  std::filesystem::remove(out);
}

TEST(Cli, GbLevelAndVerify) {
  auto r = run("gb --k 2");
  ASSERT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 26u);
  EXPECT_EQ(ls[0], "vse-gb v1 order=lex vars=A,B,F,X,Y,Z,M,o level=2 count=25");

  // The printed B_inf has two members outside the ideal, so verification fails.
  EXPECT_EQ(run("gb --k inf --verify-reference " + vse::test::data_path("reference/basis_inf.txt")).code, 2);

  auto self = std::filesystem::temp_directory_path() / "vse-cli-self.txt";
  {
    std::ofstream out(self);
    auto inf = lines(run("gb --k inf").out);
    for (std::size_t i = 1; i < inf.size(); ++i) out << "g" << i << ": " << inf[i] << "\n";
  }
  EXPECT_EQ(run("gb --k inf --verify-reference " + self.string()).code, 0);
  std::filesystem::remove(self);
}

TEST(Cli, BracketWithOracle) {
  auto r = run("bracket --link " + link("kink_x1.vse") + " --oracle");
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "A*o^2 + B*o");
  EXPECT_EQ(ls[2], "match");
}

TEST(Cli, DeterministicOutput) {
  auto a = run("eta --link " + link("double_conway.vse") + " --k 2 --threads 4");
  auto b = run("eta --link " + link("double_conway.vse") + " --k 2 --threads 1");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("relations").out, run("relations").out);
}
