// Runs the command-line tool and compares its output with the files in
// tests/golden. Set NOMFOL_UPDATE_GOLDEN=1 to rewrite them.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Outcome {
  std::string out;
  int code = -1;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(NOMFOL_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

void golden(const std::string& name, const std::string& args, int expected_code) {
  Outcome r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.out;
  std::string path = std::string(GOLDEN_DIR) + "/" + name + ".txt";
  if (std::getenv("NOMFOL_UPDATE_GOLDEN")) {
    std::ofstream(path) << r.out;
    return;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing golden file " << path;
  std::stringstream want;
  want << in.rdbuf();
  EXPECT_EQ(r.out, want.str()) << name;
}

}  // namespace

TEST(Cli, Parse) {
  golden("parse", "parse 'forall a. P(a) /\\ Q(b)'", 0);
  golden("parse_machine", "--machine parse 'R(a, b) |- forall b. R(a, b)'", 0);
}

TEST(Cli, Eval) {
  golden("eval_forall", "eval 'forall a. P(a)' --model " + sample("two.model"), 0);
  golden("eval_bottom", "eval bottom --model " + sample("two.model"), 0);
  golden("eval_pred", "eval 'P(a)' --model " + sample("two.model"), 0);
  golden("eval_machine", "eval 'R(a, f(b))' --machine --model " + sample("two.model"), 0);
  golden("eval_unknown_symbol", "eval 'Z(a)' --model " + sample("two.model"), 64);
}

TEST(Cli, EvalForallShowsEmptySupport) {
  Outcome r = run("eval 'forall a. P(a)' --model " + sample("two.model"));
  EXPECT_EQ(r.out, "deps: []  table: [0]  support: {}\n");
}

TEST(Cli, Prove) {
  golden("prove_lem", "prove '|- forall a. (P(a) \\/ ~ P(a))' --depth 6", 0);
  golden("prove_unknown", "prove '|- P(a)'", 2);
  golden("prove_malformed", "prove '|- P(a'", 64);
}

TEST(Cli, Check) {
  golden("check_valid", "check " + sample("excluded_middle.proof"), 0);
  std::string bad = std::string(GOLDEN_DIR) + "/corrupted.proof";
  golden("check_corrupted", "check " + bad, 1);
}

TEST(Cli, Countermodel) {
  golden("countermodel", "countermodel '|- P(a)' --max-k 1", 0);
  golden("countermodel_none", "countermodel 'P(a) |- P(a)' --max-k 2", 2);
}

TEST(Cli, Axioms) {
  golden("axioms_sigma_terms", "axioms sigma-terms --n 200 --seed 3", 0);
  golden("axioms_precedent", "axioms precedent", 0);
  golden("axioms_unknown", "axioms nonsense", 64);
}

TEST(Cli, AxiomsIndependentOfJobs) {
  Outcome one = run("axioms foleq-tarski --n 50 --seed 9 --jobs 1");
  Outcome four = run("axioms foleq-tarski --n 50 --seed 9 --jobs 4");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, Sketch) {
  golden("sketch_one", "sketch 'P(c())' --pair 'a:P(a)'", 0);
  golden("sketch_seeded", "sketch 'P(c())' --steps 1 --seed 1", 0);
  golden("sketch_six", "--machine sketch 'P(c())' --steps 6 --seed 2", 0);
  golden("sketch_refutable", "sketch 'P(a) /\\ ~P(a)'", 1);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("eval 'P(a)'").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}
