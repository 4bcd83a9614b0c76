#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace nerd {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir = fs::temp_directory_path() / ("nerd_cli_" + std::to_string(::getpid()));
  std::ostringstream out, err;

  void SetUp() override {
    fs::create_directories(dir);
    std::ofstream(dir / "g1.tsv") << "0 1\n0 2\n2 1\n";
    std::ofstream g(dir / "ring.tsv");
    // Directed ring with chords, labelled by strings.
    for (int i = 0; i < 40; ++i) {
      g << 'n' << i << " n" << (i + 1) % 40 << '\n';
      g << 'n' << i << " n" << (i + 7) % 40 << '\n';
      g << 'n' << i << " n" << (i + 13) % 40 << '\n';
    }
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "nerd");
    out.str({});
    err.str({});
    return cli::run(args, out, err);
  }
};

TEST_F(Cli, OracleTargetOnG1) {
  ASSERT_EQ(run({"oracle", "--input", path("g1.tsv"), "--target", "--n", "1", "--kappa", "1"}), 0) << err.str();
  EXPECT_EQ(out.str(), "-inf\t-0.287682\t0.405465\n-inf\t-inf\t-inf\n-inf\t0.405465\t-inf\n");
}

TEST_F(Cli, OraclePairDistributionDefault) {
  ASSERT_EQ(run({"oracle", "--input", path("g1.tsv")}), 0);
  EXPECT_EQ(out.str(), "0\t0.333333\t0.333333\n0\t0\t0\n0\t0.333333\t0\n");
}

TEST_F(Cli, OracleDenseLimitFromEnvironment) {
  ::setenv("NERD_DENSE_LIMIT", "2", 1);
  const int code = run({"oracle", "--input", path("g1.tsv")});
  ::unsetenv("NERD_DENSE_LIMIT");
  EXPECT_EQ(code, cli::size_error);
}

TEST_F(Cli, TrainWritesFilesDeterministically) {
  const std::vector<std::string> base{"train", "--input", path("ring.tsv"), "--dim", "8", "--walks-per-node", "50",
                                      "--preset", "lp", "--seed", "3", "--quiet", "--out"};
  auto a = base, b = base;
  a.push_back(path("a"));
  b.push_back(path("b"));
  ASSERT_EQ(run(a), 0) << err.str();
  ASSERT_EQ(run(b), 0) << err.str();
  for (const char* ext : {".src", ".tgt", ".ids"}) {
    ASSERT_TRUE(fs::exists(path("a") + ext));
    EXPECT_EQ(slurp(path("a") + ext), slurp(path("b") + ext)) << ext;
  }
  EXPECT_EQ(slurp(path("a") + ".src").substr(0, 5), "40 8\n");
}

TEST_F(Cli, SplitThenEvaluate) {
  ASSERT_EQ(run({"split", "--input", path("ring.tsv"), "--out", path("s"), "--test-frac", "0.2", "--invert", "1",
                 "--seed", "5"}),
            0)
      << err.str();
  ASSERT_EQ(run({"split", "--input", path("ring.tsv"), "--out", path("t"), "--test-frac", "0.2", "--invert", "1",
                 "--seed", "5"}),
            0);
  for (const char* ext : {".train", ".test.pos", ".test.neg"})
    EXPECT_EQ(slurp(path("s") + ext), slurp(path("t") + ext)) << ext;

  ASSERT_EQ(run({"train", "--input", path("s.train"), "--out", path("e"), "--dim", "8", "--walks-per-node", "20",
                 "--quiet"}),
            0)
      << err.str();
  ASSERT_EQ(run({"eval-lp", "--emb", path("e"), "--split", path("s")}), 0) << err.str();
  EXPECT_EQ(out.str().rfind("auc\t", 0), 0u);
  const std::string lp = out.str();
  EXPECT_EQ(std::count(lp.begin(), lp.end(), '\n'), 1);
  ASSERT_EQ(run({"eval-lp", "--emb", path("e"), "--split", path("s"), "--invert", "1.0"}), 0) << err.str();
  EXPECT_EQ(out.str().rfind("auc\t", 0), 0u);

  ASSERT_EQ(run({"eval-gr", "--emb", path("e"), "--input", path("ring.tsv"), "--ks", "1,5"}), 0) << err.str();
  EXPECT_NE(out.str().find("precision@1\t"), std::string::npos);
  EXPECT_NE(out.str().find("precision@5\t"), std::string::npos);
}

TEST_F(Cli, EvalNodeClassification) {
  ASSERT_EQ(run({"train", "--input", path("ring.tsv"), "--out", path("e"), "--dim", "8", "--walks-per-node", "20",
                 "--quiet"}),
            0);
  std::ofstream labels(path("labels.txt"));
  for (int i = 0; i < 40; ++i) labels << 'n' << i << ' ' << (i < 20 ? "low" : "high") << '\n';
  labels.close();
  ASSERT_EQ(run({"eval-nc", "--emb", path("e"), "--labels", path("labels.txt"), "--concat-dim", "8"}), 0)
      << err.str();
  EXPECT_NE(out.str().find("micro_f1\t"), std::string::npos);
  EXPECT_NE(out.str().find("macro_f1\t"), std::string::npos);
}

TEST_F(Cli, WalksDump) {
  ASSERT_EQ(run({"walks-dump", "--input", path("g1.tsv"), "--count", "4", "--kind", "source", "--pairs", "2"}), 0);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_EQ(line.rfind("source: ", 0), 0u);
    EXPECT_EQ(std::count(line.begin(), line.end(), ' '), 5);
  }
  EXPECT_EQ(count, 4);
}

TEST_F(Cli, HelpListsEveryFlag) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
      {"train", {"--input", "--out", "--dim", "--walks-per-node", "--pairs", "--negatives", "--joint", "--lr",
                 "--threads", "--seed", "--preset"}},
      {"split", {"--input", "--out", "--test-frac", "--invert", "--seed"}},
      {"eval-lp", {"--emb", "--split", "--invert"}},
      {"eval-gr", {"--emb", "--input", "--ks", "--sample-frac"}},
      {"eval-nc", {"--emb", "--labels", "--folds"}},
      {"oracle", {"--input", "--target", "--pairs", "--negatives"}},
      {"walks-dump", {"--input", "--pairs"}},
  };
  for (const auto& [cmd, flags] : expected) {
    ASSERT_EQ(run({cmd, "--help"}), 0) << cmd;
    for (const auto& flag : flags) EXPECT_NE(out.str().find(flag), std::string::npos) << cmd << ' ' << flag;
  }
}

TEST_F(Cli, ErrorCodes) {
  EXPECT_EQ(run({"frobnicate"}), cli::usage_error);
  EXPECT_EQ(run({"train", "--input", path("g1.tsv")}), cli::usage_error);
  EXPECT_EQ(run({"train", "--input", path("g1.tsv"), "--out", path("x"), "--bogus"}), cli::usage_error);
  EXPECT_EQ(run({"train", "--input", path("missing.tsv"), "--out", path("x")}), cli::io_error);
  std::ofstream(path("bad.tsv")) << "0 1\n1\n";
  EXPECT_EQ(run({"oracle", "--input", path("bad.tsv")}), cli::format_error);
  EXPECT_NE(err.str().find("2"), std::string::npos);
  EXPECT_EQ(run({"train", "--input", path("g1.tsv"), "--out", path("x"), "--dim", "0"}), cli::config_error);
  EXPECT_EQ(run({"split", "--input", path("g1.tsv"), "--out", path("x"), "--test-frac", "0.9"}), cli::split_error);
  EXPECT_EQ(run({"train", "--input", path("g1.tsv"), "--out", path("x"), "--preset", "nope"}), cli::usage_error);
  EXPECT_EQ(run({"oracle", "--input", path("g1.tsv"), "--target", "--bipartite"}), cli::usage_error);
}

}  // namespace
}  // namespace nerd
