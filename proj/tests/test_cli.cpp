#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_helpers.hpp"

namespace fs = std::filesystem;

namespace {

const char* kCliBin = DCDIST_CLI_BIN;

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const fs::path& workdir) {
  const fs::path out_file = workdir / "cli_output.txt";
  const std::string command =
      std::string(kCliBin) + " " + args + " > " + out_file.string() + " 2>&1";
  RunResult result;
  const int raw = std::system(command.c_str());
  result.status = raw == -1 ? -1 : WEXITSTATUS(raw);
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("unknown subcommand fails with usage text") {
  testutil::TempDir tmp("cliusage");
  const RunResult result = run_cli("frobnicate", tmp.path());
  CHECK(result.status != 0);
  const RunResult help = run_cli("--help", tmp.path());
  CHECK(help.output.find("bench") != std::string::npos);
}

TEST_CASE("bench on the synthetic dataset prints a result row") {
  testutil::TempDir tmp("clibench");
  const RunResult result = run_cli(
      "bench --dataset synthetic --transform dcd-euclidean --classifier knn:5 "
      "--folds 4 --seed 7",
      tmp.path());
  CAPTURE(result.output);
  CHECK(result.status == 0);
  CHECK(result.output.find("dcd-euclidean") != std::string::npos);
  CHECK(result.output.find("Red(%)") != std::string::npos);
}

TEST_CASE("eval with a config file writes a reproducible report directory") {
  testutil::TempDir tmp("clieval");
  testutil::write_file(tmp.path() / "corpus.tsv",
                       "spam\tbuy cheap pills now cheap cheap\n"
                       "spam\tcheap pills offer now buy\n"
                       "spam\tlimited offer buy pills cheap\n"
                       "spam\tcheap cheap offer pills now buy them\n"
                       "ham\tmeeting notes from the standup today\n"
                       "ham\tlunch plans and meeting agenda\n"
                       "ham\tagenda for the weekly meeting notes\n"
                       "ham\tnotes about lunch and the agenda today\n");
  const std::string config = std::string("{\n") +
                             "  \"corpus\": {\"tsv\": \"" + tmp.str("corpus.tsv") + "\"},\n" +
                             "  \"transform\": \"dcd-euclidean\",\n" +
                             "  \"classifier\": \"knn:1:euclidean\",\n" +
                             "  \"folds\": 2,\n  \"seed\": 4\n}\n";
  testutil::write_file(tmp.path() / "run.json", config);

  const std::string args = "eval --config " + tmp.str("run.json") + " --out-dir " +
                           tmp.str("run_a");
  const RunResult first = run_cli(args, tmp.path());
  CAPTURE(first.output);
  CHECK(first.status == 0);
  CHECK(fs::exists(tmp.path() / "run_a" / "report.json"));
  CHECK(fs::exists(tmp.path() / "run_a" / "folds.tsv"));
  CHECK(fs::exists(tmp.path() / "run_a" / "fold0" / "predictions.tsv"));

  // identical invocation, identical machine-readable output
  const std::string args_b = "eval --config " + tmp.str("run.json") + " --out-dir " +
                             tmp.str("run_b");
  const RunResult second = run_cli(args_b, tmp.path());
  CHECK(second.status == 0);
  std::string a = slurp(tmp.path() / "run_a" / "report.json");
  std::string b = slurp(tmp.path() / "run_b" / "report.json");
  // the out-dir differs inside the config echo and invocation; normalize it away
  while (a.find("run_a") != std::string::npos) a.replace(a.find("run_a"), 5, "run_X");
  while (b.find("run_b") != std::string::npos) b.replace(b.find("run_b"), 5, "run_X");
  CHECK(a == b);
  CHECK(a.find("\"invocation\"") != std::string::npos);
  CHECK(a.find("\"seed\": 4") != std::string::npos);
}

TEST_CASE("named datasets resolve through the cache directory") {
  testutil::TempDir tmp("clicache");
  // reuters layout: <cache>/reuters.tsv with <label>TAB<text> lines
  std::string lines;
  for (int i = 0; i < 12; ++i) {
    lines += "acq\tcompany shares offer stake merger bid unit" +
             std::string(i % 2 ? " acquire" : " stock") + "\n";
    lines += "crude\toil barrel opec crude prices output petroleum" +
             std::string(i % 2 ? " refinery" : " supply") + "\n";
  }
  testutil::write_file(tmp.path() / "cache" / "reuters.tsv", lines);

  const std::string cmd = "env DCDIST_CACHE_DIR=" + tmp.str("cache") + " " + kCliBin +
                          " bench --dataset reuters --transform dcd-cosine "
                          "--classifier knn:3 --folds 3 > " +
                          tmp.str("row.txt") + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(raw) == 0);
  const std::string row = slurp(tmp.path() / "row.txt");
  CAPTURE(row);
  CHECK(row.find("dcd-cosine") != std::string::npos);

  // missing cache entry names the env var
  const std::string bad = "env DCDIST_CACHE_DIR=" + tmp.str("empty") + " " + kCliBin +
                          " bench --dataset news20 --folds 2 > " + tmp.str("err.txt") +
                          " 2>&1";
  const int raw_bad = std::system(bad.c_str());
  CHECK(WEXITSTATUS(raw_bad) != 0);
  CHECK(slurp(tmp.path() / "err.txt").find("DCDIST_CACHE_DIR") != std::string::npos);
}

TEST_CASE("bad flags and missing files produce single-line diagnostics") {
  testutil::TempDir tmp("clierr");
  CHECK(run_cli("eval --config /definitely/missing.json", tmp.path()).status != 0);
  CHECK(run_cli("bench --dataset synthetic --transform nope", tmp.path()).status != 0);
  CHECK(run_cli("bench --dataset synthetic --no-such-flag", tmp.path()).status != 0);
  const RunResult missing_corpus =
      run_cli("vectorize --corpus-dir /missing/path", tmp.path());
  CHECK(missing_corpus.status != 0);
  CHECK(missing_corpus.output.find("/missing/path") != std::string::npos);
}

TEST_CASE("prep, vectorize, dcd, select and topwords round the pipeline") {
  testutil::TempDir tmp("clipipe");
  testutil::write_file(tmp.path() / "c" / "x" / "1.txt", "apples oranges apples pears");
  testutil::write_file(tmp.path() / "c" / "x" / "2.txt", "oranges pears plums apples");
  testutil::write_file(tmp.path() / "c" / "y" / "1.txt", "cars trucks wheels engines");
  testutil::write_file(tmp.path() / "c" / "y" / "2.txt", "engines wheels brakes cars");

  const RunResult prep =
      run_cli("prep --corpus-dir " + tmp.str("c") + " --out " + tmp.str("prep.tsv"),
              tmp.path());
  CHECK(prep.status == 0);
  CHECK(slurp(tmp.path() / "prep.tsv").find("x/1.txt\tx\t") != std::string::npos);

  const RunResult vec = run_cli(
      "vectorize --corpus-dir " + tmp.str("c") + " --out-prefix " + tmp.str("m"),
      tmp.path());
  CHECK(vec.status == 0);
  CHECK(fs::exists(tmp.path() / "m.svm"));
  CHECK(fs::exists(tmp.path() / "m.vocab"));
  CHECK(fs::exists(tmp.path() / "m.meta.json"));

  const RunResult dcd = run_cli("dcd --corpus-dir " + tmp.str("c") + " --metric cosine "
                                "--out-prefix " + tmp.str("f"),
                                tmp.path());
  CHECK(dcd.status == 0);
  CHECK(dcd.output.find("features=2") != std::string::npos);
  CHECK(fs::exists(tmp.path() / "f.representatives.tsv"));

  const RunResult select = run_cli(
      "select --corpus-dir " + tmp.str("c") + " --transform chi2 --budget 0.5 "
      "--out-prefix " + tmp.str("s"),
      tmp.path());
  CHECK(select.status == 0);
  CHECK(fs::exists(tmp.path() / "s.ranking.tsv"));
  CHECK(fs::exists(tmp.path() / "s.mask.txt"));

  const RunResult topwords =
      run_cli("topwords --corpus-dir " + tmp.str("c") + " --n 3", tmp.path());
  CHECK(topwords.status == 0);
  CHECK(topwords.output.find("x\t") != std::string::npos);
  CHECK(topwords.output.find("y\t") != std::string::npos);
}

TEST_SUITE_END();
