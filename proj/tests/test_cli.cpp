#include <gtest/gtest.h>
#include <sys/wait.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "fixtures.hpp"

namespace qpl::testing {
namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

// Runs the CLI from the test data directory with `input` on stdin; stderr is
// discarded unless `merge_stderr`.
RunResult cli(const std::string& args, bool merge_stderr = false, const std::string& input = "") {
  const auto stdin_path = std::filesystem::temp_directory_path() /
                          ("qpl_cli_stdin_" + std::to_string(::getpid()));
  {
    std::ofstream f(stdin_path, std::ios::binary);
    f << input;
  }
  const std::string cmd = std::string("cd '") + data_dir().string() + "' && '" + QPL_CLI_PATH + "' " +
                          args + " < '" + stdin_path.string() + "'" +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Cli, ParsePrintsTheTree) {
  const auto r = cli("parse golden/beatrix.qpl --json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"Join\""), std::string::npos);
}

TEST(Cli, ParseFailureReportsTheOffset) {
  const auto r = cli("parse -", true, "#1 = Scan Table country Output [ Code ]");
  EXPECT_EQ(r.status, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("error"), "syntax");
  EXPECT_EQ(j.at("position"), 16);
}

TEST(Cli, CheckExitCodeFollowsErrors) {
  EXPECT_EQ(cli("check golden/beatrix.qpl --schema world_1/schema.json").status, 0);
  const auto bad = cli("check - --schema museum_visit/schema.json", false,
                       "#1 = Scan Table [ Visitors ] Output [ ID ]\n");
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(nlohmann::json::parse(bad.out).at("class"), "WrongTable");
}

TEST(Cli, CompileEmitsTheReferenceCte) {
  const auto r = cli("compile golden/template_count.qpl --schema cre_Doc_Template_Mgt/schema.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(squash(r.out), squash(golden("template_count_cte.sql")));
}

TEST(Cli, UnsupportedDialectFails) {
  const auto r = cli(
      "compile - --schema world_1/schema.json --dialect minimal", false,
      "#1 = Scan Table [ country ] Output [ Code ]\n#2 = TopSort [ #1 ] Rows [ 1 ] OrderBy [ Code ASC ] "
      "WithTies [ true ] Output [ Code ]\n");
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, RunAndInterpAgree) {
  const auto run = cli("run golden/beatrix.qpl --db world_1");
  const auto interp = cli("interp golden/beatrix.qpl --db world_1");
  EXPECT_EQ(run.status, 0);
  EXPECT_EQ(interp.status, 0);
  EXPECT_EQ(run.out, interp.out);
  EXPECT_EQ(run.out.substr(0, run.out.find('\n')), "Language");
}

TEST(Cli, CompareGoldPairMatches) {
  const auto r = cli("compare --gold-sql golden/beatrix.sql --qpl golden/beatrix.qpl --db world_1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("match"), true);
}

TEST(Cli, CompareMismatchExitsOne) {
  const auto r = cli("compare --gold-sql golden/beatrix.sql --qpl - --db world_1", false,
                     "#1 = Scan Table [ countrylanguage ] Output [ Language ]\n");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("match"), false);
}

TEST(Cli, EncodeSchema) {
  const auto simple = cli("encode-schema --schema pets_1/schema.json --style simple");
  EXPECT_EQ(squash(simple.out), squash(golden("pets_1_simple.txt")));
  const auto rich = cli("encode-schema --schema pets_1/schema.json --style rich "
                        "--question 'How much does the youngest dog weigh?'");
  EXPECT_EQ(squash(rich.out), squash(golden("pets_1_rich.txt")));
}

TEST(Cli, QdPromptOffline) {
  const auto r = cli("qd-prompt --schema museum_visit/schema.json --question 'q' --qpl golden/museum_spend.qpl");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("Natural Language Plan:"), std::string::npos);
}

TEST(Cli, AlignPrintsTheReport) {
  const auto r = cli("align --qd golden/beatrix.qd --qpl golden/beatrix.qpl --schema world_1/schema.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("score").at("exact"), "1/1");
}

TEST(Cli, EvalJsonIsStable) {
  const std::string args =
      "eval --dataset fixture/dataset.jsonl --predictions fixture/gold_predictions.jsonl --db-root . "
      "--format json";
  const auto a = cli(args);
  const auto b = cli(args + " --jobs 3");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).at("empty_gold_count"), 1);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  EXPECT_EQ(cli("check golden/beatrix.qpl").status, 2);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, MissingFileIsAnOperationalFailure) {
  const auto r = cli("parse does-not-exist.qpl", true);
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(nlohmann::json::accept(r.out)) << r.out;
}

}  // namespace
}  // namespace qpl::testing
