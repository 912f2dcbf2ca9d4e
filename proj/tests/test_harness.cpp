#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "qpl/errors.hpp"
#include "qpl/harness.hpp"
#include "qpl/interp.hpp"
#include "qpl/parser.hpp"
#include "qpl/printer.hpp"
#include "qpl/report.hpp"
#include "qpl/sqlite_backend.hpp"

namespace qpl::testing {
namespace {

const std::vector<EvalRecord>& records() {
  static const auto r = load_dataset(data_dir() / "fixture" / "dataset.jsonl").records;
  return r;
}

std::map<std::string, std::string> gold_predictions() {
  return load_predictions(data_dir() / "fixture" / "gold_predictions.jsonl");
}

EvalReport run(const std::map<std::string, std::string>& predictions, int jobs = 1) {
  return evaluate(records(), predictions, sqlite_directory_factory(data_dir()), {jobs, 1e-6});
}

CompareOp flipped(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return CompareOp::Ne;
    case CompareOp::Ne: return CompareOp::Eq;
    case CompareOp::Lt: return CompareOp::Ge;
    case CompareOp::Ge: return CompareOp::Lt;
    case CompareOp::Gt: return CompareOp::Le;
    case CompareOp::Le: return CompareOp::Gt;
    case CompareOp::Like: return CompareOp::NotLike;
    case CompareOp::NotLike: return CompareOp::Like;
    case CompareOp::IsNull: return CompareOp::IsNotNull;
    case CompareOp::IsNotNull: return CompareOp::IsNull;
  }
  return op;
}

// Plan with every Filter comparison operator negated; nullopt when it has no Filter.
std::optional<QplPlan> flip_filters(const QplPlan& plan) {
  auto steps = plan.steps();
  bool any = false;
  for (auto& n : steps) {
    if (n.op != OpKind::Filter) continue;
    for (auto& t : n.predicate->terms) t.comparison.op = flipped(t.comparison.op);
    any = true;
  }
  if (!any) return std::nullopt;
  return QplPlan(steps);
}

TEST(Dataset, FixtureLoads) {
  ASSERT_EQ(records().size(), 26u);
  EXPECT_GE(records().size(), 20u);
  const auto& r = records().front();
  EXPECT_EQ(r.id, "r01");
  EXPECT_EQ(r.qpl_length, r.gold_plan.size());
  EXPECT_EQ(parse(r.gold_qpl), r.gold_plan);
}

TEST(Dataset, SmallFixtureHasEveryDifficulty) {
  const auto load = load_dataset(data_dir() / "fixture" / "small.jsonl");
  ASSERT_EQ(load.records.size(), 6u);
  EXPECT_TRUE(load.errors.empty());
  std::set<Difficulty> seen;
  for (const auto& r : load.records) seen.insert(r.difficulty);
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Dataset, DecompositionIsKeptWhenPresent) {
  const auto it = std::find_if(records().begin(), records().end(),
                               [](const EvalRecord& r) { return r.qd.has_value(); });
  ASSERT_NE(it, records().end());
  EXPECT_EQ(*it->qd, beatrix_qd());
}

TEST(Dataset, EmptyFileIsEmpty) {
  std::istringstream in("");
  const auto load = load_dataset(in);
  EXPECT_TRUE(load.records.empty());
  EXPECT_TRUE(load.errors.empty());
}

TEST(Dataset, BadLinesAreCollectedWithLineNumbers) {
  std::istringstream in(
      R"({"id":"a","db_id":"d","question":"q","query":"SELECT 1","qpl":"#1 = Scan Table [ t ] Output [ x ]","difficulty":"easy"})"
      "\n"
      R"({"id":"b","db_id":"d","question":"q","query":"SELECT 1","difficulty":"easy"})"
      "\n\n"
      R"({"id":"c","db_id":"d","question":"q","query":"SELECT 1","qpl":"#1 = Scan","difficulty":"hard"})"
      "\n"
      "not json\n"
      R"({"id":"e","db_id":"d","question":"q","query":"SELECT 1","qpl":"#1 = Scan Table [ t ] Output [ x ]","difficulty":"Extra Hard"})"
      "\n");
  const auto load = load_dataset(in);
  ASSERT_EQ(load.records.size(), 2u);
  EXPECT_EQ(load.records[1].difficulty, Difficulty::Extra);
  ASSERT_EQ(load.errors.size(), 3u);
  EXPECT_EQ(load.errors[0].line(), 2u);
  EXPECT_NE(std::string(load.errors[0].what()).find("qpl"), std::string::npos);
  EXPECT_EQ(load.errors[1].line(), 4u);
  EXPECT_EQ(load.errors[2].line(), 5u);
}

TEST(Predictions, MalformedLineThrows) {
  std::istringstream in("{\"id\":\"a\",\"qpl\":\"x\"}\n{\"id\":\"b\"}\n");
  try {
    load_predictions(in);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Buckets, LengthBuckets) {
  EXPECT_EQ(length_bucket(1), 0);
  EXPECT_EQ(length_bucket(7), 6);
  EXPECT_EQ(length_bucket(8), 7);
  EXPECT_EQ(length_bucket(30), 7);
  EXPECT_EQ(length_label(7), "≥8");
  EXPECT_EQ(length_label(0), "1");
}

TEST(Evaluate, GoldPredictionsScorePerfectlyInEveryBucket) {
  const auto report = run(gold_predictions());
  EXPECT_EQ(report.overall, (Bucket{26, 26}));
  for (const auto& b : report.by_difficulty) EXPECT_EQ(b.correct, b.support);
  for (const auto& b : report.by_length) {
    EXPECT_GT(b.support, 0);
    EXPECT_EQ(b.correct, b.support);
  }
  EXPECT_EQ(report.empty_gold_count, 1);
}

TEST(Evaluate, CorruptingKPredictionsLowersAccuracyByKOverN) {
  const auto gold = gold_predictions();
  const double n = static_cast<double>(records().size());
  for (int k : {1, 3, 7}) {
    auto preds = gold;
    int changed = 0;
    for (auto& [id, text] : preds) {
      if (changed == k) break;
      text = "#1 = Scan Table [ ";
      ++changed;
    }
    const auto report = run(preds);
    EXPECT_DOUBLE_EQ(report.overall.accuracy(), (n - k) / n) << k;
    EXPECT_EQ(report.causes.at(FailureCause::Syntax), k);
  }
}

TEST(Evaluate, MissingPredictionIsASyntaxFailure) {
  auto preds = gold_predictions();
  preds.erase("r05");
  const auto report = run(preds);
  EXPECT_EQ(report.overall.correct, 25);
  EXPECT_EQ(report.outcomes[4].cause, FailureCause::Syntax);
}

TEST(Evaluate, UnknownPredictionIdIsRejected) {
  auto preds = gold_predictions();
  preds["zzz"] = "#1 = Scan Table [ t ] Output [ a ]";
  EXPECT_THROW(run(preds), Error);
}

TEST(Evaluate, FlippedFilterOperatorsLowerAccuracy) {
  auto preds = gold_predictions();
  int flipped_records = 0, oracle_changed = 0;
  for (const auto& r : records()) {
    const auto flipped_plan = flip_filters(r.gold_plan);
    if (!flipped_plan) continue;
    ++flipped_records;
    preds[r.id] = pretty_print(*flipped_plan);
    const auto db = bundled_db(r.db_id);
    if (!same_bag(eval_plan(r.gold_plan, db), eval_plan(*flipped_plan, db))) ++oracle_changed;
  }
  ASSERT_GT(flipped_records, 0);
  const auto report = run(preds);
  EXPECT_LT(report.overall.accuracy(), 1.0);
  EXPECT_EQ(report.overall.support - report.overall.correct, oracle_changed);
  const int mismatches = report.causes.at(FailureCause::Mismatch);
  EXPECT_GT(mismatches, report.causes.at(FailureCause::Syntax) + report.causes.at(FailureCause::Semantic) +
                            report.causes.at(FailureCause::Backend));
}

TEST(Evaluate, SemanticAndBackendCauses) {
  const auto db = bundled_db("world_1");
  SqliteBackend backend(db);
  EvalRecord rec = records()[1];
  ASSERT_EQ(rec.db_id, "world_1");
  const auto semantic =
      evaluate_record(rec, std::string("#1 = Scan Table [ nowhere ] Output [ Name ]"), backend);
  EXPECT_EQ(semantic.cause, FailureCause::Semantic);
  rec.gold_sql = "SELECT missing FROM country";
  const auto broken = evaluate_record(rec, rec.gold_qpl, backend);
  EXPECT_EQ(broken.cause, FailureCause::Backend);
  EXPECT_FALSE(broken.match);
}

TEST(Evaluate, CausesPartitionTheRecords) {
  auto preds = gold_predictions();
  preds["r01"] = "garbage";
  preds["r02"] = "#1 = Scan Table [ country ] Output [ Nope ]";
  preds["r03"] = "#1 = Scan Table [ Student ] Output [ Fname ]";
  const auto report = run(preds);
  int total = 0;
  for (const auto& [cause, count] : report.causes) total += count;
  EXPECT_EQ(total, 26);
  EXPECT_EQ(report.causes.at(FailureCause::None), report.overall.correct);
  int support = 0;
  for (const auto& b : report.by_difficulty) support += b.support;
  EXPECT_EQ(support, 26);
}

TEST(Evaluate, ParallelRunIsIdentical) {
  auto preds = gold_predictions();
  preds["r07"] = "bad";
  const auto serial = run(preds, 1);
  const auto parallel = run(preds, 4);
  EXPECT_EQ(serial, parallel);
  EXPECT_EQ(report_render(serial, ReportFormat::Json), report_render(parallel, ReportFormat::Json));
  for (std::size_t i = 0; i < records().size(); ++i) EXPECT_EQ(parallel.outcomes[i].id, records()[i].id);
}

TEST(Report, MarkdownRowStructure) {
  const auto md = report_render(run(gold_predictions()), ReportFormat::Markdown);
  std::vector<std::string> labels;
  std::istringstream in(md);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("| ", 0) == 0) labels.push_back(line.substr(2, line.find(" |", 2) - 2));
  }
  const std::vector<std::string> expected{"Difficulty", "Easy", "Medium", "Hard", "Extra Hard", "Overall",
                                          "QPL Length", "1", "2", "3", "4", "5", "6", "7", "≥8", "Overall"};
  ASSERT_GE(labels.size(), expected.size());
  EXPECT_EQ(std::vector<std::string>(labels.begin(), labels.begin() + static_cast<long>(expected.size())),
            expected);
}

TEST(Report, EmptyReportRendersHeadersOnly) {
  const auto md = report_render(summarize({}), ReportFormat::Markdown);
  EXPECT_NE(md.find("| Difficulty |"), std::string::npos);
  EXPECT_NE(md.find("| QPL Length |"), std::string::npos);
  EXPECT_EQ(md.find("| Easy"), std::string::npos);
  EXPECT_EQ(md.find("| Overall"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  auto preds = gold_predictions();
  preds["r10"] = "#1 = Scan Table [ Pets ] Output [ PetID ]";
  const auto report = run(preds);
  const auto json = report_to_json(report);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(json.dump())), report);
  EXPECT_EQ(report_render(report, ReportFormat::Json), report_render(report, ReportFormat::Json));
}

TEST(Report, AccuraciesAreBounded) {
  auto preds = gold_predictions();
  preds["r20"] = "x";
  const auto report = run(preds);
  for (const auto& b : report.by_length) {
    EXPECT_GE(b.accuracy(), 0.0);
    EXPECT_LE(b.accuracy(), 1.0);
  }
}

}  // namespace
}  // namespace qpl::testing
