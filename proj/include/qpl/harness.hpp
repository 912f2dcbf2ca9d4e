#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpl/backend.hpp"
#include "qpl/errors.hpp"
#include "qpl/plan.hpp"

namespace qpl {

enum class Difficulty { Easy, Medium, Hard, Extra };

std::string_view to_string(Difficulty d);
/// Accepts easy, medium, hard, extra and "extra hard" (case-insensitive).
std::optional<Difficulty> parse_difficulty(std::string_view s);
/// Row label used in reports: Easy, Medium, Hard, Extra Hard.
std::string_view difficulty_label(Difficulty d);

struct EvalRecord {
  std::string id;
  std::string db_id;
  std::string question;
  std::string gold_sql;
  std::string gold_qpl;
  QplPlan gold_plan;
  std::optional<std::vector<std::string>> qd;
  Difficulty difficulty = Difficulty::Easy;
  int qpl_length = 0;  // steps of the gold plan
};

/// Well-formed records plus one FormatError per rejected line.
struct DatasetLoad {
  std::vector<EvalRecord> records;
  std::vector<FormatError> errors;
};

/// JSON Lines with `{id, db_id, question, query, qpl, qd?, difficulty}`;
/// `qpl` and `qd` are a string or an array of lines. Blank lines are skipped.
DatasetLoad load_dataset(std::istream& in);
DatasetLoad load_dataset(const std::filesystem::path& path);

/// JSON Lines with `{id, qpl}`. Throws FormatError for the first bad line.
std::map<std::string, std::string> load_predictions(std::istream& in);
std::map<std::string, std::string> load_predictions(const std::filesystem::path& path);

enum class FailureCause { None, Syntax, Semantic, Backend, Mismatch };

std::string_view to_string(FailureCause c);
std::optional<FailureCause> parse_failure_cause(std::string_view s);

struct RecordOutcome {
  std::string id;
  std::string db_id;
  Difficulty difficulty = Difficulty::Easy;
  int qpl_length = 0;
  bool match = false;
  FailureCause cause = FailureCause::None;
  bool empty_gold = false;
  std::string message;

  bool operator==(const RecordOutcome&) const = default;
};

struct Bucket {
  int correct = 0;
  int support = 0;

  double accuracy() const { return support == 0 ? 0.0 : static_cast<double>(correct) / support; }
  bool operator==(const Bucket&) const = default;
};

/// QPL length buckets 1..7 individually and 8 or more pooled.
inline constexpr int kLengthBuckets = 8;
int length_bucket(int qpl_length);
std::string length_label(int bucket);

struct EvalReport {
  std::vector<RecordOutcome> outcomes;  // input order
  std::array<Bucket, 4> by_difficulty{};
  std::array<Bucket, kLengthBuckets> by_length{};  // index 0 is length 1
  Bucket overall;
  std::map<FailureCause, int> causes;  // every cause, including None for matches
  int empty_gold_count = 0;

  bool operator==(const EvalReport&) const = default;
};

/// Aggregates outcomes into buckets.
EvalReport summarize(std::vector<RecordOutcome> outcomes);

struct EvalOptions {
  int jobs = 1;
  double tolerance = 1e-6;
};

/// Evaluates every record against its prediction; a record without a
/// prediction fails with cause syntax. Throws Error when a prediction id is
/// not a record id. Each worker opens its own backends through `factory`.
EvalReport evaluate(const std::vector<EvalRecord>& records,
                    const std::map<std::string, std::string>& predictions,
                    const BackendFactory& factory, const EvalOptions& options = {});

/// Evaluates one prediction on an open backend.
RecordOutcome evaluate_record(const EvalRecord& record, const std::optional<std::string>& prediction,
                              DatabaseBackend& backend, double tolerance = 1e-6);

}  // namespace qpl
