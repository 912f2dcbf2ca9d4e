#include "qpl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <memory>
#include <set>
#include <thread>

#include <json.hpp>

#include "qpl/compile.hpp"
#include "qpl/ident.hpp"
#include "qpl/parser.hpp"
#include "qpl/validator.hpp"

namespace qpl {

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
    case Difficulty::Extra: return "extra";
  }
  return "?";
}

std::optional<Difficulty> parse_difficulty(std::string_view s) {
  if (iequals(s, "easy")) return Difficulty::Easy;
  if (iequals(s, "medium")) return Difficulty::Medium;
  if (iequals(s, "hard")) return Difficulty::Hard;
  if (iequals(s, "extra") || iequals(s, "extra hard")) return Difficulty::Extra;
  return std::nullopt;
}

std::string_view difficulty_label(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "Easy";
    case Difficulty::Medium: return "Medium";
    case Difficulty::Hard: return "Hard";
    case Difficulty::Extra: return "Extra Hard";
  }
  return "?";
}

std::string_view to_string(FailureCause c) {
  switch (c) {
    case FailureCause::None: return "none";
    case FailureCause::Syntax: return "syntax";
    case FailureCause::Semantic: return "semantic";
    case FailureCause::Backend: return "backend";
    case FailureCause::Mismatch: return "mismatch";
  }
  return "?";
}

std::optional<FailureCause> parse_failure_cause(std::string_view s) {
  for (auto c : {FailureCause::None, FailureCause::Syntax, FailureCause::Semantic,
                 FailureCause::Backend, FailureCause::Mismatch}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

int length_bucket(int qpl_length) { return std::clamp(qpl_length, 1, kLengthBuckets) - 1; }

std::string length_label(int bucket) {
  return bucket + 1 >= kLengthBuckets ? "≥" + std::to_string(kLengthBuckets)
                                      : std::to_string(bucket + 1);
}

namespace {

std::string text_or_lines(const nlohmann::json& j, const char* field) {
  const auto& v = j.at(field);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& line : v) {
      if (!out.empty()) out += "\n";
      out += line.get<std::string>();
    }
    return out;
  }
  throw std::invalid_argument(std::string("field ") + field + " must be a string or an array");
}

std::string required_string(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw std::invalid_argument(std::string("missing field ") + field);
  if (!j.at(field).is_string()) {
    throw std::invalid_argument(std::string("field ") + field + " must be a string");
  }
  return j.at(field).get<std::string>();
}

EvalRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  EvalRecord r;
  r.id = j.contains("id") && j.at("id").is_number() ? j.at("id").dump() : required_string(j, "id");
  r.db_id = required_string(j, "db_id");
  r.question = required_string(j, "question");
  r.gold_sql = required_string(j, "query");
  if (!j.contains("qpl")) throw std::invalid_argument("missing field qpl");
  r.gold_qpl = text_or_lines(j, "qpl");
  const auto diff = required_string(j, "difficulty");
  auto d = parse_difficulty(diff);
  if (!d) throw std::invalid_argument("unknown difficulty " + diff);
  r.difficulty = *d;
  if (j.contains("qd") && !j.at("qd").is_null()) {
    std::vector<std::string> steps;
    const auto& qd = j.at("qd");
    if (qd.is_array()) {
      for (const auto& s : qd) steps.push_back(s.get<std::string>());
    } else {
      std::string text = qd.get<std::string>();
      std::size_t start = 0;
      while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) steps.push_back(text.substr(start, end - start));
        start = end + 1;
      }
    }
    r.qd = std::move(steps);
  }
  try {
    r.gold_plan = parse(r.gold_qpl);
    check_tree(r.gold_plan);
  } catch (const Error& e) {
    throw std::invalid_argument(std::string("gold QPL is invalid: ") + e.what());
  }
  r.qpl_length = r.gold_plan.size();
  return r;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return in;
}

}  // namespace

DatasetLoad load_dataset(std::istream& in) {
  DatasetLoad out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (blank(line)) continue;
    try {
      out.records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      out.errors.emplace_back(n, e.what());
    } catch (const std::invalid_argument& e) {
      out.errors.emplace_back(n, e.what());
    }
  }
  return out;
}

DatasetLoad load_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_dataset(in);
}

std::map<std::string, std::string> load_predictions(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (blank(line)) continue;
    try {
      auto j = nlohmann::json::parse(line);
      std::string id = j.at("id").is_number() ? j.at("id").dump() : j.at("id").get<std::string>();
      if (out.count(id)) throw std::invalid_argument("duplicate prediction id " + id);
      out.emplace(std::move(id), text_or_lines(j, "qpl"));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(n, e.what());
    } catch (const std::invalid_argument& e) {
      throw FormatError(n, e.what());
    }
  }
  return out;
}

std::map<std::string, std::string> load_predictions(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_predictions(in);
}

EvalReport summarize(std::vector<RecordOutcome> outcomes) {
  EvalReport r;
  for (auto c : {FailureCause::None, FailureCause::Syntax, FailureCause::Semantic,
                 FailureCause::Backend, FailureCause::Mismatch}) {
    r.causes[c] = 0;
  }
  for (const auto& o : outcomes) {
    const int hit = o.match ? 1 : 0;
    auto& d = r.by_difficulty[static_cast<std::size_t>(o.difficulty)];
    d.support += 1;
    d.correct += hit;
    auto& l = r.by_length[static_cast<std::size_t>(length_bucket(o.qpl_length))];
    l.support += 1;
    l.correct += hit;
    r.overall.support += 1;
    r.overall.correct += hit;
    r.causes[o.cause] += 1;
    if (o.empty_gold) ++r.empty_gold_count;
  }
  r.outcomes = std::move(outcomes);
  return r;
}

RecordOutcome evaluate_record(const EvalRecord& record, const std::optional<std::string>& prediction,
                              DatabaseBackend& backend, double tolerance) {
  RecordOutcome o;
  o.id = record.id;
  o.db_id = record.db_id;
  o.difficulty = record.difficulty;
  o.qpl_length = record.qpl_length;
  if (!prediction) {
    o.cause = FailureCause::Syntax;
    o.message = "no prediction";
    return o;
  }
  QplPlan plan;
  try {
    plan = parse(*prediction);
  } catch (const Error& e) {
    o.cause = FailureCause::Syntax;
    o.message = e.what();
    return o;
  }
  const auto diags = validate(plan, backend.schema());
  for (const auto& d : diags) {
    if (!d.is_error()) continue;
    o.cause = FailureCause::Semantic;
    o.message = "step #" + std::to_string(d.step) + ": " + std::string(to_string(d.cls)) + ": " +
                d.message;
    return o;
  }
  const auto m = execution_match(record.gold_sql, plan, backend, backend.schema(), tolerance);
  o.empty_gold = m.empty_gold;
  if (m.error) {
    o.cause = FailureCause::Backend;
    o.message = *m.error;
  } else if (m.match) {
    o.match = true;
  } else {
    o.cause = FailureCause::Mismatch;
    o.message = "result sets differ";
  }
  return o;
}

EvalReport evaluate(const std::vector<EvalRecord>& records,
                    const std::map<std::string, std::string>& predictions,
                    const BackendFactory& factory, const EvalOptions& options) {
  {
    std::set<std::string> ids;
    for (const auto& r : records) ids.insert(r.id);
    for (const auto& [id, _] : predictions) {
      if (!ids.count(id)) throw Error("prediction for unknown record id " + id);
    }
  }

  std::vector<RecordOutcome> outcomes(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    // Backends are single-consumer: each worker keeps its own per database.
    std::map<std::string, std::unique_ptr<DatabaseBackend>> backends;
    std::map<std::string, std::string> open_errors;
    for (std::size_t i = next++; i < records.size(); i = next++) {
      const EvalRecord& rec = records[i];
      auto it = predictions.find(rec.id);
      std::optional<std::string> pred;
      if (it != predictions.end()) pred = it->second;

      DatabaseBackend* backend = nullptr;
      if (!open_errors.count(rec.db_id)) {
        auto& slot = backends[rec.db_id];
        if (!slot) {
          try {
            slot = factory(rec.db_id);
          } catch (const std::exception& e) {
            open_errors[rec.db_id] = e.what();
          }
        }
        backend = slot.get();
      }
      if (!backend) {
        RecordOutcome o;
        o.id = rec.id;
        o.db_id = rec.db_id;
        o.difficulty = rec.difficulty;
        o.qpl_length = rec.qpl_length;
        o.cause = pred ? FailureCause::Backend : FailureCause::Syntax;
        o.message = pred ? "cannot open database " + rec.db_id + ": " + open_errors[rec.db_id]
                         : "no prediction";
        outcomes[i] = std::move(o);
        continue;
      }
      try {
        outcomes[i] = evaluate_record(rec, pred, *backend, options.tolerance);
      } catch (const std::exception& e) {
        RecordOutcome o;
        o.id = rec.id;
        o.db_id = rec.db_id;
        o.difficulty = rec.difficulty;
        o.qpl_length = rec.qpl_length;
        o.cause = FailureCause::Backend;
        o.message = e.what();
        outcomes[i] = std::move(o);
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(records.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return summarize(std::move(outcomes));
}

}  // namespace qpl
