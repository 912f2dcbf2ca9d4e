#include "qpl/report.hpp"

#include <algorithm>
#include <cstdio>

#include "qpl/errors.hpp"

namespace qpl {

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  if (s == "md" || s == "markdown") return ReportFormat::Markdown;
  return std::nullopt;
}

namespace {

constexpr Difficulty kDifficulties[] = {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard,
                                        Difficulty::Extra};

nlohmann::json bucket_json(const Bucket& b) {
  return {{"accuracy", b.accuracy()}, {"correct", b.correct}, {"support", b.support}};
}

std::string percent(const Bucket& b) {
  if (b.support == 0) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * b.accuracy());
  return buf;
}

std::string table_row(std::string_view label, const Bucket& b) {
  return "| " + std::string(label) + " | " + percent(b) + " | " + std::to_string(b.correct) +
         " | " + std::to_string(b.support) + " |\n";
}

std::string text_row(std::string_view label, const Bucket& b) {
  // Pad by code points: labels may hold multi-byte UTF-8.
  const auto width = std::count_if(label.begin(), label.end(),
                                   [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; });
  std::string padded(label);
  if (width < 12) padded.append(static_cast<std::size_t>(12 - width), ' ');
  char buf[128];
  std::snprintf(buf, sizeof buf, "  %s %7s  %d/%d\n", padded.c_str(), percent(b).c_str(), b.correct,
                b.support);
  return buf;
}

}  // namespace

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["overall"] = bucket_json(report.overall);
  for (auto d : kDifficulties) {
    j["by_difficulty"][std::string(to_string(d))] =
        bucket_json(report.by_difficulty[static_cast<std::size_t>(d)]);
  }
  for (int i = 0; i < kLengthBuckets; ++i) {
    j["by_length"][length_label(i)] = bucket_json(report.by_length[static_cast<std::size_t>(i)]);
  }
  for (const auto& [cause, n] : report.causes) j["causes"][std::string(to_string(cause))] = n;
  j["empty_gold_count"] = report.empty_gold_count;
  j["records"] = nlohmann::json::array();
  for (const auto& o : report.outcomes) {
    j["records"].push_back({{"id", o.id},
                            {"db_id", o.db_id},
                            {"difficulty", std::string(to_string(o.difficulty))},
                            {"qpl_length", o.qpl_length},
                            {"match", o.match},
                            {"cause", std::string(to_string(o.cause))},
                            {"empty_gold", o.empty_gold},
                            {"message", o.message}});
  }
  return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
  std::vector<RecordOutcome> outcomes;
  for (const auto& r : j.at("records")) {
    RecordOutcome o;
    o.id = r.at("id").get<std::string>();
    o.db_id = r.at("db_id").get<std::string>();
    auto d = parse_difficulty(r.at("difficulty").get<std::string>());
    auto c = parse_failure_cause(r.at("cause").get<std::string>());
    if (!d || !c) throw Error("malformed report record " + r.dump());
    o.difficulty = *d;
    o.cause = *c;
    o.qpl_length = r.at("qpl_length").get<int>();
    o.match = r.at("match").get<bool>();
    o.empty_gold = r.at("empty_gold").get<bool>();
    o.message = r.at("message").get<std::string>();
    outcomes.push_back(std::move(o));
  }
  return summarize(std::move(outcomes));
}

std::string report_render(const EvalReport& report, ReportFormat format) {
  const bool empty = report.overall.support == 0;
  switch (format) {
    case ReportFormat::Json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Markdown: {
      std::string out = "| Difficulty | Accuracy | Correct | Support |\n|---|---:|---:|---:|\n";
      if (!empty) {
        for (auto d : kDifficulties) {
          out += table_row(difficulty_label(d), report.by_difficulty[static_cast<std::size_t>(d)]);
        }
        out += table_row("Overall", report.overall);
      }
      out += "\n| QPL Length | Accuracy | Correct | Support |\n|---|---:|---:|---:|\n";
      if (!empty) {
        for (int i = 0; i < kLengthBuckets; ++i) {
          out += table_row(length_label(i), report.by_length[static_cast<std::size_t>(i)]);
        }
        out += table_row("Overall", report.overall);
      }
      out += "\n| Cause | Count |\n|---|---:|\n";
      if (!empty) {
        for (const auto& [cause, n] : report.causes) {
          out += "| " + std::string(to_string(cause)) + " | " + std::to_string(n) + " |\n";
        }
      }
      out += "\nEmpty gold results: " + std::to_string(report.empty_gold_count) + "\n";
      return out;
    }
    case ReportFormat::Text: {
      std::string out = "Execution accuracy by difficulty\n";
      for (auto d : kDifficulties) {
        out += text_row(difficulty_label(d), report.by_difficulty[static_cast<std::size_t>(d)]);
      }
      out += text_row("Overall", report.overall);
      out += "Execution accuracy by QPL length\n";
      for (int i = 0; i < kLengthBuckets; ++i) {
        out += text_row(length_label(i), report.by_length[static_cast<std::size_t>(i)]);
      }
      out += "Failure causes\n";
      for (const auto& [cause, n] : report.causes) {
        out += "  " + std::string(to_string(cause)) + ": " + std::to_string(n) + "\n";
      }
      out += "Empty gold results: " + std::to_string(report.empty_gold_count) + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace qpl
