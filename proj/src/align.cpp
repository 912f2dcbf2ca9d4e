#include "qpl/align.hpp"

#include <algorithm>
#include <cctype>

#include "qpl/encode.hpp"
#include "qpl/fuzzy.hpp"
#include "qpl/ident.hpp"

namespace qpl {

std::string_view qd_step_body(std::string_view step) {
  std::size_t i = 0;
  while (i < step.size() && std::isspace(static_cast<unsigned char>(step[i]))) ++i;
  if (i < step.size() && step[i] == '#') {
    std::size_t j = i + 1;
    while (j < step.size() && std::isdigit(static_cast<unsigned char>(step[j]))) ++j;
    while (j < step.size() && std::isspace(static_cast<unsigned char>(step[j]))) ++j;
    if (j > i + 1 && j < step.size() && step[j] == '=') {
      i = j + 1;
      while (i < step.size() && std::isspace(static_cast<unsigned char>(step[i]))) ++i;
    }
  }
  return step.substr(i);
}

namespace {

// Words of the first clause: up to the first comma or a clause-joining word.
std::vector<std::string> first_clause(std::string_view body) {
  const std::size_t comma = body.find(',');
  auto w = words(body.substr(0, comma));
  static const std::set<std::string> breaks = {"and", "to", "that", "where", "which", "with"};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (breaks.count(w[i])) {
      w.resize(i);
      break;
    }
  }
  return w;
}

// Index just after the word naming a table read, or nullopt.
std::optional<std::size_t> table_anchor(const std::vector<std::string>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == "table" || w[i] == "tables") return i + 1;
  }
  if (!w.empty() && w[0] == "scan") return w.size() > 1 && w[1] == "the" ? 2 : 1;
  return std::nullopt;
}

double ratio_value(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

nlohmann::json ratio_json(const Ratio& r) {
  return {{"value", ratio_value(r)},
          {"exact", std::to_string(r.numerator()) + "/" + std::to_string(r.denominator())}};
}

}  // namespace

bool is_scan_step(std::string_view step) {
  const auto body = qd_step_body(step);
  const auto w = words(body);
  if (!w.empty() && w[0] == "scan") return true;
  const auto clause = first_clause(body);
  return std::find(clause.begin(), clause.end(), "table") != clause.end();
}

std::optional<std::string> qd_scan_table(std::string_view step, const SchemaCatalog& schema) {
  if (!is_scan_step(step)) return std::nullopt;
  const auto body = qd_step_body(step);
  const auto all = words(body);
  auto anchor = table_anchor(all);
  if (!anchor) return std::nullopt;

  std::optional<std::string> best;
  double best_score = kTableMatchThreshold;
  for (std::size_t n = 1; n <= 3 && *anchor + n <= all.size(); ++n) {
    std::string window;
    for (std::size_t i = *anchor; i < *anchor + n; ++i) {
      if (!window.empty()) window.push_back(' ');
      window += all[i];
    }
    for (const auto& t : schema.tables()) {
      const double s = token_set_ratio(window, t.name);
      // Ties keep the earlier, shorter window.
      if (s > best_score || (!best && s >= best_score)) {
        best_score = s;
        best = t.name;
      }
    }
  }
  return best;
}

AlignmentReport align_qd_qpl(const std::vector<std::string>& qd, const QplPlan& plan,
                             const SchemaCatalog& schema) {
  AlignmentReport r;
  r.qd_steps = static_cast<int>(qd.size());
  r.qpl_steps = plan.size();

  for (const auto& node : plan.steps()) {
    if (node.op != OpKind::Scan) continue;
    const TableDef* t = schema.find_table(node.table);
    r.qpl_scan_tables.insert(t ? t->name : node.table);
  }
  for (const auto& step : qd) {
    if (auto t = qd_scan_table(step, schema)) r.qd_scan_tables.insert(*t);
  }

  const int longest = std::max(r.qd_steps, r.qpl_steps);
  r.length_component = longest == 0 ? Ratio(1) : Ratio(1) - Ratio(std::abs(r.qd_steps - r.qpl_steps), longest);

  std::set<std::string, ILess> a(r.qpl_scan_tables.begin(), r.qpl_scan_tables.end());
  std::set<std::string, ILess> b(r.qd_scan_tables.begin(), r.qd_scan_tables.end());
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  r.iou = uni == 0 ? Ratio(1) : Ratio(static_cast<std::int64_t>(inter), static_cast<std::int64_t>(uni));
  r.score = (r.length_component + r.iou) / 2;
  return r;
}

nlohmann::json to_json(const AlignmentReport& r) {
  return {{"qd_steps", r.qd_steps},
          {"qpl_steps", r.qpl_steps},
          {"qpl_scan_tables", r.qpl_scan_tables},
          {"qd_scan_tables", r.qd_scan_tables},
          {"iou", ratio_json(r.iou)},
          {"length_component", ratio_json(r.length_component)},
          {"score", ratio_json(r.score)}};
}

}  // namespace qpl
