#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpl/backend.hpp"
#include "qpl/plan.hpp"
#include "qpl/schema.hpp"

namespace qpl {

struct CteClause {
  std::string name;  // `<OpKind>_<step>`
  std::string sql;   // body without the surrounding `name AS ( ... )`

  bool operator==(const CteClause&) const = default;
};

struct CteProgram {
  std::vector<CteClause> clauses;  // one per step, in step order
  std::string final_select;
  bool ordered = false;  // root is Sort or TopSort

  /// `WITH\n<name> AS (\n    <body>\n),\n...\n<final_select>`
  std::string to_sql() const;
  /// Program that returns the rows of clause `i` (0-based).
  std::string prefix_sql(std::size_t i) const;
};

/// One CTE clause per step. The final select is `SELECT * FROM <root>`;
/// an ordered root appends its ORDER BY there, and selects the output columns
/// explicitly when sort keys are not among them. Throws Error when the plan
/// has error-class diagnostics and UnsupportedDialectFeature when WithTies
/// cannot be expressed in `dialect`.
CteProgram compile_to_cte(const QplPlan& plan, const SchemaCatalog& schema,
                          const Dialect& dialect = dialect_sqlite());

/// Runs the program. A failure is attributed to the first clause whose
/// prefix program fails, or to `final` when every clause runs.
ResultSet execute(const CteProgram& program, DatabaseBackend& backend);

/// True when `sql` has an ORDER BY outside any parentheses.
bool has_top_level_order_by(std::string_view sql);

/// Double-quotes identifiers that are not plain or collide with SQL keywords.
std::string quote_identifier(std::string_view name);

struct MatchOutcome {
  bool match = false;
  bool empty_gold = false;  // gold result had no rows; a match is weak evidence
  std::optional<std::string> error;  // backend or compilation failure
  ResultSet gold;
  ResultSet predicted;
};

/// Executes the gold SQL and the compiled plan and compares the results.
/// Gold failures, compilation failures and backend failures are reported in
/// `error` and count as non-matches.
MatchOutcome execution_match(const std::string& gold_sql, const QplPlan& predicted,
                             DatabaseBackend& backend, const SchemaCatalog& schema,
                             double tolerance = 1e-6);

}  // namespace qpl
