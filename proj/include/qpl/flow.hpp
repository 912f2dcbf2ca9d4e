#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpl/diagnostic.hpp"
#include "qpl/plan.hpp"
#include "qpl/schema.hpp"

namespace qpl {

/// A column flowing out of a step.
struct ColumnInfo {
  std::string name;
  SimpleType type = SimpleType::Other;
  // Base table column this value is copied from, when it is a plain copy.
  std::optional<std::string> base_table;
  std::optional<std::string> base_column;
};

/// Where a column reference inside a node points: `slot` 0 is the scanned
/// table or the first input, 1 the second input; `index` is the position in
/// that source's column list.
struct ResolvedColumn {
  int slot = 0;
  int index = 0;
};

/// Column-flow analysis of a plan against a schema: output columns of every
/// step, reference resolution, and the diagnostics found on the way. The
/// analysis is tolerant, so every step gets an output header even when some
/// of its references fail to resolve.
class PlanFlow {
 public:
  PlanFlow(const QplPlan& plan, const SchemaCatalog& schema);

  const QplPlan& plan() const { return *plan_; }
  const SchemaCatalog& schema() const { return *schema_; }

  const std::vector<ColumnInfo>& outputs(int step) const;
  /// Columns of the source in `slot` of `step` (table columns for a Scan).
  const std::vector<ColumnInfo>& source(int step, int slot) const;
  std::optional<ResolvedColumn> resolve(int step, const ColumnRef& ref) const;
  /// Resolution of output expression `i` of `step` (ColumnRef outputs only).
  std::optional<ResolvedColumn> resolve_output(int step, std::size_t i) const;

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  bool has_errors() const;

 private:
  void analyze_step(int k);
  void check_predicate(int k, const Predicate& p);
  void check_structure();
  const ColumnInfo* column(int step, const ResolvedColumn& r) const;
  std::optional<ResolvedColumn> resolve_reporting(int k, const ColumnRef& ref);
  void report(int step, DiagClass cls, std::string message);

  const QplPlan* plan_;
  const SchemaCatalog* schema_;
  std::vector<std::vector<ColumnInfo>> scan_columns_;  // per step, Scan only
  std::vector<std::vector<ColumnInfo>> outputs_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<ColumnInfo> empty_;
};

}  // namespace qpl
