#pragma once

#include <string>
#include <vector>

#include "qpl/ast.hpp"

namespace qpl {

/// An ordered list of numbered steps. Construction checks the grammar-level
/// invariants: steps numbered 1..N, every reference points to an earlier
/// step, operator arity, and mandatory clauses. Tree shape (single root,
/// single consumer) is checked separately by plan_root() and the validator
/// so that malformed trees can still be represented and diagnosed.
class QplPlan {
 public:
  QplPlan() = default;
  explicit QplPlan(std::vector<QplNode> steps);

  /// Number of steps.
  int size() const noexcept { return static_cast<int>(steps_.size()); }
  bool empty() const noexcept { return steps_.empty(); }

  /// Node of step `k` (1-based).
  const QplNode& step(int k) const;
  const std::vector<QplNode>& steps() const noexcept { return steps_; }

  /// How many later steps reference each step; index 0 unused.
  std::vector<int> reference_counts() const;

  /// Steps of the sub-plan rooted at `k`, ascending.
  std::vector<int> subtree(int k) const;

  /// Re-numbered standalone plan consisting of the subtree rooted at `k`.
  QplPlan extract(int k) const;

  bool operator==(const QplPlan&) const = default;

 private:
  std::vector<QplNode> steps_;
};

/// The unique unreferenced step; StructureError when there are zero or several.
int plan_root(const QplPlan& plan);

/// Throws StructureError unless the reference graph is a single tree.
void check_tree(const QplPlan& plan);

/// Column names emitted by `step`, in output order. Aggregates contribute
/// their alias; a name already used (case-insensitively) gets `_2`, `_3`, ...
std::vector<std::string> output_arity(const QplPlan& plan, int step);
std::vector<std::string> output_names(const QplNode& node);

}  // namespace qpl
