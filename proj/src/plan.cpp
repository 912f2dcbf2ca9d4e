#include "qpl/plan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qpl/errors.hpp"
#include "qpl/ident.hpp"

namespace qpl {

namespace {

void check_node(const QplNode& n, int k) {
  const OpKind op = n.op;
  if (static_cast<int>(n.inputs.size()) != arity(op)) {
    throw StructureError(k, std::string(to_string(op)) + " takes " +
                                std::to_string(arity(op)) + " input(s)");
  }
  for (int in : n.inputs) {
    if (in < 1 || in >= k) {
      throw StructureError(k, "reference #" + std::to_string(in) +
                                  " does not point to an earlier step");
    }
  }
  auto forbid = [&](bool present, const char* clause) {
    if (present) throw StructureError(k, std::string(clause) + " not allowed on " +
                                             std::string(to_string(op)));
  };
  forbid(op != OpKind::Scan && !n.table.empty(), "Table");
  forbid(op != OpKind::Aggregate && n.group_by.has_value(), "GroupBy");
  forbid(op != OpKind::Sort && op != OpKind::TopSort && !n.order_by.empty(), "OrderBy");
  forbid(op != OpKind::Sort && op != OpKind::TopSort && n.with_ties.has_value(), "WithTies");
  forbid(op != OpKind::TopSort && n.rows.has_value(), "Rows");
  forbid(op != OpKind::Scan && op != OpKind::Filter && op != OpKind::Join &&
             n.distinct.has_value(),
         "Distinct");
  forbid((op == OpKind::Aggregate || op == OpKind::Sort || op == OpKind::TopSort ||
          op == OpKind::Union) &&
             n.predicate.has_value(),
         "Predicate");

  if (op == OpKind::Scan && n.table.empty()) throw StructureError(k, "Scan requires a table");
  if ((op == OpKind::Filter || op == OpKind::Except) && !n.predicate) {
    throw StructureError(k, std::string(to_string(op)) + " requires a predicate");
  }
  if (n.predicate && n.predicate->terms.empty()) {
    throw StructureError(k, "empty predicate");
  }
  if ((op == OpKind::Sort || op == OpKind::TopSort) && n.order_by.empty()) {
    throw StructureError(k, std::string(to_string(op)) + " requires OrderBy");
  }
  if (op == OpKind::TopSort && (!n.rows || *n.rows < 1)) {
    throw StructureError(k, "TopSort requires a positive Rows count");
  }
  if (n.group_by && n.group_by->empty()) throw StructureError(k, "empty GroupBy");
  if (n.output.empty()) throw StructureError(k, "empty Output");
  for (const auto& o : n.output) {
    const auto* c = std::get_if<ColumnRef>(&o);
    if (is_binary(op)) {
      if (!c || !c->step) {
        throw StructureError(k, "binary operators require #n.column outputs");
      }
    } else if (c && c->step) {
      throw StructureError(k, "qualified output on a unary operator");
    }
  }
}

int remap(const std::map<int, int>& m, int old) {
  auto it = m.find(old);
  return it == m.end() ? old : it->second;
}

void remap_operand(Operand& o, const std::map<int, int>& m) {
  if (auto* c = std::get_if<ColumnRef>(&o); c && c->step) c->step = remap(m, *c->step);
}

}  // namespace

QplPlan::QplPlan(std::vector<QplNode> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw StructureError(0, "a plan needs at least one step");
  for (int k = 1; k <= size(); ++k) check_node(steps_[static_cast<std::size_t>(k - 1)], k);
}

const QplNode& QplPlan::step(int k) const {
  if (k < 1 || k > size()) throw StructureError(k, "no such step");
  return steps_[static_cast<std::size_t>(k - 1)];
}

std::vector<int> QplPlan::reference_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(size() + 1), 0);
  for (const auto& n : steps_) {
    for (int in : n.inputs) ++counts[static_cast<std::size_t>(in)];
  }
  return counts;
}

std::vector<int> QplPlan::subtree(int k) const {
  std::set<int> seen;
  std::vector<int> stack{k};
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    if (!seen.insert(s).second) continue;
    for (int in : step(s).inputs) stack.push_back(in);
  }
  return {seen.begin(), seen.end()};
}

QplPlan QplPlan::extract(int k) const {
  const auto members = subtree(k);
  std::map<int, int> renumber;
  for (std::size_t i = 0; i < members.size(); ++i) {
    renumber[members[i]] = static_cast<int>(i + 1);
  }
  std::vector<QplNode> out;
  for (int s : members) {
    QplNode n = step(s);
    for (auto& in : n.inputs) in = remap(renumber, in);
    if (n.predicate) {
      for (auto& t : n.predicate->terms) {
        remap_operand(t.comparison.lhs, renumber);
        if (t.comparison.rhs) remap_operand(*t.comparison.rhs, renumber);
      }
    }
    for (auto& o : n.output) {
      if (auto* c = std::get_if<ColumnRef>(&o); c && c->step) c->step = remap(renumber, *c->step);
    }
    out.push_back(std::move(n));
  }
  return QplPlan(std::move(out));
}

int plan_root(const QplPlan& plan) {
  if (plan.empty()) throw StructureError(0, "empty plan has no root");
  const auto counts = plan.reference_counts();
  std::vector<int> roots;
  for (int k = 1; k <= plan.size(); ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) roots.push_back(k);
  }
  if (roots.size() != 1) {
    // The last step is never referenced, so the first root found is a dangling step.
    throw StructureError(roots.front(), "step is not consumed by any later step; plan has " +
                                            std::to_string(roots.size()) + " roots");
  }
  return roots.front();
}

void check_tree(const QplPlan& plan) {
  plan_root(plan);
  const auto counts = plan.reference_counts();
  for (int k = 1; k <= plan.size(); ++k) {
    if (counts[static_cast<std::size_t>(k)] > 1) {
      throw StructureError(k, "step is consumed by more than one step");
    }
  }
}

std::vector<std::string> output_names(const QplNode& node) {
  std::vector<std::string> names;
  std::set<std::string, ILess> used;
  for (const auto& o : node.output) {
    std::string base = base_name(o);
    std::string name = base;
    for (int suffix = 2; used.count(name); ++suffix) name = base + "_" + std::to_string(suffix);
    used.insert(name);
    names.push_back(std::move(name));
  }
  return names;
}

std::vector<std::string> output_arity(const QplPlan& plan, int step) {
  return output_names(plan.step(step));
}

}  // namespace qpl
