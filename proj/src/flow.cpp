#include "qpl/flow.hpp"

#include <algorithm>

#include "qpl/errors.hpp"
#include "qpl/ident.hpp"

namespace qpl {

std::string_view to_string(DiagClass c) {
  switch (c) {
    case DiagClass::WrongTable: return "WrongTable";
    case DiagClass::WrongColumn: return "WrongColumn";
    case DiagClass::WrongStructure: return "WrongStructure";
    case DiagClass::TypeMismatch: return "TypeMismatch";
    case DiagClass::BadQualification: return "BadQualification";
    case DiagClass::BadAggregate: return "BadAggregate";
    case DiagClass::BadJoinKey: return "BadJoinKey";
    case DiagClass::UnknownValue: return "UnknownValue";
  }
  return "?";
}

std::optional<DiagClass> parse_diag_class(std::string_view s) {
  for (auto c : {DiagClass::WrongTable, DiagClass::WrongColumn, DiagClass::WrongStructure,
                 DiagClass::TypeMismatch, DiagClass::BadQualification, DiagClass::BadAggregate,
                 DiagClass::BadJoinKey, DiagClass::UnknownValue}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

Severity severity_of(DiagClass c) {
  return c == DiagClass::BadJoinKey || c == DiagClass::UnknownValue ? Severity::Warning
                                                                    : Severity::Error;
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

nlohmann::json to_json(const Diagnostic& d) {
  return {{"step", d.step},
          {"class", std::string(to_string(d.cls))},
          {"severity", std::string(to_string(d.severity()))},
          {"message", d.message}};
}

Diagnostic diagnostic_from_json(const nlohmann::json& j) {
  auto cls = parse_diag_class(j.at("class").get<std::string>());
  if (!cls) throw Error("unknown diagnostic class " + j.at("class").dump());
  return Diagnostic{j.at("step").get<int>(), *cls, j.at("message").get<std::string>()};
}

namespace {

bool is_textual(SimpleType t) { return t == SimpleType::Text || t == SimpleType::Date; }

// Types that cannot be compared meaningfully. `other` is compatible with anything.
bool incompatible(SimpleType a, SimpleType b) {
  return (a == SimpleType::Number && is_textual(b)) || (b == SimpleType::Number && is_textual(a));
}

std::string ref_text(const ColumnRef& r) {
  return r.step ? "#" + std::to_string(*r.step) + "." + r.name : r.name;
}

}  // namespace

PlanFlow::PlanFlow(const QplPlan& plan, const SchemaCatalog& schema)
    : plan_(&plan), schema_(&schema) {
  const auto n = static_cast<std::size_t>(plan.size() + 1);
  scan_columns_.resize(n);
  outputs_.resize(n);
  check_structure();
  for (int k = 1; k <= plan.size(); ++k) analyze_step(k);
  std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.step < b.step; });
}

bool PlanFlow::has_errors() const {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

const std::vector<ColumnInfo>& PlanFlow::outputs(int step) const {
  return outputs_.at(static_cast<std::size_t>(step));
}

const std::vector<ColumnInfo>& PlanFlow::source(int step, int slot) const {
  const auto& node = plan_->step(step);
  if (node.op == OpKind::Scan) return scan_columns_.at(static_cast<std::size_t>(step));
  if (slot < 0 || slot >= static_cast<int>(node.inputs.size())) return empty_;
  return outputs(node.inputs[static_cast<std::size_t>(slot)]);
}

const ColumnInfo* PlanFlow::column(int step, const ResolvedColumn& r) const {
  const auto& cols = source(step, r.slot);
  if (r.index < 0 || r.index >= static_cast<int>(cols.size())) return nullptr;
  return &cols[static_cast<std::size_t>(r.index)];
}

std::optional<ResolvedColumn> PlanFlow::resolve(int step, const ColumnRef& ref) const {
  const auto& node = plan_->step(step);
  int slot = 0;
  if (is_binary(node.op)) {
    if (!ref.step) return std::nullopt;
    auto it = std::find(node.inputs.begin(), node.inputs.end(), *ref.step);
    if (it == node.inputs.end()) return std::nullopt;
    slot = static_cast<int>(it - node.inputs.begin());
  } else if (ref.step) {
    return std::nullopt;
  }
  const auto& cols = source(step, slot);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (iequals(cols[i].name, ref.name)) return ResolvedColumn{slot, static_cast<int>(i)};
  }
  return std::nullopt;
}

std::optional<ResolvedColumn> PlanFlow::resolve_output(int step, std::size_t i) const {
  const auto& node = plan_->step(step);
  const auto* c = std::get_if<ColumnRef>(&node.output.at(i));
  if (!c) return std::nullopt;
  return resolve(step, *c);
}

void PlanFlow::report(int step, DiagClass cls, std::string message) {
  diagnostics_.push_back(Diagnostic{step, cls, std::move(message)});
}

std::optional<ResolvedColumn> PlanFlow::resolve_reporting(int k, const ColumnRef& ref) {
  const auto& node = plan_->step(k);
  if (is_binary(node.op)) {
    if (!ref.step) {
      report(k, DiagClass::BadQualification,
             "column " + ref.name + " must be qualified as #n." + ref.name + " in " +
                 std::string(to_string(node.op)));
      return std::nullopt;
    }
    if (std::find(node.inputs.begin(), node.inputs.end(), *ref.step) == node.inputs.end()) {
      report(k, DiagClass::BadQualification,
             ref_text(ref) + " does not name an input of this step");
      return std::nullopt;
    }
  } else if (ref.step) {
    report(k, DiagClass::BadQualification,
           ref_text(ref) + " is qualified but " + std::string(to_string(node.op)) +
               " takes unqualified columns");
    return std::nullopt;
  }
  auto r = resolve(k, ref);
  if (!r) {
    if (node.op == OpKind::Scan) {
      // An unknown table was already reported; do not cascade.
      if (schema_->find_table(node.table)) {
        report(k, DiagClass::WrongColumn,
               "table " + node.table + " has no column " + ref.name);
      }
    } else {
      int src = ref.step ? *ref.step : node.inputs.front();
      report(k, DiagClass::WrongColumn,
             "step #" + std::to_string(src) + " does not output " + ref.name);
    }
  }
  return r;
}

void PlanFlow::check_structure() {
  const auto counts = plan_->reference_counts();
  const int n = plan_->size();
  for (int k = 1; k < n; ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) {
      report(k, DiagClass::WrongStructure,
             "step #" + std::to_string(k) + " is not consumed by any later step; "
             "the plan is not a connected tree");
    }
  }
  for (int k = 1; k <= n; ++k) {
    if (counts[static_cast<std::size_t>(k)] > 1) {
      report(k, DiagClass::WrongStructure,
             "step #" + std::to_string(k) + " is consumed " +
                 std::to_string(counts[static_cast<std::size_t>(k)]) +
                 " times; a plan is a tree");
    }
  }
}

void PlanFlow::analyze_step(int k) {
  const auto& node = plan_->step(k);
  const auto names = output_names(node);
  auto& out = outputs_[static_cast<std::size_t>(k)];

  if (node.op == OpKind::Scan) {
    auto& cols = scan_columns_[static_cast<std::size_t>(k)];
    if (const TableDef* t = schema_->find_table(node.table)) {
      for (const auto& c : t->columns) cols.push_back(ColumnInfo{c.name, c.type, t->name, c.name});
    } else {
      report(k, DiagClass::WrongTable, "table " + node.table + " is not in schema " +
                                           schema_->schema_id());
    }
  }

  if (node.predicate) check_predicate(k, *node.predicate);

  if (node.group_by) {
    for (const auto& g : *node.group_by) resolve_reporting(k, ColumnRef{std::nullopt, g});
  }
  for (const auto& o : node.order_by) resolve_reporting(k, ColumnRef{std::nullopt, o.column});

  if (node.op == OpKind::Union) {
    const auto& left = outputs(node.inputs[0]);
    const auto& right = outputs(node.inputs[1]);
    if (left.size() != right.size()) {
      report(k, DiagClass::WrongStructure,
             "Union inputs have " + std::to_string(left.size()) + " and " +
                 std::to_string(right.size()) + " columns");
    }
  }

  for (std::size_t i = 0; i < node.output.size(); ++i) {
    ColumnInfo info;
    info.name = names[i];
    if (const auto* ref = std::get_if<ColumnRef>(&node.output[i])) {
      auto r = resolve_reporting(k, *ref);
      if (r) {
        const ColumnInfo* src = column(k, *r);
        info.type = src->type;
        info.base_table = src->base_table;
        info.base_column = src->base_column;
        if (node.op == OpKind::Union) {
          // Positional alignment: the other input contributes the column at the same position.
          const auto& other = source(k, 1 - r->slot);
          if (r->index < static_cast<int>(other.size())) {
            const auto& o = other[static_cast<std::size_t>(r->index)];
            if (incompatible(o.type, info.type)) {
              report(k, DiagClass::TypeMismatch,
                     "Union aligns " + src->name + " with " + o.name + " of a different type");
            }
          }
          info.base_table.reset();
          info.base_column.reset();
        }
        if ((node.op == OpKind::Except || node.op == OpKind::Intersect) && r->slot != 0) {
          report(k, DiagClass::BadQualification,
                 std::string(to_string(node.op)) + " outputs rows of its first input; " +
                     ref_text(*ref) + " belongs to the second");
        }
      }
      if (node.op == OpKind::Aggregate) {
        bool grouped = node.group_by &&
                       std::any_of(node.group_by->begin(), node.group_by->end(),
                                   [&](const std::string& g) { return iequals(g, ref->name); });
        if (!grouped) {
          report(k, DiagClass::BadAggregate,
                 "output column " + ref->name + " is neither aggregated nor in GroupBy");
        }
      }
    } else {
      const auto& a = std::get<AggregateExpr>(node.output[i]);
      if (node.op != OpKind::Aggregate) {
        report(k, DiagClass::BadAggregate,
               "aggregate " + a.alias + " outside an Aggregate step");
      }
      info.type = SimpleType::Number;
      if (a.argument) {
        auto r = resolve_reporting(k, ColumnRef{std::nullopt, *a.argument});
        if (r) {
          const ColumnInfo* src = column(k, *r);
          if ((a.func == AggFunc::Sum || a.func == AggFunc::Avg) && is_textual(src->type)) {
            report(k, DiagClass::BadAggregate,
                   std::string(to_string(a.func)) + " over non-numeric column " + src->name);
          }
          if (a.func == AggFunc::Min || a.func == AggFunc::Max) info.type = src->type;
        }
      } else if (a.func != AggFunc::Count) {
        report(k, DiagClass::BadAggregate, std::string(to_string(a.func)) + "(*) is not defined");
      }
    }
    out.push_back(std::move(info));
  }
}

void PlanFlow::check_predicate(int k, const Predicate& p) {
  const auto& node = plan_->step(k);
  struct Side {
    std::optional<ResolvedColumn> col;
    const ColumnInfo* info = nullptr;
    const Literal* lit = nullptr;
  };
  auto side = [&](const Operand& o) {
    Side s;
    if (const auto* ref = std::get_if<ColumnRef>(&o)) {
      s.col = resolve_reporting(k, *ref);
      if (s.col) s.info = column(k, *s.col);
    } else {
      s.lit = &std::get<Literal>(o);
    }
    return s;
  };

  bool relates_both = false;
  bool uses_second = false, uses_first = false;
  bool key_pair = false, unknown_lineage = false, column_equality = false;

  for (const auto& term : p.terms) {
    const auto& c = term.comparison;
    Side lhs = side(c.lhs);
    Side rhs;
    if (c.rhs) rhs = side(*c.rhs);
    for (const Side* s : {&lhs, &rhs}) {
      if (s->col) (s->col->slot == 0 ? uses_first : uses_second) = true;
    }
    if (lhs.col && rhs.col && lhs.col->slot != rhs.col->slot) relates_both = true;

    if (c.op == CompareOp::Like || c.op == CompareOp::NotLike) {
      for (const Side* s : {&lhs, &rhs}) {
        if (s->info && s->info->type == SimpleType::Number) {
          report(k, DiagClass::TypeMismatch, "LIKE applied to number column " + s->info->name);
        }
        if (s->lit && s->lit->is_numeric()) {
          report(k, DiagClass::TypeMismatch, "LIKE pattern must be a string literal");
        }
      }
      continue;
    }
    if (is_unary(c.op)) continue;

    if (lhs.info && rhs.info && incompatible(lhs.info->type, rhs.info->type)) {
      report(k, DiagClass::TypeMismatch,
             "comparing " + std::string(to_string(lhs.info->type)) + " column " +
                 lhs.info->name + " with " + std::string(to_string(rhs.info->type)) +
                 " column " + rhs.info->name);
    }
    for (auto [col, lit] : {std::pair{&lhs, &rhs}, std::pair{&rhs, &lhs}}) {
      if (!col->info || !lit->lit) continue;
      const bool numeric = lit->lit->is_numeric();
      if ((col->info->type == SimpleType::Number && !numeric) ||
          (is_textual(col->info->type) && numeric)) {
        report(k, DiagClass::TypeMismatch,
               std::string(to_string(col->info->type)) + " column " + col->info->name +
                   " compared with " + (numeric ? "number" : "string") + " literal " +
                   lit->lit->text);
      }
      if (!numeric && (c.op == CompareOp::Eq || c.op == CompareOp::Ne) &&
          col->info->base_table && col->info->base_column) {
        const TableDef* t = schema_->find_table(*col->info->base_table);
        const ColumnDef* cd = t ? t->find_column(*col->info->base_column) : nullptr;
        if (cd && cd->sampled_values && !cd->sampled_values->empty() &&
            std::none_of(cd->sampled_values->begin(), cd->sampled_values->end(),
                         [&](const std::string& v) { return iequals(v, lit->lit->text); })) {
          report(k, DiagClass::UnknownValue,
                 "'" + lit->lit->text + "' is not a known value of " + t->name + "." + cd->name);
        }
      }
    }

    if (node.op == OpKind::Join && c.op == CompareOp::Eq && lhs.info && rhs.info &&
        lhs.col->slot != rhs.col->slot) {
      column_equality = true;
      const ColumnInfo* a = lhs.info;
      const ColumnInfo* b = rhs.info;
      if (!a->base_table || !b->base_table) {
        unknown_lineage = true;
        continue;
      }
      auto is_fk = [&](const ColumnInfo* from, const ColumnInfo* to) {
        const TableDef* t = schema_->find_table(*from->base_table);
        if (!t) return false;
        return std::any_of(t->foreign_keys.begin(), t->foreign_keys.end(),
                           [&](const ForeignKey& fk) {
                             return iequals(fk.column, *from->base_column) &&
                                    iequals(fk.ref_table, *to->base_table) &&
                                    iequals(fk.ref_column, *to->base_column);
                           });
      };
      const bool same_column =
          iequals(*a->base_table, *b->base_table) && iequals(*a->base_column, *b->base_column);
      if (same_column || is_fk(a, b) || is_fk(b, a)) key_pair = true;
    }
  }

  if (is_binary(node.op) && !relates_both) {
    report(k, DiagClass::BadJoinKey,
           "predicate does not relate the two inputs of " + std::string(to_string(node.op)));
  } else if (node.op == OpKind::Join && column_equality && !key_pair && !unknown_lineage) {
    report(k, DiagClass::BadJoinKey, "join condition is not over a declared primary/foreign key pair");
  }
}

}  // namespace qpl
