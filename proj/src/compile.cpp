#include "qpl/compile.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "qpl/equivalence.hpp"
#include "qpl/errors.hpp"
#include "qpl/flow.hpp"
#include "qpl/ident.hpp"
#include "qpl/printer.hpp"

namespace qpl {

namespace {

constexpr std::array<std::string_view, 72> kReserved = {
    "ADD",       "ALL",        "ALTER",      "AND",       "AS",          "ASC",
    "BETWEEN",   "BY",         "CASE",       "CAST",      "CHECK",       "COLLATE",
    "COLUMN",    "CONSTRAINT", "CREATE",     "CROSS",     "CURRENT",     "DEFAULT",
    "DELETE",    "DESC",       "DISTINCT",   "DROP",      "ELSE",        "END",
    "ESCAPE",    "EXCEPT",     "EXISTS",     "FILTER",    "FOREIGN",     "FROM",
    "FULL",      "GLOB",       "GROUP",      "HAVING",    "IN",          "INDEX",
    "INNER",     "INSERT",     "INTERSECT",  "INTO",      "IS",          "ISNULL",
    "JOIN",      "KEY",        "LEFT",       "LIKE",      "LIMIT",       "NATURAL",
    "NOT",       "NOTNULL",    "NULL",       "OFFSET",    "ON",          "OR",
    "ORDER",     "OUTER",      "OVER",       "PRIMARY",   "REFERENCES",  "RIGHT",
    "SELECT",    "SET",        "TABLE",      "THEN",      "TO",          "TOP",
    "UNION",     "UNIQUE",     "UPDATE",     "VALUES",    "WHEN",        "WHERE",
};

std::string cte_name(const QplPlan& plan, int step) {
  return std::string(to_string(plan.step(step).op)) + "_" + std::to_string(step);
}

std::string sql_literal(const Literal& l) { return format_literal(l); }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view compare_sql(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "<>";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    case CompareOp::Like: return "LIKE";
    case CompareOp::NotLike: return "NOT LIKE";
    case CompareOp::IsNull: return "IS NULL";
    case CompareOp::IsNotNull: return "IS NOT NULL";
  }
  return "=";
}

bool is_textual(SimpleType t) { return t != SimpleType::Number; }

class Compiler {
 public:
  Compiler(const QplPlan& plan, const SchemaCatalog& schema, const Dialect& dialect)
      : plan_(plan), flow_(plan, schema), dialect_(dialect) {}

  CteProgram run() {
    if (flow_.has_errors()) {
      for (const auto& d : flow_.diagnostics()) {
        if (d.is_error()) {
          throw Error("cannot compile plan with semantic errors: step #" + std::to_string(d.step) +
                      ": " + d.message);
        }
      }
    }
    root_ = plan_root(plan_);
    CteProgram program;
    for (int k = 1; k <= plan_.size(); ++k) {
      program.clauses.push_back(CteClause{cte_name(plan_, k), body(k)});
    }
    program.final_select = "SELECT * FROM " + cte_name(plan_, root_);
    const QplNode& root = plan_.step(root_);
    if (root.op == OpKind::Sort || root.op == OpKind::TopSort) {
      program.ordered = true;
      if (!hidden_keys_.empty()) {
        program.final_select = "SELECT " + join(quoted_names(root), ", ") + " FROM " +
                               cte_name(plan_, root_);
      }
      program.final_select += " ORDER BY " + join(root_order_, ", ");
    }
    return program;
  }

 private:
  // Column reference as seen from inside step k's SELECT.
  std::string ref(int k, const ColumnRef& c) const {
    const QplNode& node = plan_.step(k);
    if (is_binary(node.op)) return cte_name(plan_, *c.step) + "." + quote_identifier(c.name);
    return quote_identifier(c.name);
  }

  std::string operand(int k, const Operand& o) const {
    if (const auto* c = std::get_if<ColumnRef>(&o)) return ref(k, *c);
    return sql_literal(std::get<Literal>(o));
  }

  std::string comparison(int k, const Comparison& c) const {
    std::string out = operand(k, c.lhs) + " " + std::string(compare_sql(c.op));
    if (c.rhs) out += " " + operand(k, *c.rhs);
    return out;
  }

  std::string predicate(int k, const Predicate& p) const {
    std::string out;
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
      const std::string c = comparison(k, p.terms[i].comparison);
      if (i == 0) {
        out = p.terms.size() == 1 ? c : "(" + c + ")";
      } else {
        out = "(" + out + (p.terms[i].connective == Connective::And ? " AND " : " OR ") + "(" + c +
              "))";
      }
    }
    return out;
  }

  std::vector<std::string> quoted_names(const QplNode& node) const {
    std::vector<std::string> out;
    for (const auto& n : output_names(node)) out.push_back(quote_identifier(n));
    return out;
  }

  std::string input_name(int k, std::size_t slot) const {
    return cte_name(plan_, plan_.step(k).inputs.at(slot));
  }

  // Select list of a non-aggregate step.
  std::vector<std::string> select_list(int k) const {
    const QplNode& node = plan_.step(k);
    const auto names = output_names(node);
    std::vector<std::string> items;
    for (std::size_t i = 0; i < node.output.size(); ++i) {
      std::string expr;
      std::string plain;
      if (const auto* c = std::get_if<ColumnRef>(&node.output[i])) {
        expr = ref(k, *c);
        plain = c->name;
      } else {
        const auto& a = std::get<AggregateExpr>(node.output[i]);
        expr = std::string(to_string(a.func)) + "(" + (a.distinct ? "DISTINCT " : "") +
               (a.argument ? quote_identifier(*a.argument) : "*") + ")";
      }
      if (is_binary(node.op) || plain != names[i]) expr += " AS " + quote_identifier(names[i]);
      items.push_back(std::move(expr));
    }
    return items;
  }

  SimpleType input_type(int k, const std::string& column) const {
    auto r = flow_.resolve(k, ColumnRef{std::nullopt, column});
    if (!r) return SimpleType::Text;
    return flow_.source(k, r->slot).at(static_cast<std::size_t>(r->index)).type;
  }

  static std::string key_expr(const std::string& column_sql, SimpleType type, Direction dir) {
    std::string e = is_textual(type) ? "LOWER(" + column_sql + ")" : column_sql;
    return dir == Direction::Desc ? e + " DESC" : e;
  }

  std::vector<std::string> order_keys(int k) const {
    std::vector<std::string> keys;
    for (const auto& o : plan_.step(k).order_by) {
      keys.push_back(key_expr(quote_identifier(o.column), input_type(k, o.column), o.direction));
    }
    return keys;
  }

  // For an ordered root: the final ORDER BY, adding hidden key columns to `items`
  // for keys that are not outputs.
  void root_ordering(int k, std::vector<std::string>& items) {
    const QplNode& node = plan_.step(k);
    const auto names = output_names(node);
    for (const auto& o : node.order_by) {
      const SimpleType type = input_type(k, o.column);
      std::optional<std::string> out_name;
      for (std::size_t i = 0; i < node.output.size() && !out_name; ++i) {
        const auto* c = std::get_if<ColumnRef>(&node.output[i]);
        if (c && iequals(c->name, o.column)) out_name = names[i];
      }
      if (!out_name) {
        std::string hidden = "__k" + std::to_string(hidden_keys_.size() + 1);
        hidden_keys_.push_back(hidden);
        items.push_back(quote_identifier(o.column) + " AS " + hidden);
        out_name = hidden;
      }
      root_order_.push_back(key_expr(quote_identifier(*out_name), type, o.direction));
    }
  }

  std::string body(int k) {
    const QplNode& node = plan_.step(k);
    const std::string distinct = node.distinct.value_or(false) ? "DISTINCT " : "";
    switch (node.op) {
      case OpKind::Scan: {
        std::string sql = "SELECT " + distinct + join(select_list(k), ", ") + " FROM " +
                          quote_identifier(node.table);
        if (node.predicate) sql += "\n    WHERE " + predicate(k, *node.predicate);
        return sql;
      }
      case OpKind::Filter: {
        std::string sql = "SELECT " + distinct + join(select_list(k), ", ") + "\n    FROM " +
                          input_name(k, 0);
        if (node.predicate) sql += "\n    WHERE " + predicate(k, *node.predicate);
        return sql;
      }
      case OpKind::Aggregate: {
        std::string sql = "SELECT " + join(select_list(k), ", ") + "\n    FROM " + input_name(k, 0);
        if (node.group_by && !node.group_by->empty()) {
          std::vector<std::string> g;
          for (const auto& c : *node.group_by) g.push_back(quote_identifier(c));
          sql += "\n    GROUP BY " + join(g, ", ");
        }
        return sql;
      }
      case OpKind::Sort:
        return sort_body(k);
      case OpKind::TopSort:
        return topsort_body(k);
      case OpKind::Join: {
        std::string sql = "SELECT " + distinct + join(select_list(k), ", ") + "\n    FROM " +
                          input_name(k, 0);
        if (node.predicate) {
          sql += " JOIN " + input_name(k, 1) + " ON " + predicate(k, *node.predicate);
        } else {
          sql += " CROSS JOIN " + input_name(k, 1);
        }
        return sql;
      }
      case OpKind::Except:
      case OpKind::Intersect:
        return semi_body(k);
      case OpKind::Union:
        return union_body(k);
    }
    throw Error("unknown operator");
  }

  std::string sort_body(int k) {
    const QplNode& node = plan_.step(k);
    auto items = select_list(k);
    if (k == root_) {
      root_ordering(k, items);
      return "SELECT " + join(items, ", ") + "\n    FROM " + input_name(k, 0);
    }
    std::string sql = "SELECT " + join(items, ", ") + "\n    FROM " + input_name(k, 0);
    // Row order of a CTE is not observable; kept for readability where allowed.
    if (dialect_.order_in_cte && !node.order_by.empty()) {
      sql += "\n    ORDER BY " + join(order_keys(k), ", ");
    }
    return sql;
  }

  std::string topsort_body(int k) {
    const QplNode& node = plan_.step(k);
    auto items = select_list(k);
    if (k == root_) root_ordering(k, items);
    const std::string rows = std::to_string(node.rows.value_or(0));
    const std::string keys = join(order_keys(k), ", ");
    const std::string from = input_name(k, 0);
    if (node.with_ties.value_or(false)) {
      if (dialect_.top_with_ties) {
        return "SELECT TOP " + rows + " WITH TIES " + join(items, ", ") + "\n    FROM " + from +
               "\n    ORDER BY " + keys;
      }
      if (dialect_.window_functions) {
        return "SELECT " + join(items, ", ") + "\n    FROM (SELECT *, RANK() OVER (ORDER BY " +
               keys + ") AS __rnk FROM " + from + ") AS __ranked\n    WHERE __rnk <= " + rows;
      }
      throw UnsupportedDialectFeature("dialect " + dialect_.name +
                                      " supports neither WITH TIES nor window functions (step #" +
                                      std::to_string(k) + ")");
    }
    if (dialect_.limit) {
      return "SELECT " + join(items, ", ") + "\n    FROM " + from + "\n    ORDER BY " + keys +
             "\n    LIMIT " + rows;
    }
    return "SELECT TOP " + rows + " " + join(items, ", ") + "\n    FROM " + from +
           "\n    ORDER BY " + keys;
  }

  std::string semi_body(int k) {
    const QplNode& node = plan_.step(k);
    const std::string left = input_name(k, 0);
    const std::string right = input_name(k, 1);
    std::string cond;
    if (node.predicate) {
      cond = predicate(k, *node.predicate);
    } else {
      std::vector<std::string> eq;
      for (const auto& c : flow_.outputs(node.inputs[0])) {
        const auto& rcols = flow_.outputs(node.inputs[1]);
        if (std::none_of(rcols.begin(), rcols.end(),
                         [&](const ColumnInfo& r) { return iequals(r.name, c.name); })) {
          continue;
        }
        eq.push_back(left + "." + quote_identifier(c.name) + " = " + right + "." +
                     quote_identifier(c.name));
      }
      cond = join(eq, " AND ");
    }
    std::string sub = "SELECT 1 FROM " + right;
    if (!cond.empty()) sub += " WHERE " + cond;
    return "SELECT " + join(select_list(k), ", ") + "\n    FROM " + left + "\n    WHERE " +
           (node.op == OpKind::Except ? "NOT EXISTS (" : "EXISTS (") + sub + ")";
  }

  std::string union_body(int k) {
    const QplNode& node = plan_.step(k);
    const auto names = output_names(node);
    std::vector<std::string> left_items, right_items;
    for (std::size_t i = 0; i < node.output.size(); ++i) {
      auto r = flow_.resolve_output(k, i);
      if (!r) throw Error("unresolved Union output at step #" + std::to_string(k));
      const auto idx = static_cast<std::size_t>(r->index);
      const auto& lcol = flow_.source(k, 0).at(idx);
      const auto& rcol = flow_.source(k, 1).at(idx);
      left_items.push_back(input_name(k, 0) + "." + quote_identifier(lcol.name) + " AS " +
                           quote_identifier(names[i]));
      right_items.push_back(input_name(k, 1) + "." + quote_identifier(rcol.name));
    }
    return "SELECT " + join(left_items, ", ") + " FROM " + input_name(k, 0) +
           "\n    UNION ALL\n    SELECT " + join(right_items, ", ") + " FROM " + input_name(k, 1);
  }

  const QplPlan& plan_;
  PlanFlow flow_;
  Dialect dialect_;
  int root_ = 0;
  std::vector<std::string> hidden_keys_;
  std::vector<std::string> root_order_;
};

std::string clause_sql(const CteClause& c) { return c.name + " AS (\n    " + c.sql + "\n)"; }

}  // namespace

std::string quote_identifier(std::string_view name) {
  const bool reserved = std::any_of(kReserved.begin(), kReserved.end(),
                                    [&](std::string_view k) { return iequals(k, name); });
  if (is_plain_identifier(name) && !reserved) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CteProgram::to_sql() const {
  std::vector<std::string> parts;
  for (const auto& c : clauses) parts.push_back(clause_sql(c));
  return "WITH\n" + join(parts, ",\n") + "\n" + final_select;
}

std::string CteProgram::prefix_sql(std::size_t i) const {
  std::vector<std::string> parts;
  for (std::size_t j = 0; j <= i && j < clauses.size(); ++j) parts.push_back(clause_sql(clauses[j]));
  return "WITH\n" + join(parts, ",\n") + "\nSELECT * FROM " + clauses.at(i).name;
}

CteProgram compile_to_cte(const QplPlan& plan, const SchemaCatalog& schema,
                          const Dialect& dialect) {
  return Compiler(plan, schema, dialect).run();
}

ResultSet execute(const CteProgram& program, DatabaseBackend& backend) {
  ResultSet rs;
  try {
    rs = backend.execute(program.to_sql());
  } catch (const BackendError& whole) {
    for (std::size_t i = 0; i < program.clauses.size(); ++i) {
      try {
        backend.execute(program.prefix_sql(i));
      } catch (const BackendError& e) {
        throw BackendError(program.clauses[i].name, e.what());
      }
    }
    throw BackendError("final", whole.what());
  }
  rs.ordered = program.ordered;
  return rs;
}

bool has_top_level_order_by(std::string_view sql) {
  int depth = 0;
  std::string prev;
  std::size_t i = 0;
  while (i < sql.size()) {
    const char c = sql[i];
    if (c == '\'' || c == '"' || c == '`' || c == '[') {
      const char close = c == '[' ? ']' : c;
      ++i;
      while (i < sql.size()) {
        if (sql[i] == close) {
          if (i + 1 < sql.size() && sql[i + 1] == close && close != ']') {
            i += 2;
            continue;
          }
          break;
        }
        ++i;
      }
      ++i;
      prev.clear();
      continue;
    }
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < sql.size() && (std::isalnum(static_cast<unsigned char>(sql[j])) || sql[j] == '_')) ++j;
      std::string word = to_lower(sql.substr(i, j - i));
      if (depth == 0 && prev == "order" && word == "by") return true;
      prev = std::move(word);
      i = j;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) prev.clear();
    ++i;
  }
  return false;
}

MatchOutcome execution_match(const std::string& gold_sql, const QplPlan& predicted,
                             DatabaseBackend& backend, const SchemaCatalog& schema,
                             double tolerance) {
  MatchOutcome out;
  try {
    out.gold = backend.execute(gold_sql);
    out.gold.ordered = has_top_level_order_by(gold_sql);
  } catch (const Error& e) {
    out.error = std::string("gold: ") + e.what();
    return out;
  }
  out.empty_gold = out.gold.rows.empty();
  try {
    out.predicted = execute(compile_to_cte(predicted, schema, backend.dialect()), backend);
  } catch (const Error& e) {
    out.error = e.what();
    return out;
  }
  out.match = results_equivalent(out.gold, out.predicted, tolerance);
  return out;
}

}  // namespace qpl
