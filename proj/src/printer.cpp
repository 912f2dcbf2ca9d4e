#include "qpl/printer.hpp"

#include <sstream>

namespace qpl {

std::string format_literal(const Literal& l) {
  if (l.kind != Literal::Kind::String) return l.text;
  std::string out = "'";
  for (char c : l.text) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

namespace {

std::string format_column(const ColumnRef& c) {
  if (c.step) return "#" + std::to_string(*c.step) + "." + c.name;
  return c.name;
}

std::string format_operand(const Operand& o) {
  if (const auto* c = std::get_if<ColumnRef>(&o)) return format_column(*c);
  return format_literal(std::get<Literal>(o));
}

std::string format_output(const OutputExpr& e) {
  if (const auto* c = std::get_if<ColumnRef>(&e)) return format_column(*c);
  const auto& a = std::get<AggregateExpr>(e);
  std::string out(to_string(a.func));
  out += "(";
  if (a.distinct) out += "DISTINCT ";
  out += a.argument ? *a.argument : "*";
  out += ") AS " + a.alias;
  return out;
}

template <typename T, typename F>
std::string bracket_list(const std::vector<T>& items, F&& fmt) {
  std::string out = "[ ";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += " , ";
    out += fmt(items[i]);
  }
  return out + " ]";
}

std::string flag(bool v) { return v ? "[ true ]" : "[ false ]"; }

}  // namespace

std::string format_predicate(const Predicate& p) {
  std::string out;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& t = p.terms[i];
    if (i) out += t.connective == Connective::And ? " AND " : " OR ";
    const auto& c = t.comparison;
    out += format_operand(c.lhs);
    out += " ";
    out += to_string(c.op);
    if (c.rhs) out += " " + format_operand(*c.rhs);
  }
  return out;
}

std::string pretty_print(const QplNode& n, int step) {
  std::string out = "#" + std::to_string(step) + " = " + std::string(to_string(n.op));
  if (n.op == OpKind::Scan) {
    out += " Table [ " + n.table + " ]";
  } else {
    out += " " + bracket_list(n.inputs, [](int k) { return "#" + std::to_string(k); });
  }
  if (n.rows) out += " Rows [ " + std::to_string(*n.rows) + " ]";
  if (n.predicate) out += " Predicate [ " + format_predicate(*n.predicate) + " ]";
  if (n.group_by) {
    out += " GroupBy " + bracket_list(*n.group_by, [](const std::string& s) { return s; });
  }
  if (!n.order_by.empty()) {
    out += " OrderBy " + bracket_list(n.order_by, [](const OrderItem& o) {
             return o.column + (o.direction == Direction::Asc ? " ASC" : " DESC");
           });
  }
  if (n.with_ties) out += " WithTies " + flag(*n.with_ties);
  if (n.distinct) out += " Distinct " + flag(*n.distinct);
  out += " Output " + bracket_list(n.output, format_output);
  return out;
}

std::string pretty_print(const QplPlan& plan) {
  std::string out;
  for (int k = 1; k <= plan.size(); ++k) {
    if (k > 1) out += "\n";
    out += pretty_print(plan.step(k), k);
  }
  return out;
}

namespace {

nlohmann::json operand_json(const Operand& o) {
  if (const auto* c = std::get_if<ColumnRef>(&o)) {
    nlohmann::json j = {{"column", c->name}};
    if (c->step) j["step"] = *c->step;
    return j;
  }
  const auto& l = std::get<Literal>(o);
  const char* kind = l.kind == Literal::Kind::String    ? "string"
                     : l.kind == Literal::Kind::Integer ? "integer"
                                                        : "decimal";
  return {{"literal", l.text}, {"kind", kind}};
}

}  // namespace

nlohmann::json plan_to_json(const QplPlan& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (int k = 1; k <= plan.size(); ++k) {
    const auto& n = plan.step(k);
    nlohmann::json j = {{"step", k}, {"op", std::string(to_string(n.op))}, {"inputs", n.inputs}};
    if (!n.table.empty()) j["table"] = n.table;
    if (n.predicate) {
      nlohmann::json terms = nlohmann::json::array();
      for (std::size_t i = 0; i < n.predicate->terms.size(); ++i) {
        const auto& t = n.predicate->terms[i];
        nlohmann::json jt = {{"lhs", operand_json(t.comparison.lhs)},
                             {"op", std::string(to_string(t.comparison.op))}};
        if (t.comparison.rhs) jt["rhs"] = operand_json(*t.comparison.rhs);
        if (i) jt["connective"] = t.connective == Connective::And ? "AND" : "OR";
        terms.push_back(std::move(jt));
      }
      j["predicate"] = std::move(terms);
    }
    if (n.group_by) j["group_by"] = *n.group_by;
    if (!n.order_by.empty()) {
      nlohmann::json items = nlohmann::json::array();
      for (const auto& o : n.order_by) {
        items.push_back({{"column", o.column},
                         {"direction", o.direction == Direction::Asc ? "ASC" : "DESC"}});
      }
      j["order_by"] = std::move(items);
    }
    if (n.rows) j["rows"] = *n.rows;
    if (n.with_ties) j["with_ties"] = *n.with_ties;
    if (n.distinct) j["distinct"] = *n.distinct;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& o : n.output) {
      if (const auto* c = std::get_if<ColumnRef>(&o)) {
        outs.push_back(operand_json(*c));
      } else {
        const auto& a = std::get<AggregateExpr>(o);
        nlohmann::json ja = {{"aggregate", std::string(to_string(a.func))},
                             {"argument", a.argument ? *a.argument : "*"},
                             {"alias", a.alias}};
        if (a.distinct) ja["distinct"] = true;
        outs.push_back(std::move(ja));
      }
    }
    j["output"] = std::move(outs);
    j["output_names"] = output_names(n);
    steps.push_back(std::move(j));
  }
  return {{"steps", std::move(steps)}, {"root", plan.size()}};
}

}  // namespace qpl
