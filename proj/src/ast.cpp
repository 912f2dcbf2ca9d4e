#include "qpl/ast.hpp"

namespace qpl {

std::string_view to_string(OpKind op) {
  switch (op) {
    case OpKind::Scan: return "Scan";
    case OpKind::Aggregate: return "Aggregate";
    case OpKind::Filter: return "Filter";
    case OpKind::Sort: return "Sort";
    case OpKind::TopSort: return "TopSort";
    case OpKind::Join: return "Join";
    case OpKind::Except: return "Except";
    case OpKind::Intersect: return "Intersect";
    case OpKind::Union: return "Union";
  }
  return "?";
}

int arity(OpKind op) {
  switch (op) {
    case OpKind::Scan: return 0;
    case OpKind::Aggregate:
    case OpKind::Filter:
    case OpKind::Sort:
    case OpKind::TopSort: return 1;
    default: return 2;
  }
}

std::string_view to_string(CompareOp op) {
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
  return "?";
}

std::string_view to_string(AggFunc f) {
  switch (f) {
    case AggFunc::Count: return "COUNT";
    case AggFunc::Sum: return "SUM";
    case AggFunc::Avg: return "AVG";
    case AggFunc::Min: return "MIN";
    case AggFunc::Max: return "MAX";
  }
  return "?";
}

std::string base_name(const OutputExpr& e) {
  if (const auto* c = std::get_if<ColumnRef>(&e)) return c->name;
  return std::get<AggregateExpr>(e).alias;
}

}  // namespace qpl
