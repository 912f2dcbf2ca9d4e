#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qpl {

enum class OpKind { Scan, Aggregate, Filter, Sort, TopSort, Join, Except, Intersect, Union };

std::string_view to_string(OpKind op);
/// Number of step inputs the operator takes (0, 1 or 2).
int arity(OpKind op);
inline bool is_binary(OpKind op) { return arity(op) == 2; }

/// `name` or `#step.name`.
struct ColumnRef {
  std::optional<int> step;
  std::string name;

  bool operator==(const ColumnRef&) const = default;
};

/// Literal as written. `text` holds the unescaped string contents for
/// strings and the lexeme for numbers.
struct Literal {
  enum class Kind { String, Integer, Decimal };
  Kind kind = Kind::String;
  std::string text;

  static Literal string(std::string s) { return {Kind::String, std::move(s)}; }
  static Literal integer(std::int64_t v) { return {Kind::Integer, std::to_string(v)}; }
  bool is_numeric() const { return kind != Kind::String; }

  bool operator==(const Literal&) const = default;
};

using Operand = std::variant<ColumnRef, Literal>;

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge, Like, NotLike, IsNull, IsNotNull };

std::string_view to_string(CompareOp op);
inline bool is_unary(CompareOp op) { return op == CompareOp::IsNull || op == CompareOp::IsNotNull; }

struct Comparison {
  Operand lhs;
  CompareOp op = CompareOp::Eq;
  std::optional<Operand> rhs;  // absent for IS [NOT] NULL

  bool operator==(const Comparison&) const = default;
};

enum class Connective { And, Or };

/// Comparisons combined left-associatively: ((c1 op2 c2) op3 c3) ...
/// The connective of the first term is ignored.
struct Predicate {
  struct Term {
    Connective connective = Connective::And;
    Comparison comparison;

    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;

  bool operator==(const Predicate&) const = default;
};

enum class AggFunc { Count, Sum, Avg, Min, Max };

std::string_view to_string(AggFunc f);

struct AggregateExpr {
  AggFunc func = AggFunc::Count;
  std::optional<std::string> argument;  // nullopt means `*`
  bool distinct = false;
  std::string alias;

  bool operator==(const AggregateExpr&) const = default;
};

using OutputExpr = std::variant<ColumnRef, AggregateExpr>;

enum class Direction { Asc, Desc };

struct OrderItem {
  std::string column;
  Direction direction = Direction::Asc;

  bool operator==(const OrderItem&) const = default;
};

struct QplNode {
  OpKind op = OpKind::Scan;
  std::vector<int> inputs;
  std::string table;                           // Scan
  std::optional<Predicate> predicate;
  std::optional<std::vector<std::string>> group_by;  // Aggregate
  std::vector<OrderItem> order_by;             // Sort, TopSort
  std::optional<std::int64_t> rows;            // TopSort
  std::optional<bool> with_ties;               // Sort, TopSort
  std::optional<bool> distinct;                // Scan, Filter, Join
  std::vector<OutputExpr> output;

  bool operator==(const QplNode&) const = default;
};

/// Name an output expression contributes before de-duplication.
std::string base_name(const OutputExpr& e);

}  // namespace qpl
