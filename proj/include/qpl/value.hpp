#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qpl/schema.hpp"

namespace qpl {

struct Null {
  bool operator==(const Null&) const = default;
};

/// A scalar cell. Integers and reals are distinct alternatives but compare
/// numerically (2 == 2.0).
using Value = std::variant<Null, std::int64_t, double, std::string>;

inline bool is_null(const Value& v) { return std::holds_alternative<Null>(v); }
inline bool is_number(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}
inline bool is_text(const Value& v) { return std::holds_alternative<std::string>(v); }
double as_double(const Value& v);

/// Total order used by SQL engines for mixed storage classes:
/// NULL < numbers (by value) < text (bytewise).
std::weak_ordering compare_values(const Value& a, const Value& b);
inline bool values_equal(const Value& a, const Value& b) {
  return compare_values(a, b) == std::weak_ordering::equivalent;
}

std::string to_display(const Value& v);
nlohmann::json to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);

using Row = std::vector<Value>;

struct RelColumn {
  std::string name;
  SimpleType type = SimpleType::Text;

  bool operator==(const RelColumn&) const = default;
};

/// A bag of rows under a named, typed header.
struct Relation {
  std::vector<RelColumn> columns;
  std::vector<Row> rows;

  std::size_t width() const { return columns.size(); }
  /// Index of `name` (case-insensitive) or -1.
  int index_of(std::string_view name) const;
  /// Throws EvalError if a row does not have exactly one value per column.
  void check_rectangular() const;
};

/// Bag equality with exact value comparison.
bool same_bag(const Relation& a, const Relation& b);

}  // namespace qpl
