#include "qpl/value.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpl/errors.hpp"
#include "qpl/ident.hpp"

namespace qpl {

double as_double(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw EvalError("value is not numeric: " + to_display(v));
}

namespace {
int rank(const Value& v) {
  if (is_null(v)) return 0;
  if (is_number(v)) return 1;
  return 2;
}
}  // namespace

std::weak_ordering compare_values(const Value& a, const Value& b) {
  const int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra <=> rb;
  if (ra == 0) return std::weak_ordering::equivalent;
  if (ra == 1) {
    const auto* ia = std::get_if<std::int64_t>(&a);
    const auto* ib = std::get_if<std::int64_t>(&b);
    if (ia && ib) return *ia <=> *ib;
    double x = as_double(a), y = as_double(b);
    if (x < y) return std::weak_ordering::less;
    if (x > y) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  const auto& sa = std::get<std::string>(a);
  const auto& sb = std::get<std::string>(b);
  int c = sa.compare(sb);
  return c < 0 ? std::weak_ordering::less
               : (c > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
}

std::string to_display(const Value& v) {
  if (is_null(v)) return "NULL";
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isfinite(*d) && std::floor(*d) == *d && std::fabs(*d) < 1e15) {
      return std::to_string(static_cast<std::int64_t>(*d)) + ".0";
    }
    std::ostringstream os;
    os.precision(15);
    os << *d;
    return os.str();
  }
  return std::get<std::string>(v);
}

nlohmann::json to_json(const Value& v) {
  if (is_null(v)) return nullptr;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

Value value_from_json(const nlohmann::json& j) {
  if (j.is_null()) return Null{};
  if (j.is_boolean()) return std::int64_t{j.get<bool>() ? 1 : 0};
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw EvalError("non-scalar JSON value: " + j.dump());
}

int Relation::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (iequals(columns[i].name, name)) return static_cast<int>(i);
  }
  return -1;
}

void Relation::check_rectangular() const {
  for (const auto& r : rows) {
    if (r.size() != columns.size()) {
      throw EvalError("row has " + std::to_string(r.size()) + " values for " +
                      std::to_string(columns.size()) + " columns");
    }
  }
}

bool same_bag(const Relation& a, const Relation& b) {
  if (a.width() != b.width() || a.rows.size() != b.rows.size()) return false;
  auto less = [](const Row& x, const Row& y) {
    return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end(),
                                                  compare_values) < 0;
  };
  auto ra = a.rows, rb = b.rows;
  std::sort(ra.begin(), ra.end(), less);
  std::sort(rb.begin(), rb.end(), less);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    for (std::size_t j = 0; j < ra[i].size(); ++j) {
      if (!values_equal(ra[i][j], rb[i][j])) return false;
    }
  }
  return true;
}

}  // namespace qpl
