#include "qpl/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qpl {

namespace {

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

bool rows_equivalent(const Row& a, const Row& b, double tolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!cells_equivalent(a[i], b[i], tolerance)) return false;
  }
  return true;
}

bool row_less(const Row& a, const Row& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    auto c = compare_values(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

// Kuhn's augmenting-path matching; rows are nodes, equivalence is the edge set.
bool perfect_matching(const std::vector<Row>& a, const std::vector<Row>& b, double tolerance) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rows_equivalent(a[i], b[j], tolerance)) adj[i].push_back(j);
    }
    if (adj[i].empty()) return false;
  }
  std::vector<std::size_t> match(n, n);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (match[j] == n || augment(match[j])) {
        match[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(n, 0);
    if (!augment(i)) return false;
  }
  return true;
}

// Above this size the quadratic matching fallback is skipped.
constexpr std::size_t kMatchingLimit = 2000;

}  // namespace

ResultSet normalize(ResultSet rs) {
  for (auto& row : rs.rows) {
    for (auto& v : row) {
      if (auto* s = std::get_if<std::string>(&v)) s->erase(trim_right(*s).size());
    }
  }
  return rs;
}

bool cells_equivalent(const Value& a, const Value& b, double tolerance) {
  if (is_null(a) || is_null(b)) return is_null(a) && is_null(b);
  if (is_number(a) && is_number(b)) {
    if (values_equal(a, b)) return true;
    const double x = as_double(a), y = as_double(b);
    if (std::isnan(x) || std::isnan(y)) return false;
    return std::fabs(x - y) <= tolerance * std::max(std::fabs(x), std::fabs(y));
  }
  if (is_text(a) && is_text(b)) {
    return trim_right(std::get<std::string>(a)) == trim_right(std::get<std::string>(b));
  }
  return false;
}

bool results_equivalent(const ResultSet& a, const ResultSet& b, double tolerance) {
  if (a.columns.size() != b.columns.size() || a.rows.size() != b.rows.size()) return false;
  if (a.ordered && b.ordered) {
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      if (!rows_equivalent(a.rows[i], b.rows[i], tolerance)) return false;
    }
    return true;
  }
  auto x = normalize(a).rows;
  auto y = normalize(b).rows;
  std::sort(x.begin(), x.end(), row_less);
  std::sort(y.begin(), y.end(), row_less);
  bool paired = true;
  for (std::size_t i = 0; i < x.size() && paired; ++i) paired = rows_equivalent(x[i], y[i], tolerance);
  if (paired) return true;
  if (tolerance <= 0 || x.size() > kMatchingLimit) return false;
  // Near-equal numbers can sort differently on the two sides.
  return perfect_matching(x, y, tolerance);
}

}  // namespace qpl
