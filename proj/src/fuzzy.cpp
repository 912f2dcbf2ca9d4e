#include "qpl/fuzzy.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qpl/encode.hpp"

namespace qpl {

double indel_ratio(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const double lcs = static_cast<double>(prev[b.size()]);
  return 2.0 * lcs / static_cast<double>(a.size() + b.size());
}

namespace {

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& w : s) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::string concat(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}

}  // namespace

double token_set_ratio(std::string_view a, std::string_view b) {
  const auto wa = words(a);
  const auto wb = words(b);
  const std::set<std::string> sa(wa.begin(), wa.end()), sb(wb.begin(), wb.end());
  if (sa.empty() || sb.empty()) return sa.empty() && sb.empty() ? 1.0 : 0.0;

  std::set<std::string> common, only_a, only_b;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::inserter(common, common.end()));
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                      std::inserter(only_a, only_a.end()));
  std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(),
                      std::inserter(only_b, only_b.end()));

  const std::string sect = join(common);
  const std::string left = concat(sect, join(only_a));
  const std::string right = concat(sect, join(only_b));
  double best = indel_ratio(left, right);
  if (!sect.empty()) {
    best = std::max({best, indel_ratio(sect, left), indel_ratio(sect, right)});
  }
  return best;
}

}  // namespace qpl
