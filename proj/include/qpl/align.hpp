#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "qpl/plan.hpp"
#include "qpl/schema.hpp"

namespace qpl {

using Ratio = boost::rational<std::int64_t>;

struct AlignmentReport {
  int qd_steps = 0;
  int qpl_steps = 0;
  std::set<std::string> qpl_scan_tables;  // schema spelling when known
  std::set<std::string> qd_scan_tables;
  Ratio iou{0};
  Ratio length_component{0};
  Ratio score{0};
};

/// Minimum token-set similarity for a QD phrase to name a table.
inline constexpr double kTableMatchThreshold = 0.8;

/// Step text without a leading `#k =` marker.
std::string_view qd_step_body(std::string_view step);

/// Whether a QD step reads a table: it begins with "Scan" or its first
/// clause contains the word "table".
bool is_scan_step(std::string_view step);

/// Table named by a scan step: the best match of the 1 to 3 words after
/// "table" (or after "Scan [the]") against the schema, if it reaches the threshold.
std::optional<std::string> qd_scan_table(std::string_view step, const SchemaCatalog& schema);

/// length_component = 1 - |qd - qpl| / max(qd, qpl); iou over scanned table
/// sets (1 when both are empty); score is their mean.
AlignmentReport align_qd_qpl(const std::vector<std::string>& qd, const QplPlan& plan,
                             const SchemaCatalog& schema);

nlohmann::json to_json(const AlignmentReport& r);

}  // namespace qpl
