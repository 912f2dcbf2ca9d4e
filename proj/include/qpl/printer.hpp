#pragma once

#include <string>

#include <json.hpp>

#include "qpl/plan.hpp"

namespace qpl {

/// Canonical text: one `#k = ...` line per step, tokens separated by single
/// spaces. parse(pretty_print(p)) == p for every plan.
std::string pretty_print(const QplPlan& plan);
std::string pretty_print(const QplNode& node, int step);

std::string format_predicate(const Predicate& p);
std::string format_literal(const Literal& l);

/// Structured dump of the syntax tree.
nlohmann::json plan_to_json(const QplPlan& plan);

}  // namespace qpl
