#pragma once

#include <map>
#include <vector>

#include "qpl/database.hpp"
#include "qpl/plan.hpp"
#include "qpl/value.hpp"

namespace qpl {

/// Result of the root step.
Relation eval_plan(const QplPlan& plan, const Database& db);

/// Relations of every step; index 0 is unused. Steps listed in `overrides`
/// are not evaluated and yield the supplied relation instead.
std::vector<Relation> eval_all(const QplPlan& plan, const Database& db,
                               const std::map<int, Relation>& overrides = {});

/// Evaluates a single node given the relations of its inputs, in input order.
Relation eval_node(const QplNode& node, const std::vector<const Relation*>& inputs,
                   const Database& db);

/// Sort key of a value: text is folded to ASCII lowercase.
Value sort_key(const Value& v);

/// SQL LIKE with `%` and `_`, ASCII case-insensitive, no escape character.
bool like_match(std::string_view text, std::string_view pattern);

Value literal_value(const Literal& l);

}  // namespace qpl
