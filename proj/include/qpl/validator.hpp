#pragma once

#include <vector>

#include "qpl/diagnostic.hpp"
#include "qpl/plan.hpp"
#include "qpl/schema.hpp"

namespace qpl {

/// Semantic diagnostics of `plan` against `schema`, ordered by step. Empty
/// iff the plan is well-formed; warnings alone keep a plan executable.
std::vector<Diagnostic> validate(const QplPlan& plan, const SchemaCatalog& schema);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace qpl
