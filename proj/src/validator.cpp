#include "qpl/validator.hpp"

#include <algorithm>

#include "qpl/flow.hpp"

namespace qpl {

std::vector<Diagnostic> validate(const QplPlan& plan, const SchemaCatalog& schema) {
  return PlanFlow(plan, schema).diagnostics();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

}  // namespace qpl
