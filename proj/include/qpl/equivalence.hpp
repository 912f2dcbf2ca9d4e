#pragma once

#include "qpl/backend.hpp"

namespace qpl {

/// Trailing spaces are removed from text values.
ResultSet normalize(ResultSet rs);

/// Numbers are equal when exactly equal or within `tolerance` relative to the
/// larger magnitude; text compares after trimming trailing spaces.
bool cells_equivalent(const Value& a, const Value& b, double tolerance);

/// Positional comparison ignoring column names: as sequences when both sides
/// are ordered, as bags otherwise. Symmetric for every tolerance.
bool results_equivalent(const ResultSet& a, const ResultSet& b, double tolerance = 1e-6);

}  // namespace qpl
