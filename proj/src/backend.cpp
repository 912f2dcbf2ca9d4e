#include "qpl/backend.hpp"

namespace qpl {

Dialect dialect_sqlite() { return Dialect{"sqlite", true, false, true, true}; }

Dialect dialect_sqlserver() { return Dialect{"sqlserver", false, true, true, false}; }

Dialect dialect_minimal() { return Dialect{"minimal", true, false, false, true}; }

std::optional<Dialect> dialect_by_name(std::string_view name) {
  for (auto d : {dialect_sqlite(), dialect_sqlserver(), dialect_minimal()}) {
    if (d.name == name) return d;
  }
  return std::nullopt;
}

}  // namespace qpl
