#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpl/plan.hpp"
#include "qpl/schema.hpp"

namespace qpl {

/// Result of checking a (possibly partial) program text.
struct ParseOutcome {
  enum class Status { Complete, Continuable, Rejected };

  Status status = Status::Continuable;
  std::optional<QplPlan> plan;        // set when Complete
  std::size_t position = 0;           // offending character offset when Rejected
  std::vector<std::string> expected;  // token classes acceptable at `position`
  std::string message;

  bool complete() const { return status == Status::Complete; }
  bool continuable() const { return status == Status::Continuable; }
  bool rejected() const { return status == Status::Rejected; }
};

std::string_view to_string(ParseOutcome::Status s);

/// Parses a whole program. Throws SyntaxError with the character offset of
/// the first offending token and the token classes expected there.
QplPlan parse(std::string_view text);

/// Incremental check for constrained decoding: Complete when `text` is a
/// program, Continuable when some suffix makes it one, Rejected otherwise.
ParseOutcome parse_prefix(std::string_view text);

/// As parse_prefix, additionally rejecting Scan table names that are not in
/// `schema` and unqualified Scan output columns that the scanned table lacks.
/// A name still being typed is rejected once no schema name starts with it.
ParseOutcome parse_prefix_schema_aware(std::string_view text, const SchemaCatalog& schema);

}  // namespace qpl
