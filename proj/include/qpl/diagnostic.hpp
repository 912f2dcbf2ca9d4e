#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace qpl {

/// Semantic error classes. The last two are advisory warnings.
enum class DiagClass {
  WrongTable,
  WrongColumn,
  WrongStructure,
  TypeMismatch,
  BadQualification,
  BadAggregate,
  BadJoinKey,
  UnknownValue,
};

enum class Severity { Error, Warning };

std::string_view to_string(DiagClass c);
std::optional<DiagClass> parse_diag_class(std::string_view s);
Severity severity_of(DiagClass c);
std::string_view to_string(Severity s);

struct Diagnostic {
  int step = 0;
  DiagClass cls = DiagClass::WrongStructure;
  std::string message;

  Severity severity() const { return severity_of(cls); }
  bool is_error() const { return severity() == Severity::Error; }

  bool operator==(const Diagnostic&) const = default;
};

/// `{ "step": int, "class": str, "severity": "error|warning", "message": str }`
nlohmann::json to_json(const Diagnostic& d);
Diagnostic diagnostic_from_json(const nlohmann::json& j);

}  // namespace qpl
