#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qpl {

/// Base class of every error thrown by the toolchain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed schema document or catalog invariant violation.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Plan-level structural violation (step numbering, references, arity, root count).
class StructureError : public Error {
 public:
  StructureError(int step, const std::string& message)
      : Error("step #" + std::to_string(step) + ": " + message), step_(step) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected,
              const std::string& message)
      : Error(message), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Runtime failure inside the reference interpreter.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Failure reported by a database backend. `clause()` names the CTE clause
/// that failed when it could be isolated, empty otherwise.
class BackendError : public Error {
 public:
  BackendError(std::string clause, const std::string& message)
      : Error(clause.empty() ? message : clause + ": " + message),
        clause_(std::move(clause)) {}

  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

class UnsupportedDialectFeature : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class MalformedResponse : public Error {
 public:
  using Error::Error;
};

/// A malformed input file line (dataset, predictions, CSV).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qpl
