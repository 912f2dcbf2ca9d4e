#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpl/database.hpp"
#include "qpl/value.hpp"

namespace qpl {

/// SQL features the compiler may rely on.
struct Dialect {
  std::string name;
  bool limit = true;             // `ORDER BY ... LIMIT k`; otherwise `SELECT TOP k`
  bool top_with_ties = false;    // `SELECT TOP k WITH TIES`
  bool window_functions = true;  // `RANK() OVER (...)`
  bool order_in_cte = true;      // ORDER BY allowed in a CTE body without a row limit

  bool operator==(const Dialect&) const = default;
};

Dialect dialect_sqlite();
Dialect dialect_sqlserver();
/// LIMIT only: no window functions and no WITH TIES.
Dialect dialect_minimal();
std::optional<Dialect> dialect_by_name(std::string_view name);

/// Rows returned by a backend. `ordered` is set when row order is significant.
struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  bool ordered = false;
};

/// A loaded database engine. Instances are single-consumer.
class DatabaseBackend {
 public:
  virtual ~DatabaseBackend() = default;

  virtual const Dialect& dialect() const = 0;
  /// Catalog of the loaded database.
  virtual const SchemaCatalog& schema() const = 0;
  /// Replaces the current content with `db`.
  virtual void load(const Database& db) = 0;
  /// Runs one statement. Engine failures throw BackendError.
  virtual ResultSet execute(const std::string& sql) = 0;
  virtual void close() = 0;
};

/// Opens a backend loaded with the database `db_id`.
using BackendFactory = std::function<std::unique_ptr<DatabaseBackend>(const std::string& db_id)>;

}  // namespace qpl
