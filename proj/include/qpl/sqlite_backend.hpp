#pragma once

#include <filesystem>

#include "qpl/backend.hpp"

struct sqlite3;

namespace qpl {

/// In-memory SQLite database. Number columns get NUMERIC affinity, all other
/// columns TEXT affinity.
class SqliteBackend final : public DatabaseBackend {
 public:
  SqliteBackend();
  explicit SqliteBackend(const Database& db);
  ~SqliteBackend() override;

  SqliteBackend(const SqliteBackend&) = delete;
  SqliteBackend& operator=(const SqliteBackend&) = delete;

  const Dialect& dialect() const override { return dialect_; }
  const SchemaCatalog& schema() const override { return schema_; }
  void load(const Database& db) override;
  ResultSet execute(const std::string& sql) override;
  void close() override;

 private:
  void exec(const std::string& sql);

  sqlite3* db_ = nullptr;
  Dialect dialect_ = dialect_sqlite();
  SchemaCatalog schema_;
};

/// Factory over the `<root>/<db_id>/` layout read by load_database().
BackendFactory sqlite_directory_factory(std::filesystem::path root);

}  // namespace qpl
