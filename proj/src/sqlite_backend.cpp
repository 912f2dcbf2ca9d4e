#include "qpl/sqlite_backend.hpp"

#include <cctype>

#include <sqlite3.h>

#include "qpl/errors.hpp"

namespace qpl {

namespace {

std::string quote_name(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct Statement {
  sqlite3_stmt* stmt = nullptr;
  ~Statement() { sqlite3_finalize(stmt); }
};

}  // namespace

SqliteBackend::SqliteBackend() {
  if (sqlite3_open_v2(":memory:", &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_NOMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw BackendError("", "cannot open SQLite database: " + msg);
  }
}

SqliteBackend::SqliteBackend(const Database& db) : SqliteBackend() { load(db); }

SqliteBackend::~SqliteBackend() { close(); }

void SqliteBackend::close() {
  if (db_) sqlite3_close(db_);
  db_ = nullptr;
}

void SqliteBackend::exec(const std::string& sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw BackendError("", msg);
  }
}

void SqliteBackend::load(const Database& db) {
  if (!db_) throw BackendError("", "backend is closed");
  // Drop everything from a previous load.
  std::vector<std::string> existing;
  for (const auto& row : execute("SELECT name FROM sqlite_master WHERE type = 'table'").rows) {
    existing.push_back(std::get<std::string>(row.at(0)));
  }
  for (const auto& t : existing) exec("DROP TABLE " + quote_name(t));

  exec("BEGIN");
  try {
    for (const auto& t : db.schema.tables()) {
      std::string ddl = "CREATE TABLE " + quote_name(t.name) + " (";
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) ddl += ", ";
        ddl += quote_name(t.columns[i].name);
        ddl += t.columns[i].type == SimpleType::Number ? " NUMERIC" : " TEXT";
      }
      ddl += ")";
      exec(ddl);

      const Relation& rel = db.table(t.name);
      if (rel.rows.empty()) continue;
      std::string ins = "INSERT INTO " + quote_name(t.name) + " VALUES (";
      for (std::size_t i = 0; i < t.columns.size(); ++i) ins += i ? ", ?" : "?";
      ins += ")";
      Statement st;
      if (sqlite3_prepare_v2(db_, ins.c_str(), -1, &st.stmt, nullptr) != SQLITE_OK) {
        throw BackendError("", sqlite3_errmsg(db_));
      }
      for (const auto& row : rel.rows) {
        sqlite3_reset(st.stmt);
        for (std::size_t i = 0; i < row.size(); ++i) {
          const int idx = static_cast<int>(i + 1);
          const Value& v = row[i];
          if (is_null(v)) {
            sqlite3_bind_null(st.stmt, idx);
          } else if (const auto* n = std::get_if<std::int64_t>(&v)) {
            sqlite3_bind_int64(st.stmt, idx, *n);
          } else if (const auto* d = std::get_if<double>(&v)) {
            sqlite3_bind_double(st.stmt, idx, *d);
          } else {
            const auto& s = std::get<std::string>(v);
            sqlite3_bind_text(st.stmt, idx, s.data(), static_cast<int>(s.size()), SQLITE_TRANSIENT);
          }
        }
        if (sqlite3_step(st.stmt) != SQLITE_DONE) throw BackendError("", sqlite3_errmsg(db_));
      }
    }
    exec("COMMIT");
    schema_ = db.schema;
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
}

ResultSet SqliteBackend::execute(const std::string& sql) {
  if (!db_) throw BackendError("", "backend is closed");
  Statement st;
  const char* tail = nullptr;
  if (sqlite3_prepare_v2(db_, sql.c_str(), static_cast<int>(sql.size()), &st.stmt, &tail) !=
      SQLITE_OK) {
    throw BackendError("", sqlite3_errmsg(db_));
  }
  if (!st.stmt) throw BackendError("", "empty statement");
  for (const char* p = tail; p && *p; ++p) {
    if (!std::isspace(static_cast<unsigned char>(*p)) && *p != ';') {
      throw BackendError("", "only one statement may be executed at a time");
    }
  }

  ResultSet rs;
  const int n = sqlite3_column_count(st.stmt);
  for (int i = 0; i < n; ++i) rs.columns.emplace_back(sqlite3_column_name(st.stmt, i));
  for (;;) {
    const int rc = sqlite3_step(st.stmt);
    if (rc == SQLITE_DONE) break;
    if (rc != SQLITE_ROW) throw BackendError("", sqlite3_errmsg(db_));
    Row row;
    row.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      switch (sqlite3_column_type(st.stmt, i)) {
        case SQLITE_NULL:
          row.emplace_back(Null{});
          break;
        case SQLITE_INTEGER:
          row.emplace_back(static_cast<std::int64_t>(sqlite3_column_int64(st.stmt, i)));
          break;
        case SQLITE_FLOAT:
          row.emplace_back(sqlite3_column_double(st.stmt, i));
          break;
        default: {
          const auto* text = reinterpret_cast<const char*>(sqlite3_column_text(st.stmt, i));
          const int len = sqlite3_column_bytes(st.stmt, i);
          row.emplace_back(std::string(text ? text : "", static_cast<std::size_t>(len)));
        }
      }
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

BackendFactory sqlite_directory_factory(std::filesystem::path root) {
  return [root = std::move(root)](const std::string& db_id) -> std::unique_ptr<DatabaseBackend> {
    return std::make_unique<SqliteBackend>(load_database(root / db_id));
  };
}

}  // namespace qpl
