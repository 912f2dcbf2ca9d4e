#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "qpl/ident.hpp"
#include "qpl/schema.hpp"
#include "qpl/value.hpp"

namespace qpl {

/// Schema plus one Relation per table, keyed case-insensitively.
struct Database {
  SchemaCatalog schema;
  std::map<std::string, Relation, ILess> tables;

  /// Empty relations for every table of `schema`.
  static Database empty(SchemaCatalog schema);

  const Relation& table(std::string_view name) const;
  /// Throws SchemaError unless every table has a relation whose header
  /// matches the schema columns and every row is rectangular.
  void check() const;
};

/// Converts a CSV field for a column of type `type`. Number columns read
/// integers, then decimals; the empty string is NULL and anything else stays text.
Value parse_cell(std::string_view field, SimpleType type);

/// Reads `<dir>/schema.json` and one `<table>.csv` per table (file name
/// matched case-insensitively, header row required, columns in any order).
/// A table without a CSV file is empty.
Database load_database(const std::filesystem::path& dir);

/// Builds a Database from `schema` and CSV texts keyed by table name.
Database database_from_csv(SchemaCatalog schema, const std::map<std::string, std::string, ILess>& csv);

}  // namespace qpl
