#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qpl {

/// Simplified column types used by Spider-style schemas.
enum class SimpleType { Text, Number, Date, Other };

std::string_view to_string(SimpleType t);
std::optional<SimpleType> parse_simple_type(std::string_view s);

struct ColumnDef {
  std::string name;
  SimpleType type = SimpleType::Text;
  std::optional<std::vector<std::string>> sampled_values;

  bool operator==(const ColumnDef&) const = default;
};

struct ForeignKey {
  std::string column;
  std::string ref_table;
  std::string ref_column;

  bool operator==(const ForeignKey&) const = default;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;

  const ColumnDef* find_column(std::string_view column) const;

  bool operator==(const TableDef&) const = default;
};

/// Immutable catalog of tables. The constructor enforces name uniqueness and
/// key integrity and throws SchemaError otherwise.
class SchemaCatalog {
 public:
  SchemaCatalog() = default;
  SchemaCatalog(std::string schema_id, std::vector<TableDef> tables);

  const std::string& schema_id() const noexcept { return schema_id_; }
  const std::vector<TableDef>& tables() const noexcept { return tables_; }

  const TableDef* find_table(std::string_view name) const;

  /// Copy with `column` of `table` carrying the given sampled values.
  SchemaCatalog with_sampled_values(std::string_view table, std::string_view column,
                                    std::vector<std::string> values) const;

  bool operator==(const SchemaCatalog&) const = default;

 private:
  std::string schema_id_;
  std::vector<TableDef> tables_;
};

// JSON layout:
// { "schema_id": str,
//   "tables": [ { "name": str,
//                 "columns": [ { "name": str, "type": "text|number|date|other",
//                                "values": [str]? } ],
//                 "primary_key": [str],
//                 "foreign_keys": [ { "column": str, "ref_table": str, "ref_column": str } ] } ] }
SchemaCatalog schema_from_json(const nlohmann::json& doc);
nlohmann::json schema_to_json(const SchemaCatalog& schema);
SchemaCatalog load_schema(const std::filesystem::path& path);

/// Converts one entry of Spider's `tables.json` (db_id, table_names_original,
/// column_names_original, column_types, primary_keys, foreign_keys).
SchemaCatalog schema_from_spider(const nlohmann::json& entry);

}  // namespace qpl
