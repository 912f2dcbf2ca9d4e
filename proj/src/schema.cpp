#include "qpl/schema.hpp"

#include <fstream>
#include <set>

#include "qpl/errors.hpp"
#include "qpl/ident.hpp"

namespace qpl {

std::string_view to_string(SimpleType t) {
  switch (t) {
    case SimpleType::Text: return "text";
    case SimpleType::Number: return "number";
    case SimpleType::Date: return "date";
    case SimpleType::Other: return "other";
  }
  return "other";
}

std::optional<SimpleType> parse_simple_type(std::string_view s) {
  if (s == "text") return SimpleType::Text;
  if (s == "number") return SimpleType::Number;
  if (s == "date" || s == "time") return SimpleType::Date;
  if (s == "other" || s == "boolean") return SimpleType::Other;
  return std::nullopt;
}

const ColumnDef* TableDef::find_column(std::string_view column) const {
  for (const auto& c : columns) {
    if (iequals(c.name, column)) return &c;
  }
  return nullptr;
}

SchemaCatalog::SchemaCatalog(std::string schema_id, std::vector<TableDef> tables)
    : schema_id_(std::move(schema_id)), tables_(std::move(tables)) {
  std::set<std::string, ILess> table_names;
  for (const auto& t : tables_) {
    if (t.name.empty()) {
      throw SchemaError("empty table name");
    }
    if (!table_names.insert(t.name).second) {
      throw SchemaError("duplicate table name: " + t.name);
    }
    std::set<std::string, ILess> column_names;
    for (const auto& c : t.columns) {
      if (c.name.empty()) throw SchemaError("empty column name in table " + t.name);
      if (!column_names.insert(c.name).second) {
        throw SchemaError("duplicate column " + c.name + " in table " + t.name);
      }
    }
    for (const auto& pk : t.primary_key) {
      if (!t.find_column(pk)) {
        throw SchemaError("primary key column " + pk + " not in table " + t.name);
      }
    }
    for (const auto& fk : t.foreign_keys) {
      if (!t.find_column(fk.column)) {
        throw SchemaError("foreign key column " + fk.column + " not in table " + t.name);
      }
    }
  }
  for (const auto& t : tables_) {
    for (const auto& fk : t.foreign_keys) {
      const TableDef* ref = find_table(fk.ref_table);
      if (!ref) {
        throw SchemaError("foreign key of " + t.name + " references unknown table " +
                          fk.ref_table);
      }
      if (!ref->find_column(fk.ref_column)) {
        throw SchemaError("foreign key of " + t.name + " references unknown column " +
                          fk.ref_table + "." + fk.ref_column);
      }
    }
  }
}

const TableDef* SchemaCatalog::find_table(std::string_view name) const {
  for (const auto& t : tables_) {
    if (iequals(t.name, name)) return &t;
  }
  return nullptr;
}

SchemaCatalog SchemaCatalog::with_sampled_values(std::string_view table,
                                                 std::string_view column,
                                                 std::vector<std::string> values) const {
  auto tables = tables_;
  for (auto& t : tables) {
    if (!iequals(t.name, table)) continue;
    for (auto& c : t.columns) {
      if (iequals(c.name, column)) {
        c.sampled_values = std::move(values);
        return SchemaCatalog(schema_id_, std::move(tables));
      }
    }
  }
  throw SchemaError("no column " + std::string(table) + "." + std::string(column));
}

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                              const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::string require_string(const nlohmann::json& obj, const char* key,
                           const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw SchemaError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

SchemaCatalog schema_from_json(const nlohmann::json& doc) {
  std::string id = require_string(doc, "schema_id", "schema");
  std::vector<TableDef> tables;
  for (const auto& jt : require(doc, "tables", "schema")) {
    TableDef t;
    t.name = require_string(jt, "name", "table");
    const std::string where = "table " + t.name;
    for (const auto& jc : require(jt, "columns", where)) {
      ColumnDef c;
      c.name = require_string(jc, "name", where + " column");
      std::string type = jc.value("type", "text");
      auto st = parse_simple_type(type);
      if (!st) throw SchemaError(where + ": unknown column type '" + type + "'");
      c.type = *st;
      if (jc.contains("values")) {
        std::vector<std::string> values;
        for (const auto& v : jc.at("values")) {
          values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        c.sampled_values = std::move(values);
      }
      t.columns.push_back(std::move(c));
    }
    if (jt.contains("primary_key")) {
      t.primary_key = jt.at("primary_key").get<std::vector<std::string>>();
    }
    if (jt.contains("foreign_keys")) {
      for (const auto& jf : jt.at("foreign_keys")) {
        t.foreign_keys.push_back({require_string(jf, "column", where + " foreign key"),
                                  require_string(jf, "ref_table", where + " foreign key"),
                                  require_string(jf, "ref_column", where + " foreign key")});
      }
    }
    tables.push_back(std::move(t));
  }
  return SchemaCatalog(std::move(id), std::move(tables));
}

nlohmann::json schema_to_json(const SchemaCatalog& schema) {
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : schema.tables()) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : t.columns) {
      nlohmann::json jc = {{"name", c.name}, {"type", std::string(to_string(c.type))}};
      if (c.sampled_values) jc["values"] = *c.sampled_values;
      cols.push_back(std::move(jc));
    }
    nlohmann::json fks = nlohmann::json::array();
    for (const auto& fk : t.foreign_keys) {
      fks.push_back({{"column", fk.column},
                     {"ref_table", fk.ref_table},
                     {"ref_column", fk.ref_column}});
    }
    tables.push_back({{"name", t.name},
                      {"columns", std::move(cols)},
                      {"primary_key", t.primary_key},
                      {"foreign_keys", std::move(fks)}});
  }
  return {{"schema_id", schema.schema_id()}, {"tables", std::move(tables)}};
}

SchemaCatalog load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open schema file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return schema_from_json(doc);
}

SchemaCatalog schema_from_spider(const nlohmann::json& entry) {
  const auto id = require_string(entry, "db_id", "spider entry");
  const auto& table_names = require(entry, "table_names_original", id);
  const auto& column_names = require(entry, "column_names_original", id);
  const auto& column_types = require(entry, "column_types", id);

  std::vector<TableDef> tables;
  for (const auto& n : table_names) tables.push_back(TableDef{n.get<std::string>(), {}, {}, {}});

  // Column 0 is Spider's synthetic "*"; global column ids index this list.
  std::vector<std::pair<int, std::string>> columns;
  for (std::size_t i = 0; i < column_names.size(); ++i) {
    int table = column_names[i][0].get<int>();
    auto name = column_names[i][1].get<std::string>();
    columns.emplace_back(table, name);
    if (table < 0) continue;
    auto type = parse_simple_type(column_types.at(i).get<std::string>());
    tables.at(static_cast<std::size_t>(table))
        .columns.push_back(ColumnDef{name, type.value_or(SimpleType::Other), std::nullopt});
  }
  auto add_pk = [&](int col) {
    const auto& [table, name] = columns.at(static_cast<std::size_t>(col));
    tables.at(static_cast<std::size_t>(table)).primary_key.push_back(name);
  };
  if (entry.contains("primary_keys")) {
    for (const auto& pk : entry.at("primary_keys")) {
      if (pk.is_array()) {
        for (const auto& c : pk) add_pk(c.get<int>());
      } else {
        add_pk(pk.get<int>());
      }
    }
  }
  if (entry.contains("foreign_keys")) {
    for (const auto& fk : entry.at("foreign_keys")) {
      const auto& [t1, c1] = columns.at(fk[0].get<std::size_t>());
      const auto& [t2, c2] = columns.at(fk[1].get<std::size_t>());
      tables.at(static_cast<std::size_t>(t1))
          .foreign_keys.push_back({c1, tables.at(static_cast<std::size_t>(t2)).name, c2});
    }
  }
  return SchemaCatalog(id, std::move(tables));
}

}  // namespace qpl
