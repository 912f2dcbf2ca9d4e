#include "qpl/database.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qpl/csv.hpp"
#include "qpl/errors.hpp"

namespace qpl {

Database Database::empty(SchemaCatalog schema) {
  Database db;
  for (const auto& t : schema.tables()) {
    Relation r;
    for (const auto& c : t.columns) r.columns.push_back(RelColumn{c.name, c.type});
    db.tables.emplace(t.name, std::move(r));
  }
  db.schema = std::move(schema);
  return db;
}

const Relation& Database::table(std::string_view name) const {
  auto it = tables.find(name);
  if (it == tables.end()) throw SchemaError("no data for table " + std::string(name));
  return it->second;
}

void Database::check() const {
  for (const auto& t : schema.tables()) {
    const Relation& r = table(t.name);
    if (r.columns.size() != t.columns.size()) {
      throw SchemaError("table " + t.name + " data has " + std::to_string(r.columns.size()) +
                        " columns, schema declares " + std::to_string(t.columns.size()));
    }
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      if (!iequals(r.columns[i].name, t.columns[i].name)) {
        throw SchemaError("table " + t.name + " column " + std::to_string(i + 1) + " is " +
                          r.columns[i].name + ", schema declares " + t.columns[i].name);
      }
    }
    r.check_rectangular();
  }
}

Value parse_cell(std::string_view field, SimpleType type) {
  if (type != SimpleType::Number) return std::string(field);
  if (field.empty()) return Null{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  std::int64_t i = 0;
  auto [p, ec] = std::from_chars(first, last, i);
  if (ec == std::errc() && p == last) return i;
  double d = 0;
  auto [q, ec2] = std::from_chars(first, last, d);
  if (ec2 == std::errc() && q == last) return d;
  return std::string(field);
}

namespace {

Relation relation_from_csv(const TableDef& t, std::string_view text) {
  Relation r;
  for (const auto& c : t.columns) r.columns.push_back(RelColumn{c.name, c.type});
  auto records = parse_csv(text);
  if (records.empty()) return r;

  // Map file columns onto schema positions.
  const auto& header = records.front();
  if (header.size() != t.columns.size()) {
    throw FormatError(1, "table " + t.name + ": header has " + std::to_string(header.size()) +
                             " fields, schema declares " + std::to_string(t.columns.size()));
  }
  std::vector<std::size_t> target(header.size());
  std::vector<bool> seen(t.columns.size(), false);
  for (std::size_t i = 0; i < header.size(); ++i) {
    int idx = r.index_of(header[i]);
    if (idx < 0 || seen[static_cast<std::size_t>(idx)]) {
      throw FormatError(1, "table " + t.name + ": unexpected header field " + header[i]);
    }
    seen[static_cast<std::size_t>(idx)] = true;
    target[i] = static_cast<std::size_t>(idx);
  }

  for (std::size_t n = 1; n < records.size(); ++n) {
    const auto& rec = records[n];
    if (rec.size() != header.size()) {
      throw FormatError(n + 1, "table " + t.name + ": expected " + std::to_string(header.size()) +
                                   " fields, found " + std::to_string(rec.size()));
    }
    Row row(rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
      row[target[i]] = parse_cell(rec[i], r.columns[target[i]].type);
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Database database_from_csv(SchemaCatalog schema,
                           const std::map<std::string, std::string, ILess>& csv) {
  Database db = Database::empty(std::move(schema));
  for (const auto& t : db.schema.tables()) {
    auto it = csv.find(t.name);
    if (it != csv.end()) db.tables[t.name] = relation_from_csv(t, it->second);
  }
  return db;
}

Database load_database(const std::filesystem::path& dir) {
  SchemaCatalog schema = load_schema(dir / "schema.json");
  std::map<std::string, std::string, ILess> csv;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !iequals(entry.path().extension().string(), ".csv")) continue;
    const std::string stem = entry.path().stem().string();
    if (!schema.find_table(stem)) continue;
    csv[stem] = read_file(entry.path());
  }
  return database_from_csv(std::move(schema), csv);
}

}  // namespace qpl
