#include "qpl/encode.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "qpl/ident.hpp"

namespace qpl {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(ascii_lower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

std::string join_words(const std::vector<std::string>& w, std::size_t from, std::size_t n) {
  std::string out;
  for (std::size_t i = from; i < from + n; ++i) {
    if (i > from) out.push_back(' ');
    out += w[i];
  }
  return out;
}

}  // namespace

EncodedSchema encode_simple(const SchemaCatalog& schema) {
  std::string text;
  for (const auto& t : schema.tables()) {
    text += "Table " + t.name + " (";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) text += ", ";
      text += t.columns[i].name;
    }
    text += ")\n";
  }
  return EncodedSchema{EncodingStyle::Simple, text};
}

std::string model_input(std::string_view question, const SchemaCatalog& schema) {
  std::string out(question);
  out += " | " + schema.schema_id();
  for (const auto& t : schema.tables()) {
    out += " | " + t.name + " : ";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) out += ", ";
      out += t.columns[i].name;
    }
  }
  return out;
}

EncodedSchema encode_rich(const SchemaCatalog& schema, std::string_view question,
                          const RichOptions& options) {
  std::set<std::string> ngrams;
  if (options.annotate_values) {
    const auto w = words(question);
    for (std::size_t n = 1; n <= options.max_ngram; ++n) {
      for (std::size_t i = 0; i + n <= w.size(); ++i) ngrams.insert(join_words(w, i, n));
    }
  }

  std::string text;
  bool first_table = true;
  for (const auto& t : schema.tables()) {
    if (!first_table) text += "\n";
    first_table = false;

    std::vector<std::string> items;
    for (const auto& c : t.columns) {
      std::string item = c.name + " " + std::string(to_string(c.type));
      if (c.sampled_values && !ngrams.empty()) {
        std::vector<std::string> hits;
        for (const auto& v : *c.sampled_values) {
          const auto vw = words(v);
          if (vw.empty() || vw.size() > options.max_ngram) continue;
          if (!ngrams.count(join_words(vw, 0, vw.size()))) continue;
          if (std::none_of(hits.begin(), hits.end(), [&](const std::string& h) { return h == v; })) {
            hits.push_back(v);
          }
        }
        if (!hits.empty()) {
          item += " ( ";
          for (std::size_t i = 0; i < hits.size(); ++i) {
            if (i) item += ", ";
            item += hits[i];
          }
          item += " )";
        }
      }
      items.push_back(std::move(item));
    }
    if (!t.primary_key.empty()) {
      std::string pk = "primary key ( ";
      for (std::size_t i = 0; i < t.primary_key.size(); ++i) {
        if (i) pk += ", ";
        pk += t.primary_key[i];
      }
      items.push_back(pk + " )");
    }
    for (const auto& fk : t.foreign_keys) {
      items.push_back("foreign key ( " + fk.column + " ) references " + fk.ref_table + " ( " +
                      fk.ref_column + " )");
    }

    text += "CREATE TABLE " + t.name + " (\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
      text += "\t" + items[i] + (i + 1 < items.size() ? ",\n" : ")\n");
    }
    if (items.empty()) text += ")\n";
  }
  return EncodedSchema{EncodingStyle::Rich, text};
}

}  // namespace qpl
