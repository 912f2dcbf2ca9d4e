#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qpl/schema.hpp"

namespace qpl {

enum class EncodingStyle { Simple, Rich };

struct EncodedSchema {
  EncodingStyle style = EncodingStyle::Simple;
  std::string text;

  bool operator==(const EncodedSchema&) const = default;
};

/// One `Table <name> (<col>, <col>)` line per table, in catalog order.
EncodedSchema encode_simple(const SchemaCatalog& schema);

/// `Question | <schema_id> | <table> : <col>, <col> | ...`
std::string model_input(std::string_view question, const SchemaCatalog& schema);

struct RichOptions {
  std::size_t max_ngram = 4;
  bool annotate_values = true;
};

/// One tab-indented CREATE TABLE block per table, blocks separated by a blank
/// line. A column is annotated `<col> <type> ( v1, v2 )` with the sampled
/// values that equal some question n-gram (ASCII case-insensitive, compared
/// word by word).
EncodedSchema encode_rich(const SchemaCatalog& schema, std::string_view question,
                          const RichOptions& options = {});

/// Lowercased alphanumeric words; every other character separates words.
std::vector<std::string> words(std::string_view text);

}  // namespace qpl
