#pragma once

#include <string_view>

namespace qpl {

/// Indel similarity in [0, 1]: 2 * LCS(a, b) / (|a| + |b|); 1 for two empty strings.
double indel_ratio(std::string_view a, std::string_view b);

/// Token-set similarity in [0, 1] over lowercased alphanumeric words
/// (underscores and punctuation separate words). Word order and repeated
/// words do not matter.
double token_set_ratio(std::string_view a, std::string_view b);

}  // namespace qpl
