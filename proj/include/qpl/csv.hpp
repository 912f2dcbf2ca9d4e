#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qpl {

/// RFC 4180 records: comma separated, double-quoted fields may contain
/// commas, quotes (doubled) and line breaks. CRLF and LF both end a record.
/// A final line break does not start an empty record. Throws FormatError on
/// an unterminated quoted field or stray quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace qpl
