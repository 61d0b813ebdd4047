#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace woe::detail {

struct CsvRow {
  std::size_t line = 0;  // 1-based line the row starts on
  std::vector<std::string> fields;
};

// Comma-separated records with RFC 4180 quoting. Blank lines are skipped and
// unquoted fields are trimmed. Throws ParseError on an unterminated quote.
std::vector<CsvRow> read_csv(std::string_view text);

// Quotes the field when it contains a comma, quote, newline or edge whitespace.
std::string csv_field(std::string_view value);

}  // namespace woe::detail
