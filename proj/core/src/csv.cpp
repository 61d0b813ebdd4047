#include "csv.hpp"

#include "text.hpp"
#include "woe/error.hpp"

namespace woe::detail {

std::vector<CsvRow> read_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;  // UTF-8 BOM

  while (i < text.size()) {
    CsvRow row;
    row.line = line;
    bool blank = true;
    bool row_done = false;
    while (!row_done) {
      std::string field;
      std::size_t start = i;
      // Leading whitespace before an opening quote is ignored.
      std::size_t j = i;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
      if (j < text.size() && text[j] == '"') {
        blank = false;
        i = j + 1;
        std::size_t quote_line = line;
        for (;;) {
          if (i >= text.size()) throw ParseError("unterminated quoted field", quote_line);
          char ch = text[i++];
          if (ch == '"') {
            if (i < text.size() && text[i] == '"') {
              field.push_back('"');
              ++i;
            } else {
              break;
            }
          } else {
            if (ch == '\n') ++line;
            field.push_back(ch);
          }
        }
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
        if (i < text.size() && text[i] != ',' && text[i] != '\n') {
          throw ParseError("unexpected character after quoted field", line);
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n') ++i;
        std::string_view raw = trim(text.substr(start, i - start));
        if (!raw.empty()) blank = false;
        field.assign(raw);
      }
      row.fields.push_back(std::move(field));
      if (i >= text.size()) {
        row_done = true;
      } else if (text[i] == ',') {
        blank = false;
        ++i;
        if (i >= text.size()) {
          row.fields.emplace_back();
          row_done = true;
        }
      } else {  // newline
        ++i;
        ++line;
        row_done = true;
      }
    }
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_field(std::string_view value) {
  bool needs_quotes = value.find_first_of(",\"\n\r") != std::string_view::npos ||
                      (!value.empty() && (value.front() == ' ' || value.front() == '\t' ||
                                          value.back() == ' ' || value.back() == '\t'));
  if (!needs_quotes) return std::string(value);
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace woe::detail
