#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aztext::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based physical record number of each row (blank records shift these).
  std::vector<std::size_t> record_numbers;
};

// RFC-4180 parser. Quoted fields may contain commas, quotes ("" escape) and
// newlines. Accepts LF or CRLF record ends; blank records are skipped. The
// first record is the header. Data records whose field count differs from the
// header raise MalformedRow with the 1-based record number (header = 1).
Table parse(std::string_view text);

// Reads and parses a CSV file. Throws MissingFile if it cannot be opened.
Table read_file(const std::string& path);

// Quotes the field if it contains a comma, quote or newline.
std::string escape_field(std::string_view field);

std::string to_string(const Table& table);
void write_file(const std::string& path, const Table& table);

}  // namespace aztext::csv
