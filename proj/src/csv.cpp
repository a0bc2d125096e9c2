#include "aztext/csv.hpp"

#include <fstream>
#include <sstream>

#include "aztext/errors.hpp"

namespace aztext::csv {

namespace {

// One record, or nullopt at end of input. `record_no` is advanced per record.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t record_no = 0;

  bool done() const { return pos >= text.size(); }

  std::vector<std::string> next_record() {
    ++record_no;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool quoted_field = false;
    while (pos < text.size()) {
      char c = text[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
          } else {
            in_quotes = false;
            ++pos;
          }
        } else {
          field.push_back(c);
          ++pos;
        }
        continue;
      }
      if (c == '"' && field.empty() && !quoted_field) {
        in_quotes = true;
        quoted_field = true;
        ++pos;
        continue;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
        ++pos;
        continue;
      }
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
        pos += 2;
        fields.push_back(std::move(field));
        return fields;
      }
      if (c == '\n') {
        ++pos;
        fields.push_back(std::move(field));
        return fields;
      }
      field.push_back(c);
      ++pos;
    }
    if (in_quotes) {
      throw MalformedRow(record_no, "unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return fields;
  }
};

bool blank(const std::vector<std::string>& record) {
  return record.size() == 1 && record[0].empty();
}

}  // namespace

Table parse(std::string_view text) {
  Table table;
  Cursor cur{text};
  while (!cur.done() && table.header.empty()) {
    auto record = cur.next_record();
    if (!blank(record)) table.header = std::move(record);
  }
  while (!cur.done()) {
    auto record = cur.next_record();
    if (blank(record)) continue;
    if (record.size() != table.header.size()) {
      throw MalformedRow(cur.record_no, "expected " + std::to_string(table.header.size()) +
                                            " fields, got " + std::to_string(record.size()));
    }
    table.rows.push_back(std::move(record));
    table.record_numbers.push_back(cur.record_no);
  }
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string escape_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string to_string(const Table& table) {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& record) {
    for (std::size_t i = 0; i < record.size(); ++i) {
      if (i) out.push_back(',');
      out += escape_field(record[i]);
    }
    out.push_back('\n');
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out;
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << to_string(table);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace aztext::csv
