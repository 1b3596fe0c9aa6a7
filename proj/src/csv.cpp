#include "vtrsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <system_error>

#include "vtrsim/error.hpp"

namespace vtrsim::csv {

std::vector<std::string> split_line(std::string_view line, const std::string& source,
                                    std::size_t line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  bool field_started_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
      field_started_quoted = false;
    } else if (c == '"') {
      if (!cur.empty() || field_started_quoted) {
        throw ParseError(source, line_no, "unexpected quote inside unquoted field");
      }
      quoted = true;
      field_started_quoted = true;
    } else {
      if (field_started_quoted) {
        throw ParseError(source, line_no, "text after closing quote");
      }
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted field");
  out.push_back(std::move(cur));
  return out;
}

Table Table::read(std::istream& in, const std::string& source) {
  Table t;
  t.source_ = source;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_line(line, source, line_no);
    if (!have_header) {
      t.header_ = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(t.header_.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    t.rows_.push_back(Row{line_no, std::move(fields)});
  }
  if (!have_header) throw ParseError(source, line_no, "missing header row");
  return t;
}

Table Table::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read(in, path);
}

std::optional<std::size_t> Table::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::column(std::string_view name) const {
  if (auto idx = find_column(name)) return *idx;
  throw ParseError(source_, 1, "missing column '" + std::string(name) + "'");
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, const std::string& source, std::size_t line,
                    std::string_view field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(source, line,
                     "field '" + std::string(field) + "': not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view text, const std::string& source, std::size_t line,
                       std::string_view field) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(source, line,
                     "field '" + std::string(field) + "': not an integer: '" + std::string(text) +
                         "'");
  }
  return v;
}

}  // namespace vtrsim::csv
