#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vtrsim::csv {

// RFC 4180-style comma-separated text. Lines starting with '#' are header
// comments (run metadata) and are skipped on read, as are blank lines.
struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

class Table {
 public:
  // Reads header + rows. Throws ParseError on malformed quoting or rows whose
  // width differs from the header.
  static Table read(std::istream& in, const std::string& source);
  static Table read_file(const std::string& path);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& source() const { return source_; }

  // Index of a required column; throws ParseError naming the column.
  std::size_t column(std::string_view name) const;
  std::optional<std::size_t> find_column(std::string_view name) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

std::vector<std::string> split_line(std::string_view line, const std::string& source,
                                    std::size_t line_no);

std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

// Splits on a single-character separator without quoting rules; empty
// segments are dropped.
std::vector<std::string> split_list(std::string_view text, char sep);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

double parse_double(std::string_view text, const std::string& source, std::size_t line,
                    std::string_view field);
std::int64_t parse_int(std::string_view text, const std::string& source, std::size_t line,
                       std::string_view field);

}  // namespace vtrsim::csv
