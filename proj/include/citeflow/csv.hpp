#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace citeflow {

/// Streaming RFC 4180 reader. The header row is required; columns are looked
/// up by name. Errors are ParseError("file:line").
class CsvReader {
 public:
  explicit CsvReader(const std::filesystem::path& path);

  const std::vector<std::string>& header() const noexcept { return header_; }
  /// Column index of `name`; throws ParseError naming the file when missing.
  std::size_t column(std::string_view name) const;

  /// Reads the next record into `fields`. Returns false at end of input.
  /// Throws ParseError when the record's field count differs from the header.
  bool next(std::vector<std::string>& fields);

  /// Line on which the last record started (1-based; the header is line 1).
  std::size_t line() const noexcept { return record_line_; }
  std::string where() const;

 private:
  bool parse_record(std::vector<std::string>& fields);

  std::filesystem::path path_;
  std::string data_;
  std::size_t pos_ = 0;
  std::size_t cur_line_ = 1;
  std::size_t record_line_ = 0;
  std::vector<std::string> header_;
};

/// Quotes a field when it contains a comma, quote, or line break.
std::string csv_field(std::string_view s);

void write_csv_row(std::ostream& out, std::span<const std::string> fields);
void write_csv_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace citeflow
