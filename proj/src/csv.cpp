#include "citeflow/csv.hpp"

#include <fstream>
#include <sstream>

#include "citeflow/error.hpp"

namespace citeflow {

CsvReader::CsvReader(const std::filesystem::path& path) : path_(path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string(), "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  data_ = std::move(buf).str();
  if (data_.size() >= 3 && data_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;

  if (!parse_record(header_)) throw Error(ErrorCode::ParseError, path_.string() + ":1", "missing header row");
}

std::string CsvReader::where() const { return path_.string() + ":" + std::to_string(record_line_); }

std::size_t CsvReader::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw Error(ErrorCode::ParseError, path_.string() + ":1", "missing column '" + std::string(name) + "'");
}

bool CsvReader::next(std::vector<std::string>& fields) {
  while (true) {
    if (!parse_record(fields)) return false;
    // blank lines are skipped
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != header_.size()) {
      throw Error(ErrorCode::ParseError, where(),
                  "expected " + std::to_string(header_.size()) + " fields, found " + std::to_string(fields.size()));
    }
    return true;
  }
}

bool CsvReader::parse_record(std::vector<std::string>& fields) {
  if (pos_ >= data_.size()) return false;
  record_line_ = cur_line_;
  std::size_t n = 0;
  auto field = [&]() -> std::string& {
    if (n == fields.size()) fields.emplace_back();
    std::string& f = fields[n++];
    f.clear();
    return f;
  };

  std::string* cur = &field();
  bool quoted = false;
  bool after_quote = false;
  while (pos_ < data_.size()) {
    const char c = data_[pos_++];
    if (quoted) {
      if (c == '"') {
        if (pos_ < data_.size() && data_[pos_] == '"') {
          cur->push_back('"');
          ++pos_;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++cur_line_;
        cur->push_back(c);
      }
      continue;
    }
    if (c == ',') {
      cur = &field();
      after_quote = false;
    } else if (c == '\n') {
      ++cur_line_;
      break;
    } else if (c == '\r') {
      // tolerated only as part of CRLF
      if (pos_ < data_.size() && data_[pos_] != '\n') {
        throw Error(ErrorCode::ParseError, where(), "stray carriage return");
      }
    } else if (c == '"') {
      if (!cur->empty() || after_quote) throw Error(ErrorCode::ParseError, where(), "unexpected quote");
      quoted = true;
    } else {
      if (after_quote) throw Error(ErrorCode::ParseError, where(), "text after closing quote");
      cur->push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, where(), "unterminated quoted field");
  fields.resize(n);
  return true;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (!first) out << ',';
    first = false;
    out << csv_field(f);
  }
  out << '\n';
}

}  // namespace citeflow
