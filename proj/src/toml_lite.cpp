#include "citeflow/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "citeflow/error.hpp"

namespace citeflow::toml {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  std::map<std::string, Value, std::less<>> run() {
    std::map<std::string, Value, std::less<>> out;
    std::string table;
    while (!at_end()) {
      skip_ws_and_comments();
      if (at_end()) break;
      if (peek() == '\n') {
        advance();
        continue;
      }
      if (peek() == '[') {
        advance();
        skip_inline_ws();
        table = parse_key();
        skip_inline_ws();
        expect(']');
        end_of_line();
        continue;
      }
      const std::size_t key_line = line_;
      std::string key = parse_key();
      skip_inline_ws();
      expect('=');
      skip_inline_ws();
      Value v = parse_value();
      end_of_line();
      std::string full = table.empty() ? key : table + "." + key;
      if (out.contains(full)) {
        line_ = key_line;
        fail("duplicate key '" + full + "'");
      }
      out.emplace(std::move(full), std::move(v));
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, source_ + ":" + std::to_string(line_), what);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void skip_inline_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') advance();
    }
  }

  void skip_ws_and_comments() {
    skip_inline_ws();
    skip_comment();
  }

  // Also skips newlines; used inside arrays.
  void skip_all_ws() {
    while (!at_end()) {
      skip_ws_and_comments();
      if (peek() == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void end_of_line() {
    skip_ws_and_comments();
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    advance();
  }

  std::string parse_key() {
    std::string key;
    while (true) {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
        advance();
      }
      if (pos_ == start) fail("expected a bare key");
      key.append(text_.substr(start, pos_ - start));
      skip_inline_ws();
      if (peek() != '.') break;
      advance();
      skip_inline_ws();
      key += '.';
    }
    return key;
  }

  Scalar parse_scalar() {
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  Value parse_value() {
    if (peek() != '[') {
      return std::visit([](auto&& s) -> Value { return s; }, parse_scalar());
    }
    advance();
    Array arr;
    skip_all_ws();
    while (peek() != ']') {
      if (at_end()) fail("unterminated array");
      arr.push_back(parse_scalar());
      skip_all_ws();
      if (peek() == ',') {
        advance();
        skip_all_ws();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    advance();
    return arr;
  }

  std::string parse_basic_string() {
    advance();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        char e = advance();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '\\': out += '\\'; break;
          case '"': out += '"'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  std::string parse_literal_string() {
    advance();
    const std::size_t start = pos_;
    while (!at_end() && peek() != '\'' && peek() != '\n') advance();
    if (peek() != '\'') fail("unterminated string");
    std::string out(text_.substr(start, pos_ - start));
    advance();
    return out;
  }

  Scalar parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                         peek() == '.' || peek() == '_')) {
      advance();
    }
    std::string tok;
    for (char c : text_.substr(start, pos_ - start)) {
      if (c != '_') tok += c;
    }
    if (tok.empty()) fail("expected a value");
    if (!tok.empty() && tok.front() == '+') tok.erase(0, 1);
    const bool is_float = tok.find_first_of(".eE") != std::string::npos;
    if (!is_float) {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec == std::errc{} && p == tok.data() + tok.size()) return v;
    } else {
      double v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec == std::errc{} && p == tok.data() + tok.size()) return v;
    }
    fail("invalid value '" + tok + "'");
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

[[noreturn]] void type_error(std::string_view key, const char* expected) {
  throw Error(ErrorCode::InvalidConfig, std::string(key), std::string("expected ") + expected);
}

}  // namespace

const Value* Document::find(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> Document::get_string(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  type_error(key, "a string");
}

std::optional<std::int64_t> Document::get_int(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(v)) return *i;
  type_error(key, "an integer");
}

std::optional<double> Document::get_double(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  type_error(key, "a number");
}

std::optional<bool> Document::get_bool(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* b = std::get_if<bool>(v)) return *b;
  type_error(key, "a boolean");
}

std::optional<std::vector<std::int64_t>> Document::get_int_array(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  const auto* arr = std::get_if<Array>(v);
  if (!arr) type_error(key, "an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& s : *arr) {
    const auto* i = std::get_if<std::int64_t>(&s);
    if (!i) type_error(key, "an array of integers");
    out.push_back(*i);
  }
  return out;
}

std::optional<std::vector<std::string>> Document::get_string_array(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  const auto* arr = std::get_if<Array>(v);
  if (!arr) type_error(key, "an array of strings");
  std::vector<std::string> out;
  for (const auto& s : *arr) {
    const auto* str = std::get_if<std::string>(&s);
    if (!str) type_error(key, "an array of strings");
    out.push_back(*str);
  }
  return out;
}

Document parse(std::string_view text, const std::string& source) {
  Document doc;
  doc.entries_ = Parser(text, source).run();
  return doc;
}

Document parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, path.string(), "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

}  // namespace citeflow::toml
