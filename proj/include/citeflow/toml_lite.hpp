#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Reader for the TOML subset used by config files: [table] headers, bare or
// dotted keys, basic/literal strings, integers, floats, booleans, and flat
// arrays of those (which may span lines). Inline tables and dates are not
// supported.
namespace citeflow::toml {

using Scalar = std::variant<bool, std::int64_t, double, std::string>;
using Array = std::vector<Scalar>;
using Value = std::variant<bool, std::int64_t, double, std::string, Array>;

class Document {
 public:
  /// Keys are fully qualified: "table.key".
  const Value* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }
  const std::map<std::string, Value, std::less<>>& entries() const noexcept { return entries_; }

  // Typed accessors throw InvalidConfig on a type mismatch.
  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<std::int64_t> get_int(std::string_view key) const;
  /// Accepts integers too.
  std::optional<double> get_double(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;
  std::optional<std::vector<std::int64_t>> get_int_array(std::string_view key) const;
  std::optional<std::vector<std::string>> get_string_array(std::string_view key) const;

 private:
  friend Document parse(std::string_view, const std::string&);
  std::map<std::string, Value, std::less<>> entries_;
};

/// Throws ParseError("source:line").
Document parse(std::string_view text, const std::string& source = "<config>");
Document parse_file(const std::filesystem::path& path);

}  // namespace citeflow::toml
