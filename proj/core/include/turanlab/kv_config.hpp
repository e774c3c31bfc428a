#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace turanlab {

// Flat "key = value" text: one pair per line, '#' starts a comment, blank
// lines ignored. Duplicate keys and lines without '=' are ParseErrors.
class KeyValueConfig {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };

  static KeyValueConfig parse(std::istream& in);
  // IoError when the file cannot be opened.
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

  // ParseError (with the key's line) when the value is not a number.
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  // Comma-separated numbers.
  std::vector<double> get_double_list(const std::string& key) const;

 private:
  std::map<std::string, Entry> entries_;
};

// Strict number parsing shared with the CLI; throws ParseError on trailing
// garbage. Accepts "a/b" fractions.
double parse_number(const std::string& text, std::size_t line);

}  // namespace turanlab
