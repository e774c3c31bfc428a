#include "turanlab/kv_config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "turanlab/error.hpp"

namespace turanlab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("not a number: '" + text + "'", line);
  return value;
}

}  // namespace

double parse_number(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty value", line);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return parse_plain(t, line);
  const double num = parse_plain(trim(t.substr(0, slash)), line);
  const double den = parse_plain(trim(t.substr(slash + 1)), line);
  if (den == 0.0) throw ParseError("zero denominator in '" + t + "'", line);
  return num / den;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line);
    if (cfg.entries_.count(key)) {
      throw ParseError("duplicate key '" + key + "' (first on line " +
                           std::to_string(cfg.entries_.at(key).line) + ")",
                       line);
    }
    cfg.entries_.emplace(key, Entry{value, line});
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return parse(in);
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw InvalidArgument("missing config key '" + key + "'");
  return parse_number(it->second.value, it->second.line);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return contains(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string t = trim(it->second.value);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("not an integer: '" + t + "'", it->second.line);
  }
  return value;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw InvalidArgument("missing config key '" + key + "'");
  std::vector<double> out;
  std::stringstream ss(it->second.value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, it->second.line));
  if (out.empty()) throw ParseError("empty list for '" + key + "'", it->second.line);
  return out;
}

}  // namespace turanlab
