#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "symred/error.hpp"

namespace symred::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw ConfigurationError(origin + ":" + std::to_string(line) + ": " + what);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

std::optional<double> parse_number(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != '_') t.push_back(c);
  }
  if (t.empty()) return std::nullopt;
  if (t[0] == '+') t.erase(0, 1);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto res = std::from_chars(t.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

std::variant<double, std::string> parse_scalar(const std::string& text, const std::string& origin,
                                               int line) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    return text.substr(1, text.size() - 2);
  }
  if (auto v = parse_number(text)) return *v;
  fail(origin, line, "cannot parse value '" + text + "'");
}

}  // namespace

Table Table::parse(const std::string& text, const std::string& origin) {
  Table table;
  table.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) fail(origin, line_no, "invalid section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string rhs = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail(origin, line_no, "invalid key '" + key + "'");
    if (rhs.empty()) fail(origin, line_no, "missing value for '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (table.values_.count(full)) fail(origin, line_no, "duplicate key '" + full + "'");

    Value value;
    value.line = line_no;
    if (rhs == "true" || rhs == "false") {
      value.data = rhs == "true";
    } else if (rhs.front() == '[') {
      if (rhs.back() != ']') fail(origin, line_no, "arrays must fit on one line");
      Value::Array items;
      const std::string body = trim(rhs.substr(1, rhs.size() - 2));
      if (!body.empty()) {
        std::string item;
        bool quoted = false;
        for (char c : body + ",") {
          if (c == '"') quoted = !quoted;
          if (c == ',' && !quoted) {
            const std::string t = trim(item);
            if (!t.empty()) items.push_back(parse_scalar(t, origin, line_no));
            item.clear();
          } else {
            item.push_back(c);
          }
        }
      }
      value.data = std::move(items);
    } else {
      auto scalar = parse_scalar(rhs, origin, line_no);
      if (std::holds_alternative<double>(scalar)) {
        value.data = std::get<double>(scalar);
      } else {
        value.data = std::get<std::string>(scalar);
      }
    }
    table.values_[full] = std::move(value);
  }
  return table;
}

Table Table::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const Value& Table::at(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigurationError(origin_ + ": missing required key '" + key + "'");
  touched_[key] = true;
  return it->second;
}

std::string Table::string(const std::string& key) const {
  const Value& v = at(key);
  if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
  throw ConfigurationError(origin_ + ":" + std::to_string(v.line) + ": key '" + key +
                           "' must be a string");
}

std::string Table::string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

double Table::number(const std::string& key) const {
  const Value& v = at(key);
  if (const auto* d = std::get_if<double>(&v.data)) return *d;
  throw ConfigurationError(origin_ + ":" + std::to_string(v.line) + ": key '" + key +
                           "' must be a number");
}

double Table::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Table::integer(const std::string& key) const {
  const double d = number(key);
  if (d != std::floor(d) || std::abs(d) > 2e9) {
    throw ConfigurationError(origin_ + ": key '" + key + "' must be an integer");
  }
  return static_cast<int>(d);
}

int Table::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::uint64_t Table::seed(const std::string& key) const {
  const double d = number(key);
  if (d < 0 || d != std::floor(d) || d > 9007199254740992.0) {
    throw ConfigurationError(origin_ + ": key '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(d);
}

bool Table::boolean_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Value& v = at(key);
  if (const auto* b = std::get_if<bool>(&v.data)) return *b;
  throw ConfigurationError(origin_ + ": key '" + key + "' must be true or false");
}

std::vector<double> Table::numbers(const std::string& key) const {
  const Value& v = at(key);
  const auto* arr = std::get_if<Value::Array>(&v.data);
  if (!arr) throw ConfigurationError(origin_ + ": key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& item : *arr) {
    const auto* d = std::get_if<double>(&item);
    if (!d) throw ConfigurationError(origin_ + ": key '" + key + "' must be an array of numbers");
    out.push_back(*d);
  }
  return out;
}

std::optional<std::vector<double>> Table::numbers_opt(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return numbers(key);
}

std::vector<std::string> Table::unused() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (!touched_.count(key)) out.push_back(key);
  }
  return out;
}

}  // namespace symred::cli
