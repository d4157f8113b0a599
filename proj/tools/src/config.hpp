#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace symred::cli {

// Values of the key-table format: strings, numbers, booleans and flat arrays.
struct Value {
  using Array = std::vector<std::variant<double, std::string>>;
  std::variant<double, bool, std::string, Array> data;
  int line = 0;
};

// Minimal TOML-style reader: [section] headers (dotted names allowed),
// key = value pairs, '#' comments, strings in double quotes, numbers,
// true/false and single-line arrays. Keys are stored as "section.key".
class Table {
 public:
  static Table parse(const std::string& text, const std::string& origin = "<config>");
  static Table load(const std::string& path);

  bool empty() const { return values_.empty(); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string string(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  std::uint64_t seed(const std::string& key) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::optional<std::vector<double>> numbers_opt(const std::string& key) const;

  void set(const std::string& key, Value value) { values_[key] = std::move(value); }
  // Keys present in the file but never read; reported as configuration errors.
  std::vector<std::string> unused() const;

 private:
  const Value& at(const std::string& key) const;

  std::map<std::string, Value> values_;
  mutable std::map<std::string, bool> touched_;
  std::string origin_;
};

}  // namespace symred::cli
