#include <cstdio>
#include <filesystem>
#include <iostream>

#include "artifacts.hpp"
#include "run.hpp"
#include "symred/error.hpp"

namespace fs = std::filesystem;

namespace symred::cli {

namespace {

struct Row {
  std::string scenario;
  std::string check;
  std::string value;
  std::string comparison;
  std::string tolerance;
  bool passed;
};

std::string number_cell(const Json& j) {
  if (j.is_null()) return "nan";
  if (!j.is_number()) throw ConfigurationError("check value is not a number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", j.get<double>());
  return buf;
}

std::vector<Row> rows_from(const fs::path& path) {
  const Json doc = read_json(path);
  std::vector<Row> rows;
  try {
    const std::string scenario = doc.at("scenario").get<std::string>();
    for (const auto& c : doc.at("checks")) {
      rows.push_back({scenario, c.at("name").get<std::string>(), number_cell(c.at("value")),
                      c.at("comparison").get<std::string>(), number_cell(c.at("tolerance")),
                      c.at("passed").get<bool>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError("malformed report '" + path.string() + "': " + e.what());
  }
  return rows;
}

}  // namespace

int report(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
  if (paths.empty()) {
    err << "symred: error: report needs at least one artifact path\n";
    return kUsageError;
  }
  std::vector<Row> rows;
  try {
    for (const auto& p : paths) {
      fs::path path = p;
      if (fs::is_directory(path)) path /= "report.json";
      if (!fs::exists(path)) throw ConfigurationError("artifact not found: '" + path.string() + "'");
      for (auto& r : rows_from(path)) rows.push_back(std::move(r));
    }
  } catch (const Error& e) {
    err << "symred: error: " << e.what() << '\n';
    return kUsageError;
  }

  std::size_t w_s = 8;
  std::size_t w_c = 5;
  for (const auto& r : rows) {
    w_s = std::max(w_s, r.scenario.size());
    w_c = std::max(w_c, r.check.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  out << pad("scenario", w_s) << "  " << pad("check", w_c) << "  " << pad("value", 10) << "     "
      << pad("tolerance", 10) << "  result\n";
  bool all = true;
  for (const auto& r : rows) {
    out << pad(r.scenario, w_s) << "  " << pad(r.check, w_c) << "  " << pad(r.value, 10) << "  "
        << r.comparison << " " << pad(r.tolerance, 10) << "  " << (r.passed ? "PASS" : "FAIL") << '\n';
    all = all && r.passed;
  }
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.passed; });
  out << rows.size() << " checks, " << failed << " failed\n";
  return all ? kPass : kVerificationFailed;
}

}  // namespace symred::cli
