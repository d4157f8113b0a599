#include "artifacts.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "symred/error.hpp"

namespace symred::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ShapeError("csv row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
  std::ofstream out(path_, std::ios::binary);
  out << buffer_;
}

void write_json(const std::filesystem::path& path, const Json& document) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write '" + path.string() + "'");
  out << document.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

namespace {

const char* kComponents[] = {"Ex", "Ey", "Ez", "Bx", "By", "Bz"};

void put_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits & 0xffU));
    bits >>= 8;
  }
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

std::vector<std::string> write_snapshot(const std::filesystem::path& directory, const std::string& stem,
                                        const FieldState& state, double time) {
  const GridSpec& g = state.grid();
  std::string bytes;
  bytes.reserve(6 * g.points() * 8);
  for (const auto* field : {&state.e, &state.b}) {
    for (const auto& comp : field->c) {
      for (double v : comp) put_le(bytes, v);
    }
  }
  const std::string bin = stem + ".bin";
  const std::string side = stem + ".json";
  {
    std::ofstream out(directory / bin, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  Json meta;
  meta["data_file"] = bin;
  meta["grid"] = {{"n", g.n}, {"length", g.length}};
  meta["components"] = Json::array();
  for (const char* c : kComponents) meta["components"].push_back(c);
  meta["layout"] = "component-major; each component row-major over (ix, iy, iz), iz fastest";
  meta["dtype"] = "float64";
  meta["endianness"] = "little";
  meta["time"] = time;
  write_json(directory / side, meta);
  return {bin, side};
}

FieldState read_snapshot(const std::filesystem::path& sidecar) {
  const Json meta = read_json(sidecar);
  try {
    if (meta.at("dtype") != "float64" || meta.at("endianness") != "little") {
      throw ConfigurationError("unsupported snapshot encoding in '" + sidecar.string() + "'");
    }
    GridSpec g{meta.at("grid").at("n").get<int>(), meta.at("grid").at("length").get<double>()};
    g.validate();
    const auto bin = sidecar.parent_path() / meta.at("data_file").get<std::string>();
    std::ifstream in(bin, std::ios::binary);
    if (!in) throw ConfigurationError("cannot read '" + bin.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    if (bytes.size() != 6 * g.points() * 8) {
      throw ConfigurationError("snapshot '" + bin.string() + "' has the wrong size");
    }
    FieldState state(g);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t offset = 0;
    for (auto* field : {&state.e, &state.b}) {
      for (auto& comp : field->c) {
        for (double& v : comp) {
          v = get_le(p + offset);
          offset += 8;
        }
      }
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError("malformed snapshot sidecar '" + sidecar.string() + "': " + e.what());
  }
}

}  // namespace symred::cli
