#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "artifacts.hpp"
#include "config.hpp"
#include "run.hpp"
#include "symred/error.hpp"

namespace fs = std::filesystem;
using namespace symred;
using namespace symred::cli;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("symred_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int shell(const std::string& args) {
  const std::string cmd = std::string(SYMRED_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return std::string(SYMRED_CONFIG_DIR) + "/" + name; }

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesSectionsAndValues) {
  const Table t = Table::parse(R"(
# comment
[run]
mode = "verify-jacobi"   # trailing
seed = 1_000
[tolerances.jacobi]
max = 1e-9
flag = true
box = [-1.5, 2]
)");
  EXPECT_EQ(t.string("run.mode"), "verify-jacobi");
  EXPECT_EQ(t.seed("run.seed"), 1000u);
  EXPECT_EQ(t.number("tolerances.jacobi.max"), 1e-9);
  EXPECT_TRUE(t.boolean_or("tolerances.jacobi.flag", false));
  EXPECT_EQ(t.numbers("tolerances.jacobi.box"), (std::vector<double>{-1.5, 2.0}));
  EXPECT_EQ(t.integer_or("missing.key", 7), 7);
  EXPECT_TRUE(t.unused().empty());
}

TEST(Config, ReportsUnusedKeys) {
  const Table t = Table::parse("[a]\nx = 1\ny = 2\n");
  (void)t.number("a.x");
  EXPECT_EQ(t.unused(), std::vector<std::string>{"a.y"});
}

TEST(Config, Errors) {
  EXPECT_THROW(Table::parse("[a]\nx = 1\nx = 2\n"), ConfigurationError);
  EXPECT_THROW(Table::parse("x = \"open\n"), ConfigurationError);
  EXPECT_THROW(Table::parse("[a\n"), ConfigurationError);
  EXPECT_THROW(Table::parse("x = 1.2.3\n"), ConfigurationError);
  const Table t = Table::parse("x = \"s\"\ny = 1.5\n");
  EXPECT_THROW(t.number("x"), ConfigurationError);
  EXPECT_THROW(t.integer("y"), ConfigurationError);
  EXPECT_THROW(t.string("z"), ConfigurationError);
  EXPECT_THROW(Table::load("/nonexistent/file.toml"), ConfigurationError);
}

TEST(Artifacts, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Artifacts, SnapshotRoundTrip) {
  TempDir dir;
  const GridSpec grid{8, 2.0};
  const FieldState s = random_solenoidal_state(grid, 3);
  const auto files = write_snapshot(dir.path(), "snap", s, 0.25);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(fs::file_size(dir.path() / "snap.bin"), 6u * 512u * 8u);
  const Json meta = read_json(dir.path() / "snap.json");
  EXPECT_EQ(meta["time"].get<double>(), 0.25);
  const FieldState back = read_snapshot(dir.path() / "snap.json");
  EXPECT_EQ(back.grid(), grid);
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(back.e.c[c], s.e.c[c]);
    EXPECT_EQ(back.b.c[c], s.b.c[c]);
  }
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  const auto out = [&](const std::string& n) { return " --out " + (dir.path() / n).string(); };
  EXPECT_EQ(shell("verify reduction --config " + config("reduction_uniform_b.toml") + out("a")), 0);
  EXPECT_EQ(shell("verify reduction --config " + config("reduction_so3_gate.toml") + out("b")), 1);
  EXPECT_EQ(shell("verify jacobi --config " + config("jacobi_injected.toml") + out("c")), 1);
  EXPECT_EQ(shell("verify jacobi --config " + config("reduction_uniform_b.toml") + out("d")), 2);

  write(dir.path() / "empty.toml", "");
  EXPECT_EQ(shell("verify jacobi --config " + (dir.path() / "empty.toml").string() + out("e")), 2);
  write(dir.path() / "preset.toml", "[run]\nmode = \"verify-jacobi\"\n[potential]\npreset = \"monopole\"\n");
  EXPECT_EQ(shell("verify jacobi --config " + (dir.path() / "preset.toml").string() + out("f")), 2);
  write(dir.path() / "typo.toml",
        "[run]\nmode = \"verify-reduction\"\n[potential]\npreset = \"uniform-b\"\nb = 1.0\n"
        "[reduction]\nxi = [1.0]\nxii = 2\n");
  EXPECT_EQ(shell("verify reduction --config " + (dir.path() / "typo.toml").string() + out("g")), 2);
  EXPECT_EQ(shell("verify frobnicate --config x"), 2);
  EXPECT_EQ(shell(""), 2);
}

TEST(Cli, ReportExitCodes) {
  TempDir dir;
  std::ostringstream log;
  EXPECT_EQ(run_table("verify-reduction", Table::load(config("reduction_uniform_b.toml")),
                      (dir.path() / "pass").string(), std::nullopt, log),
            kPass);
  EXPECT_EQ(run_table("verify-bianchi", Table::load(config("bianchi_injected.toml")),
                      (dir.path() / "fail").string(), std::nullopt, log),
            kVerificationFailed);
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(report({(dir.path() / "pass").string()}, out, err), 0);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
  EXPECT_EQ(report({(dir.path() / "pass").string(), (dir.path() / "fail" / "report.json").string()}, out, err),
            1);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
  EXPECT_EQ(report({(dir.path() / "missing").string()}, out, err), 2);
  write(dir.path() / "bad.json", "{not json");
  EXPECT_EQ(report({(dir.path() / "bad.json").string()}, out, err), 2);
}

TEST(Cli, ReportJsonContents) {
  TempDir dir;
  std::ostringstream log;
  ASSERT_EQ(run_table("verify-reduction", Table::load(config("reduction_so3_gate.toml")),
                      dir.path().string(), std::nullopt, log),
            kVerificationFailed);
  const Json r = read_json(dir.path() / "report.json");
  EXPECT_EQ(r["mode"], "verify-reduction");
  EXPECT_FALSE(r["passed"].get<bool>());
  EXPECT_EQ(r["gate_offending_pair"], Json::array({1, 2}));
}

TEST(Cli, SeededRunsAreByteIdentical) {
  TempDir dir;
  std::ostringstream log;
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(run_table("verify-jacobi", Table::load(config("jacobi_uniform_b.toml")),
                        (dir.path() / name).string(), 42, log),
              kPass);
  }
  for (const auto& entry : fs::directory_iterator(dir.path() / "a")) {
    const fs::path other = dir.path() / "b" / entry.path().filename();
    ASSERT_TRUE(fs::exists(other));
    EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
  }
  const Json r = read_json(dir.path() / "a" / "report.json");
  EXPECT_EQ(r["seed"].get<std::uint64_t>(), 42u);
}

TEST(Cli, MaxwellWritesSnapshots) {
  TempDir dir;
  write(dir.path() / "m.toml",
        "[run]\nmode = \"simulate-maxwell\"\n[grid]\nn = 8\n[maxwell]\ninitial = \"plane-wave\"\n"
        "[integrator]\nstep = 0.005\nduration = 0.5\n");
  std::ostringstream log;
  ASSERT_EQ(run_table("simulate-maxwell", Table::load((dir.path() / "m.toml").string()),
                      (dir.path() / "out").string(), std::nullopt, log),
            kPass);
  const FieldState last = read_snapshot(dir.path() / "out" / "final.json");
  const FieldState exact = plane_wave_at(GridSpec{8, last.grid().length}, 0.5);
  EXPECT_LE((last.e - exact.e).max_abs(), 1e-6);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "diagnostics.csv"));
}
