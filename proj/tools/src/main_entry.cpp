#include <iostream>

#include <CLI11.hpp>

#include "run.hpp"

namespace symred::cli {

int main_entry(int argc, char** argv) {
  CLI::App app{"Poisson-structure verification and simulation campaigns", "symred"};
  app.require_subcommand(1);

  std::string kind;
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::vector<std::string> paths;

  auto add_run = [&](const std::string& name, const std::vector<std::string>& kinds) {
    auto* sub = app.add_subcommand(name, name == "verify" ? "Run a verification scenario"
                                                          : "Run a simulation scenario");
    sub->add_option("kind", kind, "Scenario kind")->required()->check(CLI::IsMember(kinds));
    sub->add_option("--config", config, "Scenario configuration file")->required();
    sub->add_option("--out", out, "Output directory (overrides [run] output)");
    sub->add_option("--seed", seed, "Seed (overrides [run] seed)");
    return sub;
  };
  auto* verify = add_run("verify", {"jacobi", "bianchi", "minimal-coupling", "reduction"});
  auto* simulate = add_run("simulate", {"particle", "maxwell"});
  auto* rep = app.add_subcommand("report", "Summarise report.json artifacts");
  rep->add_option("paths", paths, "report.json files or scenario directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (rep->parsed()) return report(paths, std::cout, std::cerr);

  RunRequest req;
  req.mode = (verify->parsed() ? "verify-" : "simulate-") + kind;
  req.config_path = config;
  if (!out.empty()) req.out_dir = out;
  if (app.got_subcommand(verify) ? verify->count("--seed") : simulate->count("--seed")) req.seed = seed;
  return run(req, std::cerr);
}

}  // namespace symred::cli
