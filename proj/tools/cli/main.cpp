#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace hg::cli;
  CLI::App app{"Random walks and Lipschitz harmonic functions on polynomial-growth groups"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool check = false;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, "run " + name);
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "seed for Monte Carlo operations (overrides the config)");
    sub->add_option("--out", out_dir, "directory for <command>.csv and <command>.manifest.json");
    sub->add_flag("--check", check, "compare results with the config's \"expect\" block");
  }
  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) cfg.seed = seed;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  cfg.check = check;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    try {
      cfg.config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << config_path << " is not valid JSON: " << e.what() << '\n';
      return kExitSchema;
    }
  } else if (cfg.command != "check-all") {
    std::cerr << "error: --config is required for " << cfg.command << '\n';
    return kExitSchema;
  }

  const RunOutcome outcome = run(cfg);
  if (!cfg.out_dir && !outcome.csv.empty()) std::cout << outcome.csv;
  if (!outcome.message.empty()) {
    if (outcome.exit_code == kExitOk || outcome.exit_code == kExitCheckFailed)
      std::cerr << outcome.message;
    else
      std::cerr << "error: " << outcome.message << '\n';
  }
  if (cfg.out_dir) std::cerr << "digest sha256:" << outcome.digest << '\n';
  return outcome.exit_code;
}
