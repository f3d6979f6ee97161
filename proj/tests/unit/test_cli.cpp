#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"

using namespace hg::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(HG_CONFIG_DIR) + "/" + name);
  return json::parse(in);
}

RunOutcome run_config(const std::string& command, json config, std::optional<std::uint64_t> seed = std::nullopt,
                      bool check = false) {
  RunConfig cfg;
  cfg.command = command;
  cfg.config = std::move(config);
  cfg.seed = seed;
  cfg.check = check;
  return run(cfg);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hg_cli_tests_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(HG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("stochastic runs are reproducible from the seed") {
  const auto a = run_config("hitting-measure", load("hitting_2z.json"), 5);
  const auto b = run_config("hitting-measure", load("hitting_2z.json"), 5);
  const auto c = run_config("hitting-measure", load("hitting_2z.json"), 6);
  REQUIRE(a.exit_code == kExitOk);
  CHECK(a.digest == b.digest);
  CHECK(a.csv == b.csv);
  CHECK(a.digest != c.digest);
  CHECK(a.digest == sha256_hex(a.csv));
}

TEST_CASE("every row carries an error column or the exact marker") {
  for (const auto& [cmd, file] : std::vector<std::pair<std::string, std::string>>{
           {"induce", "induce_2z.json"}, {"verify", "verify_h3.json"}, {"dimension", "dinfty.json"}}) {
    const auto out = run_config(cmd, load(file), 3);
    REQUIRE(out.exit_code == kExitOk);
    std::istringstream lines(out.csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header.find("stderr") != std::string::npos);
    std::string line;
    while (std::getline(lines, line)) {
      const std::string last = line.substr(line.rfind(',') + 1);
      CAPTURE(line);
      const bool numeric = !last.empty() && last.find_first_not_of("0123456789.e-+") == std::string::npos;
      CHECK((numeric || last == kExactMarker || last == "verdict" || last == "sampled_lower_bound"));
    }
  }
}

TEST_CASE("schema errors carry a JSON pointer") {
  const auto bad = run_config("verify", load("bad_weights.json"));
  CHECK(bad.exit_code == kExitSchema);
  CHECK(bad.message.find("/measure") != std::string::npos);
  CHECK(bad.message.find("99/100") != std::string::npos);

  json cfg = load("verify_h3.json");
  cfg["group"]["kind"] = "free_group";
  const auto kind = run_config("verify", cfg);
  CHECK(kind.exit_code == kExitSchema);
  CHECK(kind.message.find("/group/kind") != std::string::npos);

  json pts = load("induce_2z.json");
  pts["points"][1] = {1, 2};
  const auto p = run_config("induce", pts, 1);
  CHECK(p.exit_code == kExitSchema);
  CHECK(p.message.find("/points/1") != std::string::npos);
}

TEST_CASE("stochastic commands need a seed") {
  json cfg = load("hitting_2z.json");
  cfg.erase("seed");
  const auto out = run_config("hitting-measure", cfg);
  CHECK(out.exit_code == kExitSchema);
  CHECK(out.message.find("/seed") != std::string::npos);
  CHECK(run_config("hitting-measure", cfg, 4).exit_code == kExitOk);
}

TEST_CASE("resource and censoring failures map to their exit codes") {
  json over = load("homogenize_mod2.json");
  over["x"] = {std::int64_t{1} << 62};  // x^2 leaves int64
  over.erase("expect");
  CHECK(run_config("homogenize", over).exit_code == kExitResource);

  json cens = load("dinfty.json");
  cens["max_steps"] = 1;
  cens["subgroup"] = {{"quotient", "core"}};
  CHECK(run_config("hitting-measure", cens, 1).exit_code == kExitCensoring);
}

TEST_CASE("check mode compares against expectations") {
  CHECK(run_config("verify", load("verify_h3.json"), std::nullopt, true).exit_code == kExitOk);
  json wrong = load("verify_h3.json");
  wrong["expect"]["max_residual"] = 1;
  const auto w = run_config("verify", wrong, std::nullopt, true);
  CHECK(w.exit_code == kExitCheckFailed);
  CHECK(w.message.find("FAIL max_residual") != std::string::npos);

  json none = load("verify_h3.json");
  none.erase("expect");
  CHECK(run_config("verify", none, std::nullopt, true).exit_code == kExitSchema);

  json tight = load("hitting_2z.json");
  tight["expect"] = {{"p(0)", {{"value", 0.6}, {"tolerance", 0.01}}}};
  CHECK(run_config("hitting-measure", tight, 1, true).exit_code == kExitCheckFailed);
}

TEST_CASE("divergent maps are refused") {
  const auto out = run_config("linearize", load("linearize_sqrt_shear.json"));
  CHECK(out.exit_code != kExitOk);
  CHECK(out.message.find("defect") != std::string::npos);
}

TEST_CASE("binary writes csv and manifest") {
  const fs::path dir = scratch("out");
  const std::string cfg = std::string(HG_CONFIG_DIR) + "/induce_2z.json";
  REQUIRE(run_binary("induce --config " + cfg + " --seed 9 --out " + dir.string()) == 0);
  const std::string csv = slurp(dir / "induce.csv");
  const json manifest = json::parse(slurp(dir / "induce.manifest.json"));
  CHECK(manifest["digest"]["value"] == sha256_hex(csv));
  CHECK(manifest["seed_flag"] == 9);
  CHECK(manifest["version"] == kToolVersion);
  CHECK(manifest["exit_code"] == 0);
  CHECK(manifest["config"]["samples"] == 100000);
  CHECK(manifest.contains("wall_time_seconds"));

  const fs::path dir2 = scratch("out2");
  REQUIRE(run_binary("induce --config " + cfg + " --seed 9 --out " + dir2.string()) == 0);
  CHECK(slurp(dir2 / "induce.csv") == csv);
}

TEST_CASE("binary exit codes") {
  const std::string dir = HG_CONFIG_DIR;
  CHECK(run_binary("verify --config " + dir + "/bad_weights.json") == kExitSchema);
  CHECK(run_binary("verify --config " + dir + "/verify_h3.json --check") == kExitOk);
  CHECK(run_binary("straighten --config " + dir + "/straighten_dinf_extended.json --check") == kExitOk);
  CHECK(run_binary("hitting-measure --config " + dir + "/dinfty.json") == kExitSchema);
  CHECK(run_binary("verify") == kExitSchema);
  CHECK(run_binary("no-such-command") != kExitOk);
}

TEST_CASE("bundled configs pass their own checks") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"dimension", "dinfty.json"},
      {"hitting-measure", "hitting_2z_biased.json"},
      {"constants", "constants_2z.json"},
      {"verify", "verify_biased_z.json"},
      {"lipnorm", "lipnorm_z2.json"},
      {"liouville", "liouville_h3.json"},
      {"defect", "defect_mod2_shear.json"},
      {"homogenize", "homogenize_mod2.json"},
      {"linearize", "linearize_mod2_shear.json"},
      {"straighten", "straighten_mod2_shear.json"},
      {"straighten", "straighten_heisenberg_linear.json"}};
  for (const auto& [cmd, file] : cases) {
    CAPTURE(file);
    const auto out = run_config(cmd, load(file), 7, true);
    CHECK(out.exit_code == kExitOk);
  }
}
