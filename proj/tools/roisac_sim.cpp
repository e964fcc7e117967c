#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roisac/commands.hpp"
#include "roisac/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retroreflective optical joint sensing and communication simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<std::string> overrides;
  bool dump_scenario = false;

  app.add_option("--scenario", scenario_path, "Scenario JSON file (defaults built in)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Root seed, overrides experiment.seed");
  app.add_option("--trials", trials, "Trial count, overrides experiment.trials");
  app.add_option("--set", overrides, "Dotted-path override, key=value; repeatable");
  app.add_flag("--dump-scenario", dump_scenario, "Print the effective scenario JSON and exit");

  for (const auto& name : roisac::command_names())
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  roisac::Scenario sc;
  try {
    sc = scenario_path.empty() ? roisac::default_scenario()
                               : roisac::load_scenario_file(scenario_path);
    for (const auto& kv : overrides) roisac::apply_override(sc, kv);
    if (seed) sc.experiment.seed = *seed;
    if (trials) sc.experiment.trials = *trials;
    sc.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (dump_scenario) {
    std::cout << roisac::scenario_json(sc);
    return kExitOk;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    roisac::run_command(command, sc, std::filesystem::path(out_dir));
  } catch (const roisac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
