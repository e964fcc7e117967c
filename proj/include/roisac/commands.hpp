#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roisac/io.hpp"
#include "roisac/scenario.hpp"

namespace roisac {

// Each command writes <out>/<name>.csv (some also <name>.svg) and returns the
// emitted table so callers can assert on the numbers without reparsing.
io::Table cmd_link_budget(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_retro_sweep(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_sweep_ratio(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_range(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_multi_target(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_tdd(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_wdd(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_localize(const Scenario& sc, const std::filesystem::path& out);
io::Table cmd_ber_validate(const Scenario& sc, const std::filesystem::path& out);

std::vector<std::string> command_names();

// Dispatch by subcommand name; throws ConfigError for an unknown name.
io::Table run_command(const std::string& name, const Scenario& sc,
                      const std::filesystem::path& out);

} // namespace roisac
