#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "emlab/check.hpp"

namespace emlab::cli {

struct RunOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 7;
  int jobs = 1;
  /// Human-readable summary; CSV goes to out_dir.
  std::ostream* log = nullptr;
};

/// Declared checks of one run. Exit code 0 iff all pass, else 2.
using Command = std::vector<Check> (*)(const Config&, const RunOptions&);

/// Subcommand names in help order.
const std::vector<std::string>& command_names();
/// Throws ConfigError for an unknown name.
Command find_command(const std::string& name);

/// Keys each subcommand accepts; anything else is a config error.
const std::set<std::string>& command_keys(const std::string& name);

int exit_code(const std::vector<Check>& checks);

}  // namespace emlab::cli
