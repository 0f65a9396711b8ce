// emlab: batch runner. Exit 0 when every declared check passes, 2 when one
// fails, 1 on usage or config errors.

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "emlab/linear.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 7;
  int jobs = 1;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key = value config file")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory for CSV files");
  sub->add_option("--seed", c.seed, "seed for randomized suites");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--set", c.sets, "override a config key (KEY=VALUE, repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace emlab::cli;
  CLI::App app{"Finite-difference lab for -Delta u + g(u) = mu with measure data"};
  app.require_subcommand(1);

  Common common;
  // flag values that land in the config, keyed by subcommand
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> about{
      {"solve-linear", "linear problem over a grid family; estimate checks"},
      {"solve-nonlinear", "semilinear solve by one route; writes the iteration trace"},
      {"reduced-measure", "truncation ladder and reduced measure per grid"},
      {"threshold-scan", "exponential or polynomial threshold scan"},
      {"hausdorff", "Hausdorff content and optimal cover of a point set"},
      {"frostman", "density bound of a point measure"},
      {"decompose", "greedy decomposition against alpha H^s_delta"},
      {"capacity", "capacitary potential and equivalence checks"},
      {"suite", "property battery of one module or all"},
      {"acceptance", "acceptance criteria, one line each"},
  };
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    add_common(sub, common);
    subs[name] = sub;
  }
  subs["solve-nonlinear"]->add_option("--route", flags["solve-nonlinear"]["route"], "energy | bracket | contraction");
  subs["solve-nonlinear"]->add_option("--g", flags["solve-nonlinear"]["g"], "nonlinearity, e.g. power:3");
  subs["reduced-measure"]->add_option("--g", flags["reduced-measure"]["g"], "nonlinearity, e.g. power:3");
  subs["threshold-scan"]->add_option("--family", flags["threshold-scan"]["family"], "exp | poly");
  subs["threshold-scan"]->add_option("--masses", flags["threshold-scan"]["masses"], "comma separated, e.g. 2pi,3pi");
  subs["threshold-scan"]->add_option("--ps", flags["threshold-scan"]["ps"], "comma separated exponents");
  subs["threshold-scan"]->add_option("--hs", flags["threshold-scan"]["hs"], "comma separated grid sizes");
  for (const char* g : {"hausdorff", "frostman", "decompose"}) {
    subs[g]->add_option("--s", flags[g]["s"], "dimension s");
    subs[g]->add_option("--delta", flags[g]["delta"], "scale delta (inf allowed)");
  }
  subs["hausdorff"]->add_option("--mode", flags["hausdorff"]["mode"], "exact | greedy");
  std::string suite_name;
  bool inject = false;
  subs["suite"]->add_option("name", suite_name, "linear | semilinear | reduced | geom | capacity | all")->required();
  subs["suite"]->add_flag("--inject-fault", inject, "corrupt one exact comparison per suite");
  std::vector<int> ids;
  subs["acceptance"]->add_option("ids", ids, "criterion numbers (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Config cfg = common.config.empty() ? Config{} : Config::load(common.config);
    for (const auto& [key, value] : flags[name])
      if (!value.empty()) cfg.set(key, value);
    if (name == "suite") {
      cfg.set("suite", suite_name);
      if (inject) cfg.set("inject_fault", "true");
    }
    if (name == "acceptance" && !ids.empty()) {
      std::string list;
      for (int id : ids) list += std::to_string(id) + " ";
      cfg.set("criteria", list);
    }
    for (const std::string& kv : common.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.require_known(command_keys(name));

    RunOptions opts;
    opts.out_dir = common.out;
    opts.seed = common.seed;
    opts.jobs = common.jobs;
    opts.log = &std::cout;
    const std::vector<emlab::Check> checks = find_command(name)(cfg, opts);
    std::size_t failed = 0;
    for (const emlab::Check& c : checks) failed += !c.pass;
    std::cout << name << ": " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return exit_code(checks);
  } catch (const ConfigError& e) {
    std::cerr << "emlab: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "emlab: " << e.what() << '\n';
    return 1;
  } catch (const emlab::ConvergenceError& e) {
    std::cerr << "emlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "emlab: " << e.what() << '\n';
    return 1;
  }
}
