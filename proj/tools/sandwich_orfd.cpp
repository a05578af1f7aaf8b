// Command-line front end: derive-params | spectrum | simulate | observability.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orfd/config.hpp"
#include "orfd/errors.hpp"
#include "orfd/experiments.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  std::vector<std::string> overrides;
  bool quiet = false;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw orfd::ValidationError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw orfd::ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

int run(const std::string& command, const Options& opt) {
  nlohmann::json j = opt.config_path.empty() ? nlohmann::json::object() : read_json_file(opt.config_path);
  for (const auto& o : opt.overrides) orfd::apply_override(j, o);
  if (!opt.out.empty()) j["output"] = opt.out;
  if (opt.seed_set) j["seed"] = opt.seed;
  if (opt.workers > 0) j["workers"] = opt.workers;

  const orfd::ExperimentConfig cfg = orfd::config_from_json(j);
  const orfd::CommandResult res = orfd::run_command(command, cfg);
  if (!opt.quiet) std::cout << res.summary.dump(2) << '\n';
  if (res.exit_code != orfd::kExitOk) {
    std::cerr << command << ": one or more sweep items failed (see summary)\n";
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-reduced finite-difference experiments for the three-layer sandwich beam"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"derive-params", "Derive B, C, P from layer data and report the large-shear margin"},
      {"spectrum", "Eigenvalues of the first-order system per (scheme, N, xi)"},
      {"simulate", "Implicit-midpoint trajectories with energy and tip-velocity records"},
      {"observability", "Boundary observability certificates (xi = 0, T > 6)"}};

  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opt.config_path, "JSON experiment file")->check(CLI::ExistingFile);
    sub->add_option("-o,--out", opt.out, "Output directory (overrides 'output')");
    sub->add_option("--seed", opt.seed, "PRNG seed (overrides 'seed')")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    sub->add_option("-w,--workers", opt.workers, "Concurrent sweep items")->check(CLI::Range(1, 1024));
    sub->add_option("--set", opt.overrides, "Override a config key: key=value (value is JSON)");
    sub->add_flag("-q,--quiet", opt.quiet, "Do not print the summary");
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : orfd::kExitValidation;
  }

  try {
    return run(chosen, opt);
  } catch (const orfd::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n'
              << "usage: sandwich-orfd " << (chosen.empty() ? "<command>" : chosen) << " --help\n";
    return orfd::kExitValidation;
  } catch (const orfd::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return orfd::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return orfd::kExitNumerical;
  }
}
