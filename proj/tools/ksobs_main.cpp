// ksobs: command-line front end for the observer simulator.
//
//   ksobs simulate         --config run.cfg [--out dir] [--set key=value ...]
//   ksobs sweep            --config sweep.cfg ...
//   ksobs cps-verify       [--config ...] [--set S_list=1,2,3]
//   ksobs validate-sensors [--config ...] [--set reference=0,1/4,1/2,3/4]
//
// Each subcommand implies a default scenario that a config file may refine
// (simulate: free or observe; sweep: sweep-lambda or sweep-S).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ksobs/errors.hpp"
#include "ksobs/runner.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> sets;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ksobs::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool mentions_key(const std::string& text, const std::vector<std::string>& sets, std::string_view key) {
  auto hit = [&](std::string_view line) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) return false;
    line.remove_prefix(first);
    if (!line.starts_with(key)) return false;
    const auto rest = line.substr(key.size()).find_first_not_of(" \t");
    return rest != std::string_view::npos && line[key.size() + rest] == '=';
  };
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (hit(line)) return true;
  }
  for (const auto& s : sets) {
    if (hit(s)) return true;
  }
  return false;
}

int execute(std::string_view default_scenario, const Options& opt,
            std::initializer_list<std::string_view> allowed) {
  try {
    std::string text = opt.config.empty() ? std::string() : read_file(opt.config);
    if (!mentions_key(text, opt.sets, "scenario")) {
      text = "scenario = " + std::string(default_scenario) + "\n" + text;
    }
    std::vector<std::string> overrides = opt.sets;
    if (!opt.out.empty()) overrides.push_back("output_dir=" + opt.out);

    const ksobs::RunSpec spec = ksobs::parse_config(text, overrides);
    const auto name = ksobs::to_string(spec.scenario);
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw ksobs::ConfigError("key 'scenario': '" + std::string(name) +
                               "' does not belong to this subcommand");
    }
    const auto outcome = ksobs::run(spec, std::cout);
    for (const auto& p : outcome.artifacts) std::cout << "wrote " << p.string() << '\n';
    return outcome.exit_code;
  } catch (const ksobs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ksobs::kExitConfigError;
  } catch (const ksobs::BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return ksobs::kExitBlowUp;
  } catch (const ksobs::ConstructionError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return ksobs::kExitVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config,-c", opt.config, "Config file (key = value lines)")->check(CLI::ExistingFile);
  cmd->add_option("--out,-o", opt.out, "Output directory (overrides output_dir)");
  cmd->add_option("--set,-s", opt.sets, "Override a config key, e.g. --set lambda=1e-7")
      ->allow_extra_args(false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kuramoto-Sivashinsky observer simulator"};
  app.require_subcommand(1);

  Options sim_opt, sweep_opt, cps_opt, val_opt;
  auto* sim = app.add_subcommand("simulate", "Single free or observer run");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over lambda or S");
  auto* cps = app.add_subcommand("cps-verify", "Check C^P_S against its closed form");
  auto* val = app.add_subcommand("validate-sensors", "Reference-set and Lambda admissibility");
  add_common(sim, sim_opt);
  add_common(sweep, sweep_opt);
  add_common(cps, cps_opt);
  add_common(val, val_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ksobs::kExitConfigError;
  }

  if (sim->parsed()) return execute("observe", sim_opt, {"free", "observe"});
  if (sweep->parsed()) return execute("sweep-lambda", sweep_opt, {"sweep-lambda", "sweep-S"});
  if (cps->parsed()) return execute("cps-verify", cps_opt, {"cps-verify"});
  return execute("sensors-validate", val_opt, {"sensors-validate"});
}
