// purposedyn: scenario-driven front end for the purpose-investment model.
//
//   purposedyn <subcommand> --scenario <file> --out <dir> [--grid N]
//              [--horizon T] [--m0 X] [--gamma G]... [--shift S]...
//
// Exit status: 0 success, 1 invalid input, 2 infeasible request, 3 internal.

#include <iostream>

#include <CLI11.hpp>

#include "purposedyn/error.hpp"
#include "purposedyn/report.hpp"
#include "purposedyn/scenario.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic model of firm investment in workplace purpose"};
  app.set_version_flag("--version", purposedyn::kToolVersion);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  purposedyn::RunOptions opts;
  std::size_t grid = 0;
  int horizon = 0;
  double m0 = 0.0;

  const std::pair<const char*, const char*> commands[] = {
      {"steady-state", "closed-form steady state with a grid dynamic-programming cross-check"},
      {"path", "transition path of meaning and purpose from the initial meaning"},
      {"compare-ownership", "investor-owned versus worker-owned steady state"},
      {"comparative-statics", "finite-difference sensitivities against predicted signs"},
      {"sosd-sweep", "mean-preserving spreads of a lognormal ability distribution"},
      {"fosd-shift", "upward support shifts of an empirical ability distribution"},
      {"validate", "check a scenario and print its ability moments"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--grid", grid, "dynamic-programming grid size")->check(CLI::Range(3, 100000));
    sub->add_option("--horizon", horizon, "path horizon")->check(CLI::Range(1, 1000000));
    sub->add_option("--m0", m0, "initial meaning")->check(CLI::NonNegativeNumber);
    sub->add_option("--gamma", opts.gammas, "spread sizes (repeatable)");
    sub->add_option("--shift", opts.shifts, "support shifts (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--grid")) opts.grid = grid;
  if (sub->count("--horizon")) opts.horizon = horizon;
  if (sub->count("--m0")) opts.m0 = m0;

  try {
    const purposedyn::Scenario scenario = purposedyn::load_scenario(scenario_path);
    purposedyn::run_command(sub->get_name(), scenario, out_dir, opts, std::cout);
  } catch (const purposedyn::InfeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const purposedyn::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const purposedyn::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
