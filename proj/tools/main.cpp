#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace coherence::cli;

int main(int argc, char** argv) {
  CLI::App app{"Coherence of quantum channels: measures, simulations, capacity curves"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string out_path = cfg.output_path.string();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--tol", cfg.tolerance, "verification tolerance")->capture_default_str();
  app.add_option("--out", out_path, "output directory")->capture_default_str();
  app.add_option("--grid", cfg.grid_points, "theta grid points for figures")->capture_default_str();

  auto* figures = app.add_subcommand("figures", "write fig1.csv and fig2.csv");

  std::string state_file;
  std::string measure;
  auto* compute = app.add_subcommand("compute", "coherence of a state from a JSON file");
  compute->add_option("state_file", state_file)->required();
  compute->add_option("measure", measure, "cr | cf | rank")->required();

  std::string channel_file;
  std::string protocol;
  auto* simulate = app.add_subcommand("simulate", "build and verify a simulation protocol");
  simulate->add_option("channel_file", channel_file)->required();
  simulate->add_option("protocol", protocol, "unitary | teleport | sio")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("suite", suite, "all | simulate | measures | power | feasibility")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsageError;
  }
  cfg.output_path = out_path;
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  }

  if (*figures) return cmd_figures(cfg, std::cout, std::cerr);
  if (*compute) return cmd_compute(state_file, measure, cfg, std::cout, std::cerr);
  if (*simulate) return cmd_simulate(channel_file, protocol, cfg, std::cout, std::cerr);
  return cmd_verify(suite, cfg, std::cout, std::cerr);
}
