#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "blotto/cli.hpp"

int main(int argc, char** argv) {
  using blotto::cli::Command;
  blotto::cli::RunConfig cfg;

  CLI::App app{"Lottery Colonel Blotto solver"};
  app.require_subcommand(1);

  const auto add = [&](Command c, const std::string& help) {
    CLI::App* sub = app.add_subcommand(blotto::cli::command_name(c), help);
    sub->callback([&cfg, c] { cfg.command = c; });
    sub->add_option("--out", cfg.output_path, "Write output here instead of stdout");
    return sub;
  };
  const auto with_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance_path, "Instance JSON file")->required();
    return sub;
  };

  with_instance(add(Command::kSolveBr, "Follower best response to the instance's commit_a"));
  with_instance(add(Command::kSolveCommitment, "Leader's optimal commitment"));
  with_instance(add(Command::kSolveNash, "Simultaneous-move equilibrium"));
  with_instance(add(Command::kCompare, "Commitment vs simultaneous play, as JSON"));

  CLI::App* sweep = with_instance(add(Command::kSweep, "Budget-ratio sweep as CSV"));
  sweep->add_option("--r-min", cfg.r_min, "Smallest x_a / x_b")->capture_default_str();
  sweep->add_option("--r-max", cfg.r_max, "Largest x_a / x_b")->capture_default_str();
  sweep->add_option("--steps", cfg.steps, "Grid points (>= 2)")->capture_default_str();

  CLI::App* verify = with_instance(add(Command::kVerify, "Cross-check solvers against the grid oracle"));
  verify->add_option("--resolution", cfg.grid.resolution, "Grid subdivisions")
      ->capture_default_str();
  verify->add_option("--refine", cfg.grid.refinement_rounds, "Refinement rounds")
      ->capture_default_str();

  CLI::App* gen = add(Command::kGen, "Random instance");
  gen->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  gen->add_option("--n", cfg.n, "Battlefields")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : blotto::cli::kExitInput;
  }
  return blotto::cli::run(cfg, std::cout, std::cerr);
}
