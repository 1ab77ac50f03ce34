#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"minsum - dual block-coordinate-ascent solver for pairwise "
               "discrete energy minimization"};
  app.require_subcommand(1);

  minsum::cli::solve_options solve_opt;
  auto* solve = app.add_subcommand("solve", "Run one rule on a model file");
  solve->add_option("--model", solve_opt.model_path, "model file")->required();
  solve->add_option("--rule", solve_opt.rule, "update rule: u, m or h");
  solve->add_option("--mode", solve_opt.mode, "execution mode: seq or par");
  solve->add_option("--workers", solve_opt.workers, "parallel worker count");
  solve->add_option("--max-iters", solve_opt.max_iters,
                    "normalized-iteration cap");
  solve->add_option("--tol", solve_opt.tol,
                    "relative dual-improvement stopping threshold");
  solve->add_option("--checkpoint-every", solve_opt.checkpoint_every,
                    "checkpoint interval in normalized iterations");
  solve->add_option("--seed", solve_opt.seed, "seed recorded in the summary");
  solve->add_option("--trace", solve_opt.trace_path, "trace CSV output path");
  solve->add_option("--summary", solve_opt.summary_path,
                    "summary JSON output path");

  minsum::cli::compare_options compare_opt;
  auto* compare =
      app.add_subcommand("compare", "Run several rules on the same model");
  compare->add_option("--model", compare_opt.model_path, "model file")
      ->required();
  compare->add_option("--rules", compare_opt.rules,
                      "comma-separated rules, e.g. u,m,h");
  compare->add_option("--out", compare_opt.out_dir, "output directory")
      ->required();
  compare->add_option("--mode", compare_opt.mode, "seq or par");
  compare->add_option("--workers", compare_opt.workers, "worker count");
  compare->add_option("--max-iters", compare_opt.max_iters,
                      "normalized-iteration cap");
  compare->add_option("--tol", compare_opt.tol, "stopping threshold");
  compare->add_option("--checkpoint-every", compare_opt.checkpoint_every,
                      "checkpoint interval");
  compare->add_option("--seed", compare_opt.seed, "seed recorded in summaries");

  minsum::cli::ablate_options ablate_opt;
  auto* ablate = app.add_subcommand(
      "ablate", "Sparsify a model at several edge fractions and solve each");
  ablate->add_option("--model", ablate_opt.model_path, "model file")
      ->required();
  ablate->add_option("--fractions", ablate_opt.fractions,
                     "comma-separated keep fractions in (0,1]");
  ablate->add_option("--rules", ablate_opt.rules, "comma-separated rules");
  ablate->add_option("--seed", ablate_opt.seed, "sparsification seed");
  ablate->add_option("--out", ablate_opt.out_dir, "output directory")
      ->required();
  ablate->add_option("--mode", ablate_opt.mode, "seq or par");
  ablate->add_option("--workers", ablate_opt.workers, "worker count");
  ablate->add_option("--max-iters", ablate_opt.max_iters,
                     "normalized-iteration cap");
  ablate->add_option("--tol", ablate_opt.tol, "stopping threshold");
  ablate->add_option("--checkpoint-every", ablate_opt.checkpoint_every,
                     "checkpoint interval");

  minsum::cli::generate_options generate_opt;
  auto* generate =
      app.add_subcommand("generate", "Write a synthetic model file");
  generate->add_option("--type", generate_opt.type, "complete or grid");
  generate->add_option("--nodes", generate_opt.nodes,
                       "node count (complete graphs)");
  generate->add_option("--rows", generate_opt.rows, "grid rows");
  generate->add_option("--cols", generate_opt.cols, "grid columns");
  generate->add_option("--labels", generate_opt.labels, "labels per node");
  generate->add_option("--lambda", generate_opt.lambda,
                       "Potts penalty (grids)");
  generate->add_option("--seed", generate_opt.seed, "generator seed");
  generate->add_option("--out", generate_opt.out_path, "output model file")
      ->required();

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate a model file");
  check->add_option("--model", check_path, "model file")->required();

  std::string schedule_path;
  auto* schedule = app.add_subcommand(
      "schedule", "Print matching-schedule statistics as JSON");
  schedule->add_option("--model", schedule_path, "model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return minsum::cli::exit_usage;
  }

  try {
    if (*solve)
      return minsum::cli::cmd_solve(solve_opt);
    if (*compare)
      return minsum::cli::cmd_compare(compare_opt);
    if (*ablate)
      return minsum::cli::cmd_ablate(ablate_opt);
    if (*generate)
      return minsum::cli::cmd_generate(generate_opt);
    if (*check)
      return minsum::cli::cmd_check(check_path);
    if (*schedule)
      return minsum::cli::cmd_schedule(schedule_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return minsum::cli::exit_data;
  }
  return minsum::cli::exit_usage;
}
