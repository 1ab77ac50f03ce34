#pragma once

#include <cstdint>
#include <string>

namespace minsum::cli {

// Exit codes shared by every subcommand: 0 success, 1 usage error,
// 2 data error (unreadable or malformed input).
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;

struct solve_options {
  std::string model_path;
  std::string rule = "h";
  std::string mode = "seq";
  int workers = 1;
  double max_iters = 1000.0;
  double tol = 1e-8;
  double checkpoint_every = 1.0;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string summary_path;
};
int cmd_solve(const solve_options& opt);

struct compare_options {
  std::string model_path;
  std::string rules = "u,m,h";
  std::string out_dir;
  std::string mode = "seq";
  int workers = 1;
  double max_iters = 1000.0;
  double tol = 1e-8;
  double checkpoint_every = 1.0;
  std::uint64_t seed = 0;
};
int cmd_compare(const compare_options& opt);

struct ablate_options {
  std::string model_path;
  std::string fractions = "1.0,0.8,0.6,0.4,0.2,0.1,0.05,0.01";
  std::string rules = "m,h";
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string mode = "seq";
  int workers = 1;
  double max_iters = 1000.0;
  double tol = 1e-8;
  double checkpoint_every = 1.0;
};
int cmd_ablate(const ablate_options& opt);

struct generate_options {
  std::string type = "complete";  // "complete" or "grid"
  int nodes = 10;
  int rows = 4;
  int cols = 4;
  int labels = 3;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  std::string out_path;
};
int cmd_generate(const generate_options& opt);

int cmd_check(const std::string& model_path);
int cmd_schedule(const std::string& model_path);

}  // namespace minsum::cli
