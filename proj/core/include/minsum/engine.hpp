#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minsum/model.hpp"
#include "minsum/schedule.hpp"
#include "minsum/updates.hpp"

namespace minsum {

enum class solve_mode { sequential, parallel };

solve_mode mode_from_name(const std::string& name);  // "seq" | "par"
const char* mode_name(solve_mode mode);

struct solve_config {
  update_rule rule = update_rule::handshake;
  solve_mode mode = solve_mode::sequential;
  int num_workers = 1;
  double max_normalized_iterations = 1000.0;
  double rel_improvement_threshold = 1e-8;
  double checkpoint_every = 1.0;  // in normalized iterations
  std::uint64_t seed = 0;         // carried into reports, never used here
};

struct checkpoint {
  double normalized_iterations = 0.0;  // oracle_calls / |E|
  std::int64_t oracle_calls = 0;
  double dual = 0.0;
  double wall_time_ms = 0.0;
};

struct solve_trace {
  std::vector<checkpoint> checkpoints;
  labeling final_labeling;
  double final_energy = 0.0;
  double final_dual = 0.0;
};

struct solve_result {
  solve_trace trace;
  reparam_state state;
};

// One full pass over the schedule: every edge updated exactly once. In
// sequential mode rounds and the edges within them run in order; in
// parallel mode each round's edges are split into contiguous chunks across
// the workers and a barrier separates rounds. The matching property gives
// every concurrent update exclusive access to its two unary vectors and its
// pairwise table, so both modes produce bit-identical states. Returns the
// oracle calls spent (rule cost x |E|).
std::int64_t run_iteration(reparam_state& s, const graphical_model& m,
                           const edge_schedule& sched, update_rule rule,
                           solve_mode mode, int num_workers);

// Full solve: iterate until the relative dual improvement
// (D_t - D_{t-1}) / max(1, |D_t|) drops below the threshold or the
// normalized-iteration cap is hit, recording a checkpoint whenever the
// normalized count crosses a multiple of checkpoint_every (the dual is
// recomputed from scratch each time). Ends with primal rounding; the final
// energy is measured under the original costs.
solve_result solve(const graphical_model& m, const solve_config& config);

// Sequential conditional rounding: visit nodes in ascending order and pick
// the label minimizing the reparametrized unary plus the pairwise costs
// toward already-fixed lower-indexed neighbours; ties take the smallest
// label index.
labeling round_primal(const graphical_model& m, const reparam_state& s);

}  // namespace minsum
