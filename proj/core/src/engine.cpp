#include "minsum/engine.hpp"

#include <atomic>
#include <barrier>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "minsum/dual.hpp"

namespace minsum {

solve_mode mode_from_name(const std::string& name) {
  if (name == "seq")
    return solve_mode::sequential;
  if (name == "par")
    return solve_mode::parallel;
  throw std::invalid_argument("unknown solve mode: " + name);
}

const char* mode_name(solve_mode mode) {
  return mode == solve_mode::sequential ? "seq" : "par";
}

namespace {

// Contiguous chunk [begin, end) of `size` items for worker w of num_workers.
std::pair<std::size_t, std::size_t> chunk_range(std::size_t size,
                                                int num_workers, int w) {
  const std::size_t base = size / num_workers;
  const std::size_t rem = size % num_workers;
  const std::size_t begin =
      w * base + std::min<std::size_t>(w, rem);
  const std::size_t extra = static_cast<std::size_t>(w) < rem ? 1 : 0;
  return {begin, begin + base + extra};
}

std::int64_t run_rounds_sequential(reparam_state& s, const graphical_model& m,
                                   const edge_schedule& sched,
                                   update_rule rule) {
  std::int64_t calls = 0;
  for (const auto& round : sched.rounds)
    for (int edge_index : round)
      calls += apply_update(s, m, edge_index, rule);
  return calls;
}

std::int64_t run_rounds_parallel(reparam_state& s, const graphical_model& m,
                                 const edge_schedule& sched, update_rule rule,
                                 int num_workers) {
  std::atomic<std::int64_t> calls{0};
  std::barrier sync(num_workers);
  {
    std::vector<std::jthread> workers;
    workers.reserve(num_workers);
    for (int w = 0; w < num_workers; ++w) {
      workers.emplace_back([&, w] {
        std::int64_t local = 0;
        for (const auto& round : sched.rounds) {
          const auto [begin, end] = chunk_range(round.size(), num_workers, w);
          for (std::size_t i = begin; i < end; ++i)
            local += apply_update(s, m, round[i], rule);
          sync.arrive_and_wait();
        }
        calls.fetch_add(local, std::memory_order_relaxed);
      });
    }
  }
  return calls.load();
}

}  // namespace

std::int64_t run_iteration(reparam_state& s, const graphical_model& m,
                           const edge_schedule& sched, update_rule rule,
                           solve_mode mode, int num_workers) {
  if (mode == solve_mode::sequential || num_workers <= 1)
    return run_rounds_sequential(s, m, sched, rule);
  return run_rounds_parallel(s, m, sched, rule, num_workers);
}

labeling round_primal(const graphical_model& m, const reparam_state& s) {
  // edges whose higher endpoint is u, paired with the lower endpoint
  std::vector<std::vector<std::pair<int, int>>> fixed_neighbours(
      m.num_nodes());
  for (int e = 0; e < m.num_edges(); ++e) {
    const edge& uv = m.edge_at(e);
    fixed_neighbours[uv.v].push_back({e, uv.u});
  }

  labeling y(m.num_nodes());
  for (int u = 0; u < m.num_nodes(); ++u) {
    const auto& tu = s.unary[u];
    const std::size_t cols = tu.size();
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < tu.size(); ++x) {
      double cost = tu[x];
      for (const auto& [e, v] : fixed_neighbours[u])
        cost += s.pairwise[e][static_cast<std::size_t>(y[v]) * cols + x];
      if (cost < best_cost) {
        best_cost = cost;
        best = static_cast<int>(x);
      }
    }
    y[u] = best;
  }
  return y;
}

solve_result solve(const graphical_model& m, const solve_config& config) {
  if (config.num_workers < 1)
    throw std::invalid_argument("solve: num_workers must be >= 1");
  if (config.rel_improvement_threshold < 0 ||
      config.max_normalized_iterations < 0 || config.checkpoint_every <= 0)
    throw std::invalid_argument("solve: thresholds must be nonnegative");

  const auto started = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - started)
        .count();
  };

  solve_result out;
  out.state = init_reparam(m);
  reparam_state& state = out.state;
  solve_trace& trace = out.trace;

  const edge_schedule sched = compute_schedule(m);
  const double num_edges = m.num_edges();

  std::int64_t oracle_calls = 0;
  double dual = dual_value(state);
  trace.checkpoints.push_back({0.0, 0, dual, elapsed_ms()});

  if (m.num_edges() > 0) {
    double next_checkpoint = config.checkpoint_every;
    bool done = false;
    while (!done) {
      double normalized = static_cast<double>(oracle_calls) / num_edges;
      if (normalized >= config.max_normalized_iterations)
        break;

      oracle_calls += run_iteration(state, m, sched, config.rule, config.mode,
                                    config.num_workers);
      normalized = static_cast<double>(oracle_calls) / num_edges;

      const double previous = dual;
      dual = dual_value(state);
      if ((dual - previous) / std::max(1.0, std::abs(dual)) <
          config.rel_improvement_threshold)
        done = true;
      if (normalized >= config.max_normalized_iterations)
        done = true;

      if (normalized >= next_checkpoint - 1e-12 || done) {
        trace.checkpoints.push_back(
            {normalized, oracle_calls, dual, elapsed_ms()});
        next_checkpoint =
            (std::floor(normalized / config.checkpoint_every) + 1.0) *
            config.checkpoint_every;
      }
    }
  }

  trace.final_dual = dual;
  trace.final_labeling = round_primal(m, state);
  trace.final_energy = energy(m, trace.final_labeling);
  return out;
}

}  // namespace minsum
