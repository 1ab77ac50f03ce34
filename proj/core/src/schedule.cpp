#include "minsum/schedule.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace minsum {

std::pair<std::vector<edge>, std::vector<edge>> greedy_matching(
    const std::vector<edge>& edges, int num_nodes) {
  std::vector<char> used(num_nodes, 0);
  std::vector<edge> matched;
  std::vector<edge> remaining;
  for (const edge& e : edges) {
    assert(e.u >= 0 && e.v < num_nodes);
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = 1;
      matched.push_back(e);
    } else {
      remaining.push_back(e);
    }
  }
  return {std::move(matched), std::move(remaining)};
}

edge_schedule compute_schedule(const graphical_model& m) {
  const auto& edges = m.edges();
  std::vector<int> pool(edges.size());
  std::iota(pool.begin(), pool.end(), 0);
  std::sort(pool.begin(), pool.end(),
            [&](int a, int b) { return edges[a] < edges[b]; });

  edge_schedule out;
  std::vector<char> used(m.num_nodes());
  std::vector<int> next_pool;
  while (!pool.empty()) {
    std::fill(used.begin(), used.end(), 0);
    next_pool.clear();
    std::vector<int> round;
    for (int idx : pool) {
      const edge& e = edges[idx];
      if (!used[e.u] && !used[e.v]) {
        used[e.u] = used[e.v] = 1;
        round.push_back(idx);
      } else {
        next_pool.push_back(idx);
      }
    }
    assert(!round.empty());
    out.rounds.push_back(std::move(round));
    pool.swap(next_pool);
  }
  return out;
}

schedule_summary schedule_stats(const edge_schedule& s,
                                [[maybe_unused]] int num_nodes) {
  schedule_summary out;
  out.rounds = static_cast<int>(s.rounds.size());
  std::size_t total = 0;
  for (const auto& round : s.rounds) {
    out.max_width = std::max(out.max_width, static_cast<int>(round.size()));
    total += round.size();
  }
  assert(out.max_width == 0 || 2 * out.max_width <= num_nodes);
  out.mean_width =
      out.rounds == 0 ? 0.0 : static_cast<double>(total) / out.rounds;
  return out;
}

}  // namespace minsum
