#pragma once

#include <utility>
#include <vector>

#include "minsum/model.hpp"

namespace minsum {

// Ordered queue of matchings covering every edge exactly once. Edges inside
// a round share no node, so all of a round's updates may run in parallel.
struct edge_schedule {
  std::vector<std::vector<int>> rounds;  // model edge indices per round
};

// One greedy pass: scan the edges in the given order and keep each edge
// whose endpoints are both still free. Returns (matched, remaining); the
// matched set is a maximal matching of the input.
std::pair<std::vector<edge>, std::vector<edge>> greedy_matching(
    const std::vector<edge>& edges, int num_nodes);

// Repeated greedy passes over the pool of not-yet-scheduled edges, pool
// order fixed to the lexicographic (u,v) order, until the pool is empty.
// Deterministic, so parallel solves are reproducible bit-for-bit.
edge_schedule compute_schedule(const graphical_model& m);

struct schedule_summary {
  int rounds = 0;
  int max_width = 0;
  double mean_width = 0.0;
};

schedule_summary schedule_stats(const edge_schedule& s, int num_nodes);

}  // namespace minsum
