#pragma once

#include <vector>

#include "minsum/model.hpp"

namespace minsum {

// Lower bound on the energy: sum of per-node unary minima plus per-edge
// pairwise minima of the current reparametrized costs.
double dual_value(const reparam_state& s);

// Same bound restricted to a single edge: min unary_u + min unary_v +
// min pairwise_uv.
double restricted_dual(const graphical_model& m, const reparam_state& s,
                       int edge_index);

// True iff some label pair (s,t) simultaneously minimizes the two unaries
// and the pairwise table, each within an absolute tolerance. Every edge
// update below establishes this on its edge.
bool is_block_optimal(const graphical_model& m, const reparam_state& s,
                      int edge_index, double tol = 1e-9);

// Labels / label pairs whose cost is within eps of the local minimum.
// Masks are stored as char (0/1); pair masks are row-major like the
// pairwise tables. Carries the edge list so consistency checks need no
// further graph context.
struct support_sets {
  std::vector<edge> edges;
  std::vector<std::vector<char>> node;  // per node, per label
  std::vector<std::vector<char>> pair;  // per edge, row-major
};

support_sets compute_support_sets(const graphical_model& m,
                                  const reparam_state& s, double eps);

// Arc-consistency closure over the marked labels: repeatedly delete a
// marked label lacking a marked, still-alive supporting pair in some
// incident edge (scan order: ascending node, then label). True iff every
// node and every edge retains at least one alive entry at the fixpoint.
bool has_node_edge_agreement(const support_sets& sets);

// Smallest eps from the finite set of cost slacks for which the eps-support
// sets pass the agreement check. 0 exactly when agreement already holds at
// eps = 0; agreement is monotone in eps, so a binary search over the sorted
// slack values is exact.
double tolerance_factor(const graphical_model& m, const reparam_state& s);

}  // namespace minsum
