#ifndef MINSUM_UPDATES_HPP
#define MINSUM_UPDATES_HPP

#include <cstdint>
#include <vector>

#include "minsum/model.hpp"

namespace minsum {

// Edge-local block-coordinate ascent rules. All three leave the edge block
// optimal with min pairwise = 0; they differ in how the slack that the
// block objective is insensitive to gets distributed, which drives how
// much later updates can gain.
enum class update_rule { uniform, mplp, handshake };

char rule_letter(update_rule r);                 // 'u' / 'm' / 'h'
update_rule rule_from_letter(char c);            // throws on anything else
int rule_oracle_cost(update_rule r);             // messages per edge update: 1 / 2 / 3

// Aggregated edge cost g(s,t) = theta_u(s) + theta_v(t) + theta_uv(s,t),
// row-major, rows = labels of u.
struct aggregated_cost {
  int rows = 0;
  int cols = 0;
  std::vector<double> g;

  double operator()(int s, int t) const {
    return g[static_cast<std::size_t>(s) * cols + t];
  }
};

aggregated_cost aggregate(const std::vector<double>& unary_u,
                          const std::vector<double>& unary_v,
                          const std::vector<double>& pairwise);

// Output of one update on an aggregate: replacement unaries plus the
// residual pairwise table g - new_unary_u - new_unary_v.
struct update_result {
  std::vector<double> unary_u;
  std::vector<double> unary_v;
  std::vector<double> pairwise;  // row-major rows x cols of the input aggregate
  int oracle_calls = 0;
};

enum class message_direction { to_u, to_v };

// One message: result(s) = min_t [pairwise(s,t) + addend(t)] for to_u,
// transposed for to_v. Counts as exactly one oracle call.
std::vector<double> pass_message(const std::vector<double>& pairwise, int rows,
                                 int cols, const std::vector<double>& addend,
                                 message_direction direction);

// new_u(s) = new_v(t) = 1/2 min g. One oracle call.
update_result update_uniform(const aggregated_cost& g);

// new_u(s) = 1/2 min_t g(s,t), new_v(t) = 1/2 min_s g(s,t). Two calls.
update_result update_mplp(const aggregated_cost& g);

// The handshake rule (MPLP++): the MPLP row half-min for u, then two
// residual-pushing messages so that every row and column minimum of the
// leftover pairwise table is zero. Three calls.
update_result update_handshake(const aggregated_cost& g);

update_result run_update(update_rule rule, const aggregated_cost& g);

// Applies the rule to one edge of the state in place and returns the
// oracle calls spent. Touches exactly unary[u], unary[v] and pairwise[e];
// the caller guarantees exclusive access to those three for the duration.
int apply_update(reparam_state& s, const graphical_model& m, int edge_index,
                 update_rule rule);

// Componentwise a.unary >= b.unary - tol on both endpoints.
bool dominates(const update_result& a, const update_result& b, double tol);

}  // namespace minsum

#endif
