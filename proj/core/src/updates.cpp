#include "minsum/updates.hpp"

#include <cassert>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace minsum {

char rule_letter(update_rule r) {
  switch (r) {
    case update_rule::uniform: return 'u';
    case update_rule::mplp: return 'm';
    case update_rule::handshake: return 'h';
  }
  return '?';
}

update_rule rule_from_letter(char c) {
  switch (c) {
    case 'u': return update_rule::uniform;
    case 'm': return update_rule::mplp;
    case 'h': return update_rule::handshake;
  }
  throw std::invalid_argument(std::string("unknown update rule: ") + c);
}

int rule_oracle_cost(update_rule r) {
  switch (r) {
    case update_rule::uniform: return 1;
    case update_rule::mplp: return 2;
    case update_rule::handshake: return 3;
  }
  return 0;
}

aggregated_cost aggregate(const std::vector<double>& unary_u,
                          const std::vector<double>& unary_v,
                          const std::vector<double>& pairwise) {
  aggregated_cost g;
  g.rows = static_cast<int>(unary_u.size());
  g.cols = static_cast<int>(unary_v.size());
  assert(pairwise.size() == static_cast<std::size_t>(g.rows) * g.cols);
  g.g.resize(pairwise.size());
  std::size_t i = 0;
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t, ++i)
      g.g[i] = (unary_u[s] + unary_v[t]) + pairwise[i];
  return g;
}

std::vector<double> pass_message(const std::vector<double>& pairwise, int rows,
                                 int cols, const std::vector<double>& addend,
                                 message_direction direction) {
  if (pairwise.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("pass_message: table size does not match rows x cols");
  const int expect = direction == message_direction::to_u ? cols : rows;
  if (static_cast<int>(addend.size()) != expect)
    throw std::invalid_argument("pass_message: addend length mismatch");

  if (direction == message_direction::to_u) {
    std::vector<double> out(rows, std::numeric_limits<double>::infinity());
    for (int s = 0; s < rows; ++s)
      for (int t = 0; t < cols; ++t)
        out[s] = std::min(out[s], pairwise[static_cast<std::size_t>(s) * cols + t] + addend[t]);
    return out;
  }
  std::vector<double> out(cols, std::numeric_limits<double>::infinity());
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t)
      out[t] = std::min(out[t], pairwise[static_cast<std::size_t>(s) * cols + t] + addend[s]);
  return out;
}

update_result update_uniform(const aggregated_cost& g) {
  double lo = std::numeric_limits<double>::infinity();
  for (double value : g.g)
    lo = std::min(lo, value);
  const double half = 0.5 * lo;

  update_result r;
  r.unary_u.assign(g.rows, half);
  r.unary_v.assign(g.cols, half);
  r.pairwise.resize(g.g.size());
  for (std::size_t i = 0; i < g.g.size(); ++i)
    r.pairwise[i] = (g.g[i] - half) - half;
  r.oracle_calls = 1;
  return r;
}

update_result update_mplp(const aggregated_cost& g) {
  update_result r;
  r.unary_u.assign(g.rows, std::numeric_limits<double>::infinity());
  r.unary_v.assign(g.cols, std::numeric_limits<double>::infinity());
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t)
      r.unary_u[s] = std::min(r.unary_u[s], g(s, t));
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t)
      r.unary_v[t] = std::min(r.unary_v[t], g(s, t));
  for (double& x : r.unary_u)
    x *= 0.5;
  for (double& x : r.unary_v)
    x *= 0.5;

  r.pairwise.resize(g.g.size());
  std::size_t i = 0;
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t, ++i)
      r.pairwise[i] = (g.g[i] - r.unary_u[s]) - r.unary_v[t];
  r.oracle_calls = 2;
  return r;
}

update_result update_handshake(const aggregated_cost& g) {
  update_result r;

  // 1st message: half row minima, as in MPLP.
  r.unary_u.assign(g.rows, std::numeric_limits<double>::infinity());
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t)
      r.unary_u[s] = std::min(r.unary_u[s], g(s, t));
  for (double& x : r.unary_u)
    x *= 0.5;

  // 2nd: column minima of the residual; every column of g - u - v now
  // bottoms out at zero.
  r.unary_v.assign(g.cols, std::numeric_limits<double>::infinity());
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t)
      r.unary_v[t] = std::min(r.unary_v[t], g(s, t) - r.unary_u[s]);

  // 3rd: push the remaining row slack into u; rows bottom out at zero and
  // the columns keep their zeros.
  for (int s = 0; s < g.rows; ++s) {
    double slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < g.cols; ++t)
      slack = std::min(slack, (g(s, t) - r.unary_u[s]) - r.unary_v[t]);
    r.unary_u[s] += slack;
  }

  r.pairwise.resize(g.g.size());
  std::size_t i = 0;
  for (int s = 0; s < g.rows; ++s)
    for (int t = 0; t < g.cols; ++t, ++i)
      r.pairwise[i] = (g.g[i] - r.unary_u[s]) - r.unary_v[t];
  r.oracle_calls = 3;
  return r;
}

update_result run_update(update_rule rule, const aggregated_cost& g) {
  switch (rule) {
    case update_rule::uniform: return update_uniform(g);
    case update_rule::mplp: return update_mplp(g);
    case update_rule::handshake: return update_handshake(g);
  }
  throw std::invalid_argument("run_update: bad rule");
}

namespace {

// Fused uniform update: same arithmetic as update_uniform(aggregate(...)),
// no materialized aggregate.
int apply_uniform(std::vector<double>& tu, std::vector<double>& tv,
                  std::vector<double>& pw) {
  const int rows = static_cast<int>(tu.size());
  const int cols = static_cast<int>(tv.size());
  double lo = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t, ++i)
      lo = std::min(lo, (tu[s] + tv[t]) + pw[i]);
  const double half = 0.5 * lo;

  i = 0;
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t, ++i)
      pw[i] = (((tu[s] + tv[t]) + pw[i]) - half) - half;
  tu.assign(rows, half);
  tv.assign(cols, half);
  return 1;
}

// Fused MPLP update, arithmetic matched to update_mplp(aggregate(...)).
int apply_mplp(std::vector<double>& tu, std::vector<double>& tv,
               std::vector<double>& pw) {
  const int rows = static_cast<int>(tu.size());
  const int cols = static_cast<int>(tv.size());
  std::vector<double> nu(rows, std::numeric_limits<double>::infinity());
  std::vector<double> nv(cols, std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t, ++i)
      nu[s] = std::min(nu[s], (tu[s] + tv[t]) + pw[i]);
  i = 0;
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t, ++i)
      nv[t] = std::min(nv[t], (tu[s] + tv[t]) + pw[i]);
  for (double& x : nu)
    x *= 0.5;
  for (double& x : nv)
    x *= 0.5;

  i = 0;
  for (int s = 0; s < rows; ++s)
    for (int t = 0; t < cols; ++t, ++i)
      pw[i] = (((tu[s] + tv[t]) + pw[i]) - nu[s]) - nv[t];
  tu = std::move(nu);
  tv = std::move(nv);
  return 2;
}

}  // namespace

int apply_update(reparam_state& s, const graphical_model& m, int edge_index,
                 update_rule rule) {
  const auto& uv = m.edge_at(edge_index);
  auto& tu = s.unary[uv.u];
  auto& tv = s.unary[uv.v];
  auto& pw = s.pairwise[edge_index];

  switch (rule) {
    case update_rule::uniform:
      return apply_uniform(tu, tv, pw);
    case update_rule::mplp:
      return apply_mplp(tu, tv, pw);
    case update_rule::handshake: {
      update_result r = update_handshake(aggregate(tu, tv, pw));
      tu = std::move(r.unary_u);
      tv = std::move(r.unary_v);
      pw = std::move(r.pairwise);
      return r.oracle_calls;
    }
  }
  throw std::invalid_argument("apply_update: bad rule");
}

bool dominates(const update_result& a, const update_result& b, double tol) {
  assert(a.unary_u.size() == b.unary_u.size());
  assert(a.unary_v.size() == b.unary_v.size());
  for (std::size_t i = 0; i < a.unary_u.size(); ++i)
    if (a.unary_u[i] < b.unary_u[i] - tol)
      return false;
  for (std::size_t i = 0; i < a.unary_v.size(); ++i)
    if (a.unary_v[i] < b.unary_v[i] - tol)
      return false;
  return true;
}

}  // namespace minsum
