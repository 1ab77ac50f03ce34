#include "minsum/dual.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <limits>

namespace minsum {

namespace {

double table_min(const std::vector<double>& t) {
  double lo = std::numeric_limits<double>::infinity();
  for (double x : t)
    lo = std::min(lo, x);
  return lo;
}

}  // namespace

double dual_value(const reparam_state& s) {
  double total = s.constant_offset;
  for (const auto& t : s.unary)
    total += table_min(t);
  for (const auto& t : s.pairwise)
    total += table_min(t);
  return total;
}

double restricted_dual(const graphical_model& m, const reparam_state& s,
                       int edge_index) {
  const auto& uv = m.edge_at(edge_index);
  return table_min(s.unary[uv.u]) + table_min(s.unary[uv.v]) +
         table_min(s.pairwise[edge_index]);
}

bool is_block_optimal(const graphical_model& m, const reparam_state& s,
                      int edge_index, double tol) {
  assert(tol >= 0.0);
  const auto& uv = m.edge_at(edge_index);
  const auto& tu = s.unary[uv.u];
  const auto& tv = s.unary[uv.v];
  const auto& pw = s.pairwise[edge_index];
  const double mu = table_min(tu);
  const double mv = table_min(tv);
  const double mp = table_min(pw);

  const int rows = static_cast<int>(tu.size());
  const int cols = static_cast<int>(tv.size());
  for (int a = 0; a < rows; ++a) {
    if (tu[a] > mu + tol)
      continue;
    for (int b = 0; b < cols; ++b) {
      if (tv[b] > mv + tol)
        continue;
      if (pw[static_cast<std::size_t>(a) * cols + b] <= mp + tol)
        return true;
    }
  }
  return false;
}

support_sets compute_support_sets(const graphical_model& m,
                                  const reparam_state& s, double eps) {
  assert(eps >= 0.0);
  support_sets out;
  out.edges = m.edges();
  out.node.resize(m.num_nodes());
  out.pair.resize(m.num_edges());

  for (int u = 0; u < m.num_nodes(); ++u) {
    const auto& t = s.unary[u];
    const double lo = table_min(t);
    out.node[u].resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      out.node[u][i] = (t[i] - lo) <= eps ? 1 : 0;
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& t = s.pairwise[e];
    const double lo = table_min(t);
    out.pair[e].resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      out.pair[e][i] = (t[i] - lo) <= eps ? 1 : 0;
  }
  return out;
}

bool has_node_edge_agreement(const support_sets& sets) {
  const int num_nodes = static_cast<int>(sets.node.size());
  const int num_edges = static_cast<int>(sets.edges.size());

  // incident edges per node
  std::vector<std::vector<int>> adjacent(num_nodes);
  for (int e = 0; e < num_edges; ++e) {
    adjacent[sets.edges[e].u].push_back(e);
    adjacent[sets.edges[e].v].push_back(e);
  }

  std::vector<std::vector<char>> node = sets.node;
  const auto& pair = sets.pair;

  // A pair is alive iff it is marked and both endpoint labels survive.
  // Delete labels without an alive supporting pair in some incident edge,
  // in a fixed scan order, until a full pass deletes nothing.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < num_nodes; ++u) {
      for (std::size_t s = 0; s < node[u].size(); ++s) {
        if (!node[u][s])
          continue;
        bool supported_everywhere = true;
        for (int e : adjacent[u]) {
          const edge& uv = sets.edges[e];
          const int other = uv.u == u ? uv.v : uv.u;
          const std::size_t cols = node[uv.v].size();
          bool supported = false;
          for (std::size_t t = 0; t < node[other].size() && !supported; ++t) {
            if (!node[other][t])
              continue;
            const std::size_t idx =
                uv.u == u ? s * cols + t : t * cols + s;
            supported = pair[e][idx] != 0;
          }
          if (!supported) {
            supported_everywhere = false;
            break;
          }
        }
        if (!supported_everywhere) {
          node[u][s] = 0;
          changed = true;
        }
      }
    }
  }

  for (int u = 0; u < num_nodes; ++u)
    if (std::find(node[u].begin(), node[u].end(), char(1)) == node[u].end())
      return false;
  for (int e = 0; e < num_edges; ++e) {
    const edge& uv = sets.edges[e];
    const std::size_t cols = node[uv.v].size();
    bool alive = false;
    for (std::size_t s = 0; s < node[uv.u].size() && !alive; ++s) {
      if (!node[uv.u][s])
        continue;
      for (std::size_t t = 0; t < cols && !alive; ++t)
        alive = node[uv.v][t] && pair[e][s * cols + t];
    }
    if (!alive)
      return false;
  }
  return true;
}

double tolerance_factor(const graphical_model& m, const reparam_state& s) {
  std::vector<double> slacks;
  for (const auto& t : s.unary) {
    const double lo = table_min(t);
    for (double x : t)
      slacks.push_back(x - lo);
  }
  for (const auto& t : s.pairwise) {
    const double lo = table_min(t);
    for (double x : t)
      slacks.push_back(x - lo);
  }
  std::sort(slacks.begin(), slacks.end());
  slacks.erase(std::unique(slacks.begin(), slacks.end()), slacks.end());
  if (slacks.empty())
    return 0.0;

  const auto agrees = [&](double eps) {
    return has_node_edge_agreement(compute_support_sets(m, s, eps));
  };

  // Agreement is monotone in eps and always holds at the largest slack
  // (every entry marked), so binary search for the first true.
  int lo = 0;
  int hi = static_cast<int>(slacks.size()) - 1;
  assert(agrees(slacks[hi]));
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (agrees(slacks[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return slacks[lo];
}

}  // namespace minsum
