#include "minsum/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "minsum/generate.hpp"

namespace minsum {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond)
    throw std::invalid_argument(what);
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Number of labelings, capped so the count itself cannot overflow.
double state_space_size(const graphical_model& m) {
  double total = 1.0;
  for (int u = 0; u < m.num_nodes(); ++u) {
    total *= m.labels(u);
    if (total > 1e18)
      return total;
  }
  return total;
}

}  // namespace

graphical_model::graphical_model(std::vector<int> label_counts,
                                 std::vector<edge> edges,
                                 std::vector<std::vector<double>> unary,
                                 std::vector<std::vector<double>> pairwise)
    : label_counts_(std::move(label_counts)),
      edges_(std::move(edges)),
      unary_(std::move(unary)),
      pairwise_(std::move(pairwise)) {
  const int n = num_nodes();
  require(n >= 1, "model: needs at least one node");
  for (int u = 0; u < n; ++u)
    require(label_counts_[u] >= 1, "model: node " + std::to_string(u) + " has no labels");

  for (const auto& e : edges_) {
    require(e.u >= 0 && e.v < n, "model: edge endpoint out of range");
    require(e.u < e.v, "model: edges must satisfy u < v");
  }
  std::vector<edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "model: duplicate edge");

  require(static_cast<int>(unary_.size()) == n, "model: unary table count mismatch");
  for (int u = 0; u < n; ++u) {
    require(static_cast<int>(unary_[u].size()) == label_counts_[u],
            "model: unary table length mismatch at node " + std::to_string(u));
    require(all_finite(unary_[u]), "model: non-finite unary cost at node " + std::to_string(u));
  }

  require(pairwise_.size() == edges_.size(), "model: pairwise table count mismatch");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t expect = static_cast<std::size_t>(label_counts_[edges_[e].u]) *
                               label_counts_[edges_[e].v];
    require(pairwise_[e].size() == expect,
            "model: pairwise table size mismatch at edge " + std::to_string(e));
    require(all_finite(pairwise_[e]), "model: non-finite pairwise cost at edge " + std::to_string(e));
  }
}

namespace {

void check_labeling(const graphical_model& m, const labeling& y) {
  if (static_cast<int>(y.size()) != m.num_nodes())
    throw std::invalid_argument("labeling: wrong length");
  for (int u = 0; u < m.num_nodes(); ++u)
    if (y[u] < 0 || y[u] >= m.labels(u))
      throw std::invalid_argument("labeling: label out of range at node " + std::to_string(u));
}

}  // namespace

double energy(const graphical_model& m, const labeling& y) {
  check_labeling(m, y);
  double total = 0.0;
  for (int u = 0; u < m.num_nodes(); ++u)
    total += m.unary_value(u, y[u]);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& uv = m.edge_at(e);
    total += m.pairwise_value(e, y[uv.u], y[uv.v]);
  }
  return total;
}

double reparam_energy(const graphical_model& m, const reparam_state& s,
                      const labeling& y) {
  check_labeling(m, y);
  double total = s.constant_offset;
  for (int u = 0; u < m.num_nodes(); ++u)
    total += s.unary[u][y[u]];
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& uv = m.edge_at(e);
    total += s.pairwise[e][static_cast<std::size_t>(y[uv.u]) * m.labels(uv.v) + y[uv.v]];
  }
  return total;
}

namespace {

// Odometer-style increment over the label space; returns false on wrap.
bool next_labeling(const graphical_model& m, labeling& y) {
  for (int u = m.num_nodes() - 1; u >= 0; --u) {
    if (++y[u] < m.labels(u))
      return true;
    y[u] = 0;
  }
  return false;
}

}  // namespace

std::pair<labeling, double> brute_force_map(const graphical_model& m) {
  if (state_space_size(m) > 1e7)
    throw std::invalid_argument("brute_force_map: state space too large");

  labeling y(m.num_nodes(), 0);
  labeling best = y;
  double best_energy = energy(m, y);
  while (next_labeling(m, y)) {
    const double e = energy(m, y);
    if (e < best_energy) {  // strict: keeps the lexicographically smallest tie
      best_energy = e;
      best = y;
    }
  }
  return {best, best_energy};
}

reparam_state init_reparam(const graphical_model& m) {
  reparam_state s;
  s.unary.assign(m.num_nodes(), {});
  for (int u = 0; u < m.num_nodes(); ++u)
    s.unary[u] = m.unary(u);
  s.pairwise.assign(m.num_edges(), {});
  for (int e = 0; e < m.num_edges(); ++e)
    s.pairwise[e] = m.pairwise(e);
  s.constant_offset = 0.0;
  return s;
}

bool check_energy_preserved(const graphical_model& m, const reparam_state& s,
                            int samples, std::uint64_t seed) {
  double max_diff = 0.0;
  splitmix64 rng(seed);
  labeling y(m.num_nodes());
  for (int i = 0; i < samples; ++i) {
    for (int u = 0; u < m.num_nodes(); ++u)
      y[u] = static_cast<int>(rng.next() % static_cast<std::uint64_t>(m.labels(u)));
    max_diff = std::max(max_diff, std::abs(energy(m, y) - reparam_energy(m, s, y)));
  }
  if (state_space_size(m) <= 1e6) {
    std::fill(y.begin(), y.end(), 0);
    do {
      max_diff = std::max(max_diff, std::abs(energy(m, y) - reparam_energy(m, s, y)));
    } while (next_labeling(m, y));
  }
  return max_diff <= 1e-6;
}

}  // namespace minsum
