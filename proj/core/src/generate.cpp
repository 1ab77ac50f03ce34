#include "minsum/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace minsum {

graphical_model gen_complete(int n, int labels, std::uint64_t seed) {
  if (n < 1 || labels < 1)
    throw std::invalid_argument("gen_complete: n and labels must be >= 1");

  splitmix64 rng(seed);
  std::vector<int> counts(n, labels);

  std::vector<std::vector<double>> unary(n);
  for (int u = 0; u < n; ++u) {
    unary[u].resize(labels);
    for (int s = 0; s < labels; ++s)
      unary[u][s] = rng.uniform();
  }

  std::vector<edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      edges.push_back({u, v});

  std::vector<std::vector<double>> pairwise(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    pairwise[e].resize(static_cast<std::size_t>(labels) * labels);
    for (auto& value : pairwise[e])
      value = rng.uniform();
  }

  return graphical_model(std::move(counts), std::move(edges), std::move(unary),
                         std::move(pairwise));
}

graphical_model gen_potts_grid(int rows, int cols, int labels, double lambda,
                               std::uint64_t seed) {
  if (rows < 1 || cols < 1 || labels < 1)
    throw std::invalid_argument("gen_potts_grid: dimensions must be >= 1");
  if (!std::isfinite(lambda))
    throw std::invalid_argument("gen_potts_grid: lambda must be finite");

  const int n = rows * cols;
  splitmix64 rng(seed);
  std::vector<int> counts(n, labels);

  std::vector<std::vector<double>> unary(n);
  for (int u = 0; u < n; ++u) {
    unary[u].resize(labels);
    for (int s = 0; s < labels; ++s)
      unary[u][s] = rng.uniform();
  }

  std::vector<edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int u = r * cols + c;
      if (c + 1 < cols)
        edges.push_back({u, u + 1});
      if (r + 1 < rows)
        edges.push_back({u, u + cols});
    }
  }

  std::vector<double> potts(static_cast<std::size_t>(labels) * labels);
  for (int s = 0; s < labels; ++s)
    for (int t = 0; t < labels; ++t)
      potts[static_cast<std::size_t>(s) * labels + t] = (s != t) ? lambda : 0.0;

  std::vector<std::vector<double>> pairwise(edges.size(), potts);
  return graphical_model(std::move(counts), std::move(edges), std::move(unary),
                         std::move(pairwise));
}

graphical_model sparsify(const graphical_model& m, double keep_fraction,
                         std::uint64_t seed) {
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0)
    throw std::invalid_argument("sparsify: keep_fraction must be in (0, 1]");

  const int total = m.num_edges();
  if (total == 0 || keep_fraction == 1.0)
    return m;

  int keep = static_cast<int>(std::llround(keep_fraction * total));
  keep = std::clamp(keep, 1, total);

  std::vector<int> order(total);
  for (int e = 0; e < total; ++e)
    order[e] = e;
  splitmix64 rng(seed);
  for (int i = total - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);

  std::vector<int> kept(order.begin(), order.begin() + keep);
  std::sort(kept.begin(), kept.end(), [&](int a, int b) {
    return m.edge_at(a) < m.edge_at(b);
  });

  std::vector<edge> edges;
  std::vector<std::vector<double>> pairwise;
  edges.reserve(keep);
  pairwise.reserve(keep);
  for (int e : kept) {
    edges.push_back(m.edge_at(e));
    pairwise.push_back(m.pairwise(e));
  }

  std::vector<std::vector<double>> unary(m.num_nodes());
  for (int u = 0; u < m.num_nodes(); ++u)
    unary[u] = m.unary(u);

  return graphical_model(m.label_counts(), std::move(edges), std::move(unary),
                         std::move(pairwise));
}

}  // namespace minsum
