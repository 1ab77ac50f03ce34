#ifndef MINSUM_MODEL_HPP
#define MINSUM_MODEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace minsum {

struct edge {
  int u;
  int v;

  friend bool operator==(const edge&, const edge&) = default;
  friend auto operator<=>(const edge&, const edge&) = default;
};

// One label index per node.
using labeling = std::vector<int>;

// Pairwise graphical model with dense cost tables. Nodes are indexed
// 0..n-1, every stored edge satisfies u < v and pairwise tables are
// row-major: row index = label of u, column index = label of v.
// Immutable after construction and safe to share across threads.
class graphical_model {
public:
  graphical_model(std::vector<int> label_counts, std::vector<edge> edges,
                  std::vector<std::vector<double>> unary,
                  std::vector<std::vector<double>> pairwise);

  int num_nodes() const { return static_cast<int>(label_counts_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int labels(int u) const { return label_counts_[u]; }

  const std::vector<int>& label_counts() const { return label_counts_; }
  const std::vector<edge>& edges() const { return edges_; }
  const edge& edge_at(int e) const { return edges_[e]; }

  const std::vector<double>& unary(int u) const { return unary_[u]; }
  const std::vector<double>& pairwise(int e) const { return pairwise_[e]; }

  double unary_value(int u, int s) const { return unary_[u][s]; }
  double pairwise_value(int e, int s, int t) const {
    return pairwise_[e][static_cast<std::size_t>(s) * label_counts_[edges_[e].v] + t];
  }

  friend bool operator==(const graphical_model&, const graphical_model&) = default;

private:
  std::vector<int> label_counts_;
  std::vector<edge> edges_;
  std::vector<std::vector<double>> unary_;
  std::vector<std::vector<double>> pairwise_;
};

// Current reparametrized costs. Same table shapes as the model the state
// was initialized from; updates rewrite endpoint unaries and one pairwise
// table in place. constant_offset stays 0: every update keeps
// min pairwise = 0, so no normalization constant is ever split off.
struct reparam_state {
  std::vector<std::vector<double>> unary;
  std::vector<std::vector<double>> pairwise;
  double constant_offset = 0.0;

  friend bool operator==(const reparam_state&, const reparam_state&) = default;
};

// E(y) = sum_u theta_u(y_u) + sum_uv theta_uv(y_u, y_v).
// Throws std::invalid_argument if y does not fit the model.
double energy(const graphical_model& m, const labeling& y);

// Same sum over the reparametrized tables (plus constant_offset).
double reparam_energy(const graphical_model& m, const reparam_state& s,
                      const labeling& y);

// Exact minimizer by full enumeration; ties broken by lexicographically
// smallest labeling. Refuses state spaces above 1e7 labelings.
std::pair<labeling, double> brute_force_map(const graphical_model& m);

reparam_state init_reparam(const graphical_model& m);

// Evaluates `samples` pseudorandom labelings (plus full enumeration when
// the state space has at most 1e6 labelings) under both cost sets; true
// iff the max absolute energy difference is <= 1e-6.
bool check_energy_preserved(const graphical_model& m, const reparam_state& s,
                            int samples, std::uint64_t seed);

}  // namespace minsum

#endif
