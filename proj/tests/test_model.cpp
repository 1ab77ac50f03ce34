#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "minsum/model.hpp"
#include "minsum/updates.hpp"
#include "oracles.hpp"

using namespace minsum;
using namespace minsum::testing;

namespace {

graphical_model zero_chain3() {
  return graphical_model({2, 2, 2}, {{0, 1}, {1, 2}},
                         {{0, 0}, {0, 0}, {0, 0}},
                         {{0, 0, 0, 0}, {0, 0, 0, 0}});
}

}  // namespace

TEST_CASE("energy sums unary and pairwise costs") {
  const auto m = two_node_fixture();
  CHECK(energy(m, {0, 0}) == 6.0);
  CHECK(energy(m, {1, 1}) == 5.0);
  CHECK(energy(m, {0, 1}) == 5.0);
  CHECK(energy(m, {1, 0}) == 9.0);
}

TEST_CASE("energy of all-zero costs is zero for every labeling") {
  const auto m = zero_chain3();
  for_each_labeling(m, [&](const labeling& y) { CHECK(energy(m, y) == 0.0); });
}

TEST_CASE("energy rejects invalid labelings") {
  const auto m = two_node_fixture();
  CHECK_THROWS_AS(energy(m, {0}), std::invalid_argument);
  CHECK_THROWS_AS(energy(m, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(energy(m, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(energy(m, {-1, 0}), std::invalid_argument);
}

TEST_CASE("energy is additive across disjoint components") {
  splitmix64 rng(5);
  const graphical_model a({2, 3}, {{0, 1}}, {random_table(rng, 2, 0, 5),
                                             random_table(rng, 3, 0, 5)},
                          {random_table(rng, 6, 0, 5)});
  const graphical_model b({2, 2}, {{0, 1}}, {random_table(rng, 2, 0, 5),
                                             random_table(rng, 2, 0, 5)},
                          {random_table(rng, 4, 0, 5)});
  const graphical_model both(
      {2, 3, 2, 2}, {{0, 1}, {2, 3}},
      {a.unary(0), a.unary(1), b.unary(0), b.unary(1)},
      {a.pairwise(0), b.pairwise(0)});
  for_each_labeling(both, [&](const labeling& y) {
    // summation order differs, so allow rounding noise
    CHECK(near(energy(both, y),
               energy(a, {y[0], y[1]}) + energy(b, {y[2], y[3]}), 1e-12));
  });
}

TEST_CASE("brute force finds the optimum with lexicographic tie-break") {
  const auto [y, e] = brute_force_map(two_node_fixture());
  CHECK(y == labeling{0, 1});  // (1,1) also has energy 5; (0,1) is smaller
  CHECK(e == 5.0);
}

TEST_CASE("brute force on a single node picks the argmin") {
  const graphical_model m({3}, {}, {{3, 1, 2}}, {});
  const auto [y, e] = brute_force_map(m);
  CHECK(y == labeling{1});
  CHECK(e == 1.0);
}

TEST_CASE("brute force on all-zero costs returns the all-zero labeling") {
  const auto [y, e] = brute_force_map(zero_chain3());
  CHECK(y == labeling{0, 0, 0});
  CHECK(e == 0.0);
}

TEST_CASE("brute force refuses oversized state spaces") {
  std::vector<int> counts(30, 2);
  std::vector<edge> edges;
  std::vector<std::vector<double>> unary(30, std::vector<double>{0, 0});
  for (int u = 0; u + 1 < 30; ++u)
    edges.push_back({u, u + 1});
  std::vector<std::vector<double>> pairwise(edges.size(),
                                            std::vector<double>(4, 0.0));
  const graphical_model m(counts, edges, unary, pairwise);
  CHECK_THROWS_AS(brute_force_map(m), std::invalid_argument);
}

TEST_CASE("constructor validates structure") {
  CHECK_THROWS_AS(graphical_model({2, 2}, {{1, 0}}, {{0, 0}, {0, 0}},
                                  {{0, 0, 0, 0}}),
                  std::invalid_argument);  // u >= v
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 0}}, {{0, 0}, {0, 0}},
                                  {{0, 0, 0, 0}}),
                  std::invalid_argument);  // self edge
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 2}}, {{0, 0}, {0, 0}},
                                  {{0, 0, 0, 0}}),
                  std::invalid_argument);  // index out of range
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 1}, {0, 1}},
                                  {{0, 0}, {0, 0}},
                                  {{0, 0, 0, 0}, {0, 0, 0, 0}}),
                  std::invalid_argument);  // duplicate edge
  CHECK_THROWS_AS(graphical_model({2, 0}, {}, {{0, 0}, {}}, {}),
                  std::invalid_argument);  // empty label space
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 1}}, {{0, 0}, {0}},
                                  {{0, 0, 0, 0}}),
                  std::invalid_argument);  // unary length mismatch
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 1}}, {{0, 0}, {0, 0}},
                                  {{0, 0, 0}}),
                  std::invalid_argument);  // pairwise length mismatch
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 1}}, {{0, inf}, {0, 0}},
                                  {{0, 0, 0, 0}}),
                  std::invalid_argument);  // non-finite cost
  CHECK_THROWS_AS(graphical_model({2, 2}, {{0, 1}}, {{0, 0}, {0, 0}},
                                  {{0, 0, std::nan(""), 0}}),
                  std::invalid_argument);
}

TEST_CASE("init_reparam copies the original tables") {
  const auto m = two_node_fixture();
  const auto s = init_reparam(m);
  CHECK(s.unary[0] == std::vector<double>{4, 0});
  CHECK(s.unary[1] == std::vector<double>{2, 0});
  CHECK(s.pairwise[0] == std::vector<double>{0, 1, 7, 5});
  CHECK(s.constant_offset == 0.0);
  for_each_labeling(m, [&](const labeling& y) {
    CHECK(reparam_energy(m, s, y) == energy(m, y));
  });
}

TEST_CASE("init_reparam of an all-zero model is all-zero") {
  const auto m = zero_chain3();
  const auto s = init_reparam(m);
  for (const auto& t : s.unary)
    for (double x : t)
      CHECK(x == 0.0);
  for (const auto& t : s.pairwise)
    for (double x : t)
      CHECK(x == 0.0);
}

TEST_CASE("check_energy_preserved accepts fresh states") {
  const auto m = two_node_fixture();
  CHECK(check_energy_preserved(m, init_reparam(m), 100, 1));
}

TEST_CASE("check_energy_preserved holds through 100 handshake updates") {
  const auto m = gen_complete(5, 3, 9);
  auto s = init_reparam(m);
  for (int i = 0; i < 100; ++i)
    apply_update(s, m, i % m.num_edges(), update_rule::handshake);
  CHECK(check_energy_preserved(m, s, 200, 2));
}

TEST_CASE("check_energy_preserved detects a perturbed entry") {
  const auto m = two_node_fixture();
  auto s = init_reparam(m);
  s.unary[0][1] += 1.0;
  CHECK_FALSE(check_energy_preserved(m, s, 100, 3));
}

TEST_CASE("energy preservation survives arbitrary update sequences") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = random_model(seed, 4, 3, seed % 2 ? 0.5 : 1.0);
    if (m.num_edges() == 0)
      continue;
    auto s = init_reparam(m);
    splitmix64 rng(seed + 1000);
    for (int i = 0; i < 50; ++i) {
      const int e = static_cast<int>(rng.below(m.num_edges()));
      const auto rule = static_cast<update_rule>(rng.below(3));
      apply_update(s, m, e, rule);
    }
    double worst = 0.0;
    for_each_labeling(m, [&](const labeling& y) {
      worst = std::max(worst, std::abs(reparam_energy(m, s, y) - energy(m, y)));
    });
    CHECK(worst <= 1e-6);
  }
}
