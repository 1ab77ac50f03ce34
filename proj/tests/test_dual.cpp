#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "minsum/dual.hpp"
#include "minsum/engine.hpp"
#include "minsum/model.hpp"
#include "minsum/updates.hpp"
#include "oracles.hpp"

using namespace minsum;
using namespace minsum::testing;

namespace {

// converged single-edge fixture: one handshake makes its only block optimal
std::pair<graphical_model, reparam_state> converged_fixture() {
  auto m = two_node_fixture();
  auto s = init_reparam(m);
  apply_update(s, m, 0, update_rule::handshake);
  return {std::move(m), std::move(s)};
}

double linear_scan_tolerance(const graphical_model& m,
                             const reparam_state& s) {
  std::vector<double> slacks;
  for (const auto& t : s.unary) {
    const double lo = *std::min_element(t.begin(), t.end());
    for (double x : t)
      slacks.push_back(x - lo);
  }
  for (const auto& t : s.pairwise) {
    const double lo = *std::min_element(t.begin(), t.end());
    for (double x : t)
      slacks.push_back(x - lo);
  }
  std::sort(slacks.begin(), slacks.end());
  slacks.erase(std::unique(slacks.begin(), slacks.end()), slacks.end());
  for (double eps : slacks)
    if (has_node_edge_agreement(compute_support_sets(m, s, eps)))
      return eps;
  return slacks.empty() ? 0.0 : slacks.back();
}

}  // namespace

TEST_CASE("dual_value sums per-table minima") {
  const auto m = two_node_fixture();
  CHECK(dual_value(init_reparam(m)) == 0.0);

  const auto [cm, cs] = converged_fixture();
  CHECK(dual_value(cs) == doctest::Approx(5.0).epsilon(1e-12));

  const graphical_model zero({2, 2}, {{0, 1}}, {{0, 0}, {0, 0}},
                             {{0, 0, 0, 0}});
  CHECK(dual_value(init_reparam(zero)) == 0.0);
}

TEST_CASE("dual_value of a fresh state equals the sum of original minima") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = random_model(seed, 6, 4, 0.8);
    double expect = 0.0;
    for (int u = 0; u < m.num_nodes(); ++u)
      expect += *std::min_element(m.unary(u).begin(), m.unary(u).end());
    for (int e = 0; e < m.num_edges(); ++e)
      expect += *std::min_element(m.pairwise(e).begin(), m.pairwise(e).end());
    CHECK(dual_value(init_reparam(m)) == expect);
  }
}

TEST_CASE("restricted_dual is the single-edge slice of the bound") {
  const auto m = two_node_fixture();
  CHECK(restricted_dual(m, init_reparam(m), 0) == 0.0);

  const auto [cm, cs] = converged_fixture();
  CHECK(restricted_dual(cm, cs, 0) == doctest::Approx(5.0).epsilon(1e-12));

  const graphical_model zero({2, 2}, {{0, 1}}, {{0, 0}, {0, 0}},
                             {{0, 0, 0, 0}});
  CHECK(restricted_dual(zero, init_reparam(zero), 0) == 0.0);
}

TEST_CASE("is_block_optimal needs a common witness pair") {
  const auto m = two_node_fixture();
  // u-argmin = 1, v-argmin = 1, but pairwise argmin is (0,0)
  CHECK_FALSE(is_block_optimal(m, init_reparam(m), 0, 1e-9));

  const auto [cm, cs] = converged_fixture();
  CHECK(is_block_optimal(cm, cs, 0, 1e-9));

  const graphical_model single({1, 1}, {{0, 1}}, {{3}, {4}}, {{2}});
  CHECK(is_block_optimal(single, init_reparam(single), 0, 0.0));
}

TEST_CASE("every rule leaves its own edge block optimal") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = random_model(seed, 6, 4, 1.0);
    for (const auto rule : {update_rule::uniform, update_rule::mplp,
                            update_rule::handshake}) {
      auto s = init_reparam(m);
      splitmix64 rng(seed);
      const int e = static_cast<int>(rng.below(m.num_edges()));
      apply_update(s, m, e, rule);
      REQUIRE(is_block_optimal(m, s, e, 1e-9));
    }
  }
}

TEST_CASE("restricted dual never decreases under any rule") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = random_model(seed, 6, 4, 1.0);
    auto s = init_reparam(m);
    splitmix64 rng(seed * 7 + 1);
    for (int i = 0; i < 30; ++i) {
      const int e = static_cast<int>(rng.below(m.num_edges()));
      const auto rule = static_cast<update_rule>(rng.below(3));
      const double before = restricted_dual(m, s, e);
      apply_update(s, m, e, rule);
      REQUIRE(restricted_dual(m, s, e) >= before - 1e-9);
    }
  }
}

TEST_CASE("support sets mark entries within eps of their minimum") {
  const auto m = two_node_fixture();
  const auto s = init_reparam(m);

  const auto tight = compute_support_sets(m, s, 0.0);
  CHECK(tight.node[0] == std::vector<char>{0, 1});
  CHECK(tight.node[1] == std::vector<char>{0, 1});
  CHECK(tight.pair[0] == std::vector<char>{1, 0, 0, 0});

  const auto wide = compute_support_sets(m, s, 4.0);
  CHECK(wide.node[0] == std::vector<char>{1, 1});
  CHECK(wide.node[1] == std::vector<char>{1, 1});

  const auto half = compute_support_sets(m, s, 0.5);
  CHECK(half.pair[0] == std::vector<char>{1, 0, 0, 0});
  CHECK(half.node[0] == std::vector<char>{0, 1});
}

TEST_CASE("support sets always contain the minimum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = random_model(seed, 5, 4, 0.7);
    const auto s = init_reparam(m);
    const auto sets = compute_support_sets(m, s, 0.0);
    for (const auto& mask : sets.node)
      REQUIRE(std::count(mask.begin(), mask.end(), char(1)) >= 1);
    for (const auto& mask : sets.pair)
      REQUIRE(std::count(mask.begin(), mask.end(), char(1)) >= 1);
  }
}

TEST_CASE("node-edge agreement via arc-consistency closure") {
  const auto m = two_node_fixture();
  // at eps=0 the only marked pair (0,0) conflicts with u's marked label 1
  CHECK_FALSE(has_node_edge_agreement(compute_support_sets(m, init_reparam(m), 0.0)));

  const auto [cm, cs] = converged_fixture();
  CHECK(has_node_edge_agreement(compute_support_sets(cm, cs, 0.0)));

  const graphical_model lone({3}, {}, {{1, 0, 2}}, {});
  CHECK(has_node_edge_agreement(
      compute_support_sets(lone, init_reparam(lone), 0.0)));
}

TEST_CASE("tolerance_factor finds the smallest agreeing slack") {
  const auto m = two_node_fixture();
  CHECK(tolerance_factor(m, init_reparam(m)) == 4.0);

  const auto [cm, cs] = converged_fixture();
  CHECK(tolerance_factor(cm, cs) == 0.0);

  const graphical_model zero({2, 2}, {{0, 1}}, {{0, 0}, {0, 0}},
                             {{0, 0, 0, 0}});
  CHECK(tolerance_factor(zero, init_reparam(zero)) == 0.0);
}

TEST_CASE("tolerance_factor equals a linear scan over the slack set") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_model(seed, 5, 3, 0.8);
    auto s = init_reparam(m);
    splitmix64 rng(seed + 5);
    for (int i = 0; i < static_cast<int>(rng.below(6)); ++i)
      if (m.num_edges() > 0)
        apply_update(s, m, static_cast<int>(rng.below(m.num_edges())),
                     update_rule::handshake);
    CHECK(tolerance_factor(m, s) == linear_scan_tolerance(m, s));
  }
}

TEST_CASE("agreement is monotone in eps") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = random_model(seed, 4, 3, 1.0);
    const auto s = init_reparam(m);
    bool agreed = false;
    for (double eps : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      const bool now = has_node_edge_agreement(compute_support_sets(m, s, eps));
      if (agreed)
        REQUIRE(now);  // once true, stays true
      agreed = now;
    }
    REQUIRE(agreed);  // all slacks <= 20 here, so the largest eps agrees
  }
}

TEST_CASE("tolerance_factor is zero exactly when agreement holds at eps 0") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = random_model(seed, 4, 3, 1.0);
    auto s = init_reparam(m);
    if (m.num_edges() > 0 && seed % 2)
      for (int e = 0; e < m.num_edges(); ++e)
        apply_update(s, m, e, update_rule::handshake);
    const bool zero_agrees =
        has_node_edge_agreement(compute_support_sets(m, s, 0.0));
    CHECK((tolerance_factor(m, s) == 0.0) == zero_agrees);
  }
}

TEST_CASE("weak duality holds throughout entire solves") {
  int rule_index = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = random_model(seed, 4, 3, seed % 2 ? 0.5 : 1.0);
    const auto [opt, best] = brute_force_map(m);

    solve_config cfg;
    cfg.rule = static_cast<update_rule>(rule_index++ % 3);
    cfg.max_normalized_iterations = 60;
    const auto result = solve(m, cfg);
    for (const auto& c : result.trace.checkpoints)
      REQUIRE(c.dual <= best + 1e-9);
    REQUIRE(result.trace.final_dual <= result.trace.final_energy + 1e-6);
  }
}
