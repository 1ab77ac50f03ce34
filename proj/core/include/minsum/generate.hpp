#ifndef MINSUM_GENERATE_HPP
#define MINSUM_GENERATE_HPP

#include <cstdint>

#include "minsum/model.hpp"

namespace minsum {

// splitmix64 with fixed constants so generated benchmarks reproduce
// bit-for-bit across platforms and language ports.
class splitmix64 {
public:
  explicit splitmix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
  std::uint64_t state_;
};

// Complete graph on n nodes, all costs i.i.d. uniform [0,1). Draw order:
// unaries by node then label, pairwise by lexicographic edge then row-major.
graphical_model gen_complete(int n, int labels, std::uint64_t seed);

// 4-connected rows x cols grid with uniform [0,1) unaries and Potts
// pairwise costs lambda * [s != t]. Node index = r * cols + c; edges are
// drawn right neighbor first, then down, scanning row-major.
graphical_model gen_potts_grid(int rows, int cols, int labels, double lambda,
                               std::uint64_t seed);

// Keeps round(keep_fraction * |E|) edges (at least one if the model has
// any), selected by a seeded Fisher-Yates shuffle and re-sorted into
// canonical lexicographic order. Unaries are untouched. keep_fraction = 1
// returns the model unchanged.
graphical_model sparsify(const graphical_model& m, double keep_fraction,
                         std::uint64_t seed);

}  // namespace minsum

#endif
