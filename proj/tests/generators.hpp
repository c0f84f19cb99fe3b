#ifndef BLOTTO_TESTS_GENERATORS_HPP_
#define BLOTTO_TESTS_GENERATORS_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "blotto/game.hpp"

namespace blotto::testing {

// Seeded sources for property tests. Values and budgets follow the CLI's gen
// ranges unless stated.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  GameInstance instance(std::size_t n) {
    const double xa = uniform(0.1, 10.0);
    const double xb = uniform(0.1, 10.0);
    std::vector<double> va(n), vb(n);
    for (double& v : va) v = uniform(0.1, 10.0);
    for (double& v : vb) v = uniform(0.1, 10.0);
    return GameInstance(xa, xb, std::move(va), std::move(vb));
  }

  // Strictly positive point on the simplex scaled to `budget`, entries bounded
  // away from zero by `floor` of the budget.
  Allocation allocation(std::size_t n, double budget, double floor = 1e-3) {
    std::vector<double> w(n);
    double s = 0.0;
    for (double& v : w) {
      v = floor + uniform(0.0, 1.0);
      s += v;
    }
    for (double& v : w) v *= budget / s;
    return Allocation(std::move(w), budget);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Both reference instances share values v_a = (1, 5), v_b = (1, 0.5), x_b = 1.
inline GameInstance reference_instance(double r) {
  return GameInstance(r, 1.0, {1.0, 5.0}, {1.0, 0.5});
}

}  // namespace blotto::testing

#endif  // BLOTTO_TESTS_GENERATORS_HPP_
