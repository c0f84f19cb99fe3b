#ifndef BLOTTO_NASH_HPP_
#define BLOTTO_NASH_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

struct NashSolution {
  double mu_star;
  Allocation alloc_a;
  Allocation alloc_b;
  double leader_utility;
  double follower_utility;
  // Every root located on the interval, including ones whose profile failed
  // the mutual best-response check.
  std::vector<double> all_roots;
  // |f(mu*)| against the largest |f| seen while scanning the interval, both
  // taken after dividing f by prod_j (mu + s_j)^2.
  double relative_residual;
};

// sum_h v_bh mu (mu - s_h z) prod_{j != h} (mu + s_j)^2, with s_h = v_bh/v_ah
// and z = x_a / x_b.
double nash_poly(const GameInstance& g, double mu);

// [min_h s_h z, max_h s_h z]
std::pair<double, double> nash_root_interval(const GameInstance& g);

NashSolution solve_nash(const GameInstance& g);

}  // namespace blotto

#endif  // BLOTTO_NASH_HPP_
