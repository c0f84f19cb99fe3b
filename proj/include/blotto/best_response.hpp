#ifndef BLOTTO_BEST_RESPONSE_HPP_
#define BLOTTO_BEST_RESPONSE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

struct BestResponseResult {
  Allocation allocation;
  // Battlefields with positive follower allocation, ascending index.
  std::vector<std::size_t> support;
  // Common marginal utility on the support.
  double water_level;
};

// Closed-form follower best response. Every leader entry must be > 0.
BestResponseResult best_response(const GameInstance& g,
                                 const Allocation& leader_alloc);

// x_aj * v_bj / (x_aj + x_bj)^2
double follower_marginal_utility(const GameInstance& g, std::size_t j,
                                 double x_aj, double x_bj);

// Support of the best response, listed by descending v_bj / x_aj (stable).
std::vector<std::size_t> support_prefix(const GameInstance& g,
                                        const Allocation& leader_alloc);

namespace detail {

// Unchecked water filling on raw buffers. `order` is scratch space of size n.
// Writes the follower allocation into `out` and returns the water level.
// Battlefield j joins only if sqrt(v_bj / x_aj) beats the running level by a
// relative margin of kTieTolerance, so exact ties stay outside.
inline constexpr double kTieTolerance = 1e-12;

double water_fill(std::span<const double> values_b,
                  std::span<const double> leader, double budget_b,
                  std::span<std::size_t> order, std::span<double> out,
                  std::size_t* support_size = nullptr);

}  // namespace detail
}  // namespace blotto

#endif  // BLOTTO_BEST_RESPONSE_HPP_
