#ifndef BLOTTO_ORACLE_HPP_
#define BLOTTO_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

// Brute-force verifiers. Independent of the closed forms except that the
// commitment oracle asks best_response for the follower's reply.

struct GridSpec {
  int resolution = 300;
  int refinement_rounds = 2;
  std::uint64_t point_cap = 10'000'000;
};

// Raised when a grid would exceed its point cap; carries the cap needed.
class GridCapError : public InputError {
 public:
  GridCapError(const std::string& what, std::uint64_t required)
      : InputError(what), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

struct OracleBestResponse {
  Allocation allocation;
  double utility;
};

struct OracleCommitment {
  Allocation allocation;
  double utility;
  std::vector<std::size_t> support;  // follower support it induces, ascending
};

// Best follower point among all compositions of budget_b into `resolution`
// equal steps, then refinement rounds on a grid four times finer within
// +/- 4 fine steps of the incumbent. Each search is an exact max-plus dynamic
// program over the grid (the follower's utility is separable), which finds
// the same maximum as listing the compositions.
OracleBestResponse oracle_best_response(const GameInstance& g,
                                        const Allocation& leader_alloc,
                                        const GridSpec& grid);

// Best leader point among compositions of budget_a into `resolution` steps
// with every entry at least one step, then refinement as above. Ties keep the
// lexicographically smallest point.
OracleCommitment oracle_commitment(const GameInstance& g, const GridSpec& grid);

// Number of compositions of m into n positive parts, saturating at UINT64_MAX.
std::uint64_t count_positive_compositions(std::uint64_t m, std::uint64_t n);

}  // namespace blotto

#endif  // BLOTTO_ORACLE_HPP_
