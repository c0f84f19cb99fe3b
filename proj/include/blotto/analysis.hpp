#ifndef BLOTTO_ANALYSIS_HPP_
#define BLOTTO_ANALYSIS_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "blotto/commitment.hpp"
#include "blotto/game.hpp"
#include "blotto/nash.hpp"

namespace blotto {

struct CoincidenceReport {
  // Battlefields grouped by value ratio v_aj / v_bj, classes in ascending
  // ratio order.
  std::vector<std::vector<std::size_t>> ratio_classes;
  bool coincides = false;
  // Budget ratio x_a / x_b at which the two equilibria agree; only set when
  // there are exactly two classes.
  std::optional<double> threshold;
};

struct ComparisonReport {
  CommitmentSolution se;
  NashSolution ne;
  double leader_ratio;    // SE / NE leader utility
  double follower_ratio;  // SE / NE follower utility
  double ratio_cap;      // (x_a + x_b) / x_a
};

// Two-battlefield bounds on the SE/NE leader ratio, evaluated in the frame
// x_b = 1, v_a2 = v_b2 = 1 where battlefield 1 has the lower value ratio.
struct TwoBattlefieldBounds {
  double lower;
  double upper;
  // The rescaled instance the bounds refer to.
  double v_a1, v_b1, x_a;
  // Original index mapped to frame battlefield 1.
  std::size_t first;
};

struct AdvantageBounds {
  double ne_lower;    // x_a / (x_a + x_b) * sum v_a
  double ratio_cap;  // (x_a + x_b) / x_a
  std::optional<TwoBattlefieldBounds> two_battlefield;
};

struct SweepRow {
  double r;
  double se_u_a, se_u_b, ne_u_a, ne_u_b;
  bool coincides;
  std::string diagnostic;  // empty when both solvers succeeded
};

// Partition by ratio with 1e-9 relative tolerance against each class's first
// (smallest) member.
std::vector<std::vector<std::size_t>> ratio_classes(const GameInstance& g);

double coincidence_threshold(double v_aM, double v_bM, double v_aMbar,
                             double v_bMbar);

CoincidenceReport check_coincidence(const GameInstance& g);

// Throws SolverError if 1 <= leader_ratio <= ratio_cap fails beyond 1e-9.
ComparisonReport compare(const GameInstance& g);

// Raw bound formulas in the normalized frame, no assumption checks.
TwoBattlefieldBounds two_battlefield_bounds(double v_a1, double v_b1, double x_a);

AdvantageBounds leader_advantage_bounds(const GameInstance& g);

// x_b fixed, x_a = r * x_b per row; rows come back sorted by r.
std::vector<SweepRow> budget_sweep(const GameInstance& g,
                                   std::span<const double> r_values);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace blotto

#endif  // BLOTTO_ANALYSIS_HPP_
