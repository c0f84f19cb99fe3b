#ifndef BLOTTO_COMMITMENT_HPP_
#define BLOTTO_COMMITMENT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

enum class CaseTag { kCase1, kCase2_1, kCase2_2 };

const char* to_string(CaseTag c);

struct CommitmentSolution {
  Allocation allocation;           // leader, caller's battlefield order
  Allocation follower_allocation;  // best response to `allocation`
  std::vector<std::size_t> support;  // ascending
  CaseTag case_tag;
  std::optional<double> alpha;
  std::optional<double> y;     // beta^2, Case 2.2 only
  std::optional<double> beta;  // signed; negative on the alpha > max ratio branch
  double leader_utility;
  double follower_utility;
};

// Sums over a support set K and its complement, plus the six quadratic
// coefficients used by the partial-support program.
struct CaseCoefficients {
  double v_aK = 0, v_bK = 0, v_aKbar = 0, v_bKbar = 0;
  double c_K = 0;  // sum over K of v_aj^2 / v_bj
  double b[6] = {};  // B1..B6

  double phi1(double alpha) const { return (b[0] * alpha + b[1]) * alpha + b[2]; }
  double phi2(double alpha) const { return (b[3] * alpha + b[4]) * alpha + b[5]; }
};

CaseCoefficients case_coefficients(const GameInstance& g,
                                   std::span<const std::size_t> K);

// Outcome of one case solver. `solution` is empty when the case is
// infeasible or the round trip through best_response does not reproduce K;
// `diagnostic` says which.
struct CaseResult {
  std::optional<CommitmentSolution> solution;
  std::string diagnostic;
};

// Leader amounts on the complement of K that put each battlefield exactly at
// the follower's water level. `x_on_K` is aligned with K. Output is in
// ascending index order of the complement.
std::vector<double> threshold_allocation_outside_support(
    const GameInstance& g, std::span<const std::size_t> K,
    std::span<const double> x_on_K);

// K: all ratios v_aj / v_bj equal (1e-9 relative) or |K| = 1.
CaseResult solve_case1(const GameInstance& g, std::span<const std::size_t> K);
// K = every battlefield; at least two distinct ratios.
CaseResult solve_case2_full_support(const GameInstance& g);
// K a proper nonempty subset with at least two distinct ratios.
CaseResult solve_case2_partial_support(const GameInstance& g,
                                       std::span<const std::size_t> K);

struct CandidateRecord {
  std::vector<std::size_t> K;  // original indices, ascending
  CaseTag case_tag;
  CaseResult result;
};

// One record per prefix of the canonical ratio order that does not split a
// tie class.
std::vector<CandidateRecord> enumerate_candidates(const GameInstance& g);

// Best valid candidate; ties within 1e-9 go to the larger support.
// Throws SolverError with per-candidate diagnostics if none is valid.
CommitmentSolution optimal_commitment(const GameInstance& g);

// max over j in K of |v_aj/sqrt(v_bj) - alpha sqrt(v_bj) - beta sqrt(x_aj)|
// relative to v_aj/sqrt(v_bj) + |alpha| sqrt(v_bj). Needs alpha and beta.
double alpha_beta_residual(const GameInstance& g, const CommitmentSolution& s);

// max relative gap between the off-support entries and
// threshold_allocation_outside_support. Zero when the support is full.
double threshold_residual(const GameInstance& g, const CommitmentSolution& s);

}  // namespace blotto

#endif  // BLOTTO_COMMITMENT_HPP_
