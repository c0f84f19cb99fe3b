#ifndef BLOTTO_GAME_HPP_
#define BLOTTO_GAME_HPP_

// Two-player Lottery Colonel Blotto game: instance and allocation value types,
// proportional-share utilities, canonical battlefield ordering, and the
// split / merge reductions that preserve both players' utilities.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blotto {

// Caller supplied something outside the model (bad index, non-positive value,
// length mismatch, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold for otherwise
// well-formed input (e.g. a merge group that is not structurally uniform).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but outside what an operation supports (zero leader
// entries passed to the best-response closed form).
class UnsupportedInputError : public InputError {
 public:
  using InputError::InputError;
};

// A solver could not establish one of its own guarantees.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Player { kLeader, kFollower };

const char* to_string(Player p);

// Relative tolerance on the budget identity of an Allocation.
inline constexpr double kBudgetTolerance = 1e-9;
// Entries in [-kClampTolerance, 0) are treated as rounding noise and clamped.
inline constexpr double kClampTolerance = 1e-12;

class GameInstance {
 public:
  GameInstance(double budget_a, double budget_b, std::vector<double> values_a,
               std::vector<double> values_b);

  std::size_t n() const { return values_a_.size(); }
  double budget_a() const { return budget_a_; }
  double budget_b() const { return budget_b_; }
  double budget(Player p) const {
    return p == Player::kLeader ? budget_a_ : budget_b_;
  }
  const std::vector<double>& values_a() const { return values_a_; }
  const std::vector<double>& values_b() const { return values_b_; }
  const std::vector<double>& values(Player p) const {
    return p == Player::kLeader ? values_a_ : values_b_;
  }
  double value_a(std::size_t j) const { return values_a_.at(j); }
  double value_b(std::size_t j) const { return values_b_.at(j); }
  // v_aj / v_bj
  double ratio(std::size_t j) const { return values_a_.at(j) / values_b_.at(j); }

  // Same values with both budgets replaced.
  GameInstance with_budgets(double budget_a, double budget_b) const;
  // Leader and follower exchanged.
  GameInstance swapped() const;

  bool operator==(const GameInstance&) const = default;

 private:
  double budget_a_;
  double budget_b_;
  std::vector<double> values_a_;
  std::vector<double> values_b_;
};

// One player's split of a budget across the battlefields.
class Allocation {
 public:
  // Validates: entries finite and >= -kClampTolerance * budget (negatives are
  // clamped to 0), sum within kBudgetTolerance (relative) of budget.
  Allocation(std::vector<double> amounts, double budget);

  std::size_t size() const { return amounts_.size(); }
  double operator[](std::size_t j) const { return amounts_[j]; }
  double at(std::size_t j) const { return amounts_.at(j); }
  double budget() const { return budget_; }
  const std::vector<double>& amounts() const { return amounts_; }

  Allocation scaled(double c) const;

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<double> amounts_;
  double budget_;
};

// Sorting record for ascending relative value ratio v_aj / v_bj.
// position k of the canonical game holds original battlefield permutation[k].
struct BattlefieldOrdering {
  std::vector<std::size_t> permutation;
  std::vector<double> ratios;

  bool is_identity() const;
  // Original-order vector -> canonical-order vector.
  std::vector<double> to_canonical(std::span<const double> original) const;
  // Canonical-order vector -> original-order vector.
  std::vector<double> to_original(std::span<const double> canonical) const;
  Allocation to_canonical(const Allocation& original) const;
  Allocation to_original(const Allocation& canonical) const;
  // Maps canonical battlefield indices back to original indices, sorted.
  std::vector<std::size_t> indices_to_original(
      std::span<const std::size_t> canonical) const;
};

// Instance together with one strategy profile, as produced by the reductions.
struct ReducedGame {
  GameInstance instance;
  Allocation alloc_a;
  Allocation alloc_b;
};

// x_ij * v_ij / (x_aj + x_bj); when both are zero the follower takes v_bj.
double utility_per_battlefield(const GameInstance& g, Player p, std::size_t j,
                               const Allocation& alloc_a,
                               const Allocation& alloc_b);

double total_utility(const GameInstance& g, Player p, const Allocation& alloc_a,
                     const Allocation& alloc_b);

// Stable sort by ascending v_aj / v_bj (ties keep original index order).
std::pair<GameInstance, BattlefieldOrdering> canonical_ordering(
    const GameInstance& g);

// Removes battlefield j and appends t copies carrying v/t and x/t.
ReducedGame split_battlefield(const GameInstance& g, std::size_t j,
                              std::size_t t, const Allocation& alloc_a,
                              const Allocation& alloc_b);

// Replaces the battlefields in `group` by a single battlefield at the position
// of the smallest index, holding the summed values and allocations. Requires
// equal leader values and equal allocations (both players) inside the group,
// within 1e-9 relative.
ReducedGame merge_battlefields(const GameInstance& g,
                               std::span<const std::size_t> group,
                               const Allocation& alloc_a,
                               const Allocation& alloc_b);

// True when every battlefield outside `support` has a value ratio no smaller
// than every ratio inside it (1e-9 relative slack), i.e. the set is a prefix of
// the canonical order up to reordering within tie classes.
bool is_ratio_prefix(const GameInstance& g, std::span<const std::size_t> support);

// |a - b| <= tol * max(|a|, |b|)
bool approx_equal_rel(double a, double b, double tol);

}  // namespace blotto

#endif  // BLOTTO_GAME_HPP_
