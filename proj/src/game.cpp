#include "blotto/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace blotto {
namespace {

void require_positive_finite(double x, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    std::ostringstream msg;
    msg << what << " must be a positive finite number, got " << x;
    throw InputError(msg.str());
  }
}

void check_index(const GameInstance& g, std::size_t j) {
  if (j >= g.n()) {
    throw InputError("battlefield index " + std::to_string(j) +
                     " out of range for n = " + std::to_string(g.n()));
  }
}

void check_profile(const GameInstance& g, const Allocation& a,
                   const Allocation& b) {
  if (a.size() != g.n() || b.size() != g.n()) {
    throw InputError("allocation length does not match battlefield count");
  }
  if (!approx_equal_rel(a.budget(), g.budget_a(), kBudgetTolerance) ||
      !approx_equal_rel(b.budget(), g.budget_b(), kBudgetTolerance)) {
    throw InputError("allocation budget does not match the instance budget");
  }
}

}  // namespace

const char* to_string(Player p) {
  return p == Player::kLeader ? "leader" : "follower";
}

bool approx_equal_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

GameInstance::GameInstance(double budget_a, double budget_b,
                           std::vector<double> values_a,
                           std::vector<double> values_b)
    : budget_a_(budget_a),
      budget_b_(budget_b),
      values_a_(std::move(values_a)),
      values_b_(std::move(values_b)) {
  require_positive_finite(budget_a_, "budget_a");
  require_positive_finite(budget_b_, "budget_b");
  if (values_a_.empty()) throw InputError("instance needs at least one battlefield");
  if (values_a_.size() != values_b_.size()) {
    throw InputError("values_a has " + std::to_string(values_a_.size()) +
                     " entries but values_b has " +
                     std::to_string(values_b_.size()));
  }
  for (double v : values_a_) require_positive_finite(v, "values_a entry");
  for (double v : values_b_) require_positive_finite(v, "values_b entry");
}

GameInstance GameInstance::with_budgets(double budget_a, double budget_b) const {
  return GameInstance(budget_a, budget_b, values_a_, values_b_);
}

GameInstance GameInstance::swapped() const {
  return GameInstance(budget_b_, budget_a_, values_b_, values_a_);
}

Allocation::Allocation(std::vector<double> amounts, double budget)
    : amounts_(std::move(amounts)), budget_(budget) {
  require_positive_finite(budget_, "allocation budget");
  double sum = 0.0;
  for (double& x : amounts_) {
    if (!std::isfinite(x) || x < -kClampTolerance * budget_) {
      std::ostringstream msg;
      msg << "allocation entry " << x << " is negative or not finite";
      throw InputError(msg.str());
    }
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (!approx_equal_rel(sum, budget_, kBudgetTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "allocation sums to " << sum << " but budget is " << budget_;
    throw InputError(msg.str());
  }
}

Allocation Allocation::scaled(double c) const {
  std::vector<double> out(amounts_);
  for (double& x : out) x *= c;
  return Allocation(std::move(out), budget_ * c);
}

bool BattlefieldOrdering::is_identity() const {
  for (std::size_t k = 0; k < permutation.size(); ++k) {
    if (permutation[k] != k) return false;
  }
  return true;
}

std::vector<double> BattlefieldOrdering::to_canonical(
    std::span<const double> original) const {
  std::vector<double> out(permutation.size());
  for (std::size_t k = 0; k < permutation.size(); ++k) {
    out[k] = original[permutation[k]];
  }
  return out;
}

std::vector<double> BattlefieldOrdering::to_original(
    std::span<const double> canonical) const {
  std::vector<double> out(permutation.size());
  for (std::size_t k = 0; k < permutation.size(); ++k) {
    out[permutation[k]] = canonical[k];
  }
  return out;
}

Allocation BattlefieldOrdering::to_canonical(const Allocation& original) const {
  return Allocation(to_canonical(std::span<const double>(original.amounts())),
                    original.budget());
}

Allocation BattlefieldOrdering::to_original(const Allocation& canonical) const {
  return Allocation(to_original(std::span<const double>(canonical.amounts())),
                    canonical.budget());
}

std::vector<std::size_t> BattlefieldOrdering::indices_to_original(
    std::span<const std::size_t> canonical) const {
  std::vector<std::size_t> out;
  out.reserve(canonical.size());
  for (std::size_t k : canonical) out.push_back(permutation.at(k));
  std::sort(out.begin(), out.end());
  return out;
}

double utility_per_battlefield(const GameInstance& g, Player p, std::size_t j,
                               const Allocation& alloc_a,
                               const Allocation& alloc_b) {
  check_index(g, j);
  check_profile(g, alloc_a, alloc_b);
  const double xa = alloc_a[j];
  const double xb = alloc_b[j];
  if (xa + xb == 0.0) {
    return p == Player::kFollower ? g.value_b(j) : 0.0;
  }
  const double own = p == Player::kLeader ? xa : xb;
  return own * g.values(p)[j] / (xa + xb);
}

double total_utility(const GameInstance& g, Player p, const Allocation& alloc_a,
                     const Allocation& alloc_b) {
  check_profile(g, alloc_a, alloc_b);
  double sum = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    sum += utility_per_battlefield(g, p, j, alloc_a, alloc_b);
  }
  return sum;
}

std::pair<GameInstance, BattlefieldOrdering> canonical_ordering(
    const GameInstance& g) {
  BattlefieldOrdering ord;
  ord.permutation.resize(g.n());
  std::iota(ord.permutation.begin(), ord.permutation.end(), std::size_t{0});
  std::stable_sort(ord.permutation.begin(), ord.permutation.end(),
                   [&g](std::size_t l, std::size_t r) {
                     return g.ratio(l) < g.ratio(r);
                   });
  ord.ratios.reserve(g.n());
  for (std::size_t k : ord.permutation) ord.ratios.push_back(g.ratio(k));
  GameInstance sorted(g.budget_a(), g.budget_b(),
                      ord.to_canonical(std::span<const double>(g.values_a())),
                      ord.to_canonical(std::span<const double>(g.values_b())));
  return {std::move(sorted), std::move(ord)};
}

bool is_ratio_prefix(const GameInstance& g, std::span<const std::size_t> support) {
  std::vector<bool> in(g.n(), false);
  for (std::size_t j : support) {
    check_index(g, j);
    in[j] = true;
  }
  double inside = 0.0;
  double outside = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (in[j]) {
      inside = std::max(inside, g.ratio(j));
    } else {
      outside = std::min(outside, g.ratio(j));
    }
  }
  return inside <= outside * (1.0 + 1e-9);
}

ReducedGame split_battlefield(const GameInstance& g, std::size_t j,
                              std::size_t t, const Allocation& alloc_a,
                              const Allocation& alloc_b) {
  check_index(g, j);
  check_profile(g, alloc_a, alloc_b);
  if (t == 0) throw InputError("split count t must be at least 1");

  std::vector<double> va, vb, xa, xb;
  const std::size_t n1 = g.n() - 1 + t;
  for (auto* v : {&va, &vb, &xa, &xb}) v->reserve(n1);
  for (std::size_t l = 0; l < g.n(); ++l) {
    if (l == j) continue;
    va.push_back(g.value_a(l));
    vb.push_back(g.value_b(l));
    xa.push_back(alloc_a[l]);
    xb.push_back(alloc_b[l]);
  }
  const double td = static_cast<double>(t);
  for (std::size_t s = 0; s < t; ++s) {
    va.push_back(g.value_a(j) / td);
    vb.push_back(g.value_b(j) / td);
    xa.push_back(alloc_a[j] / td);
    xb.push_back(alloc_b[j] / td);
  }
  return ReducedGame{GameInstance(g.budget_a(), g.budget_b(), std::move(va),
                                  std::move(vb)),
                     Allocation(std::move(xa), alloc_a.budget()),
                     Allocation(std::move(xb), alloc_b.budget())};
}

ReducedGame merge_battlefields(const GameInstance& g,
                               std::span<const std::size_t> group,
                               const Allocation& alloc_a,
                               const Allocation& alloc_b) {
  check_profile(g, alloc_a, alloc_b);
  if (group.empty()) throw InputError("merge group is empty");
  std::vector<std::size_t> members(group.begin(), group.end());
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw InputError("merge group contains a repeated index");
  }
  for (std::size_t j : members) check_index(g, j);

  constexpr double kMergeTolerance = 1e-9;
  const std::size_t head = members.front();
  for (std::size_t j : members) {
    const auto uniform = [&](double a, double b) {
      return a == b || approx_equal_rel(a, b, kMergeTolerance);
    };
    if (!uniform(g.value_a(head), g.value_a(j)) ||
        !uniform(alloc_a[head], alloc_a[j]) ||
        !uniform(alloc_b[head], alloc_b[j])) {
      throw PreconditionError(
          "battlefields " + std::to_string(head) + " and " + std::to_string(j) +
          " differ in leader value or allocation; cannot merge");
    }
  }

  std::vector<double> va, vb, xa, xb;
  for (std::size_t l = 0; l < g.n(); ++l) {
    if (l == head) {
      double sva = 0, svb = 0, sxa = 0, sxb = 0;
      for (std::size_t j : members) {
        sva += g.value_a(j);
        svb += g.value_b(j);
        sxa += alloc_a[j];
        sxb += alloc_b[j];
      }
      va.push_back(sva);
      vb.push_back(svb);
      xa.push_back(sxa);
      xb.push_back(sxb);
    } else if (!std::binary_search(members.begin(), members.end(), l)) {
      va.push_back(g.value_a(l));
      vb.push_back(g.value_b(l));
      xa.push_back(alloc_a[l]);
      xb.push_back(alloc_b[l]);
    }
  }
  return ReducedGame{GameInstance(g.budget_a(), g.budget_b(), std::move(va),
                                  std::move(vb)),
                     Allocation(std::move(xa), alloc_a.budget()),
                     Allocation(std::move(xb), alloc_b.budget())};
}

}  // namespace blotto
