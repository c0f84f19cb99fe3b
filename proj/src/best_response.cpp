#include "blotto/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace blotto {
namespace detail {

double water_fill(std::span<const double> values_b,
                  std::span<const double> leader, double budget_b,
                  std::span<std::size_t> order, std::span<double> out,
                  std::size_t* support_size) {
  const std::size_t n = leader.size();
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return values_b[l] / leader[l] > values_b[r] / leader[r];
  });

  double s = 0.0;  // sum of sqrt(x_al v_bl) over the prefix
  double t = budget_b;  // x_b plus prefix leader mass
  std::size_t k = 0;
  for (; k < n; ++k) {
    const std::size_t j = order[k];
    const double a = std::sqrt(values_b[j] / leader[j]);
    if (k > 0 && !(a > (s / t) * (1.0 + kTieTolerance))) break;
    s += std::sqrt(leader[j] * values_b[j]);
    t += leader[j];
  }

  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = order[i];
    out[j] = std::max(0.0, std::sqrt(leader[j] * values_b[j]) * t / s - leader[j]);
  }
  if (support_size != nullptr) *support_size = k;
  return (s / t) * (s / t);
}

}  // namespace detail

namespace {

void check_leader(const GameInstance& g, const Allocation& leader) {
  if (leader.size() != g.n()) {
    throw InputError("leader allocation has " + std::to_string(leader.size()) +
                     " entries, instance has " + std::to_string(g.n()));
  }
  if (!approx_equal_rel(leader.budget(), g.budget_a(), kBudgetTolerance)) {
    throw InputError("leader allocation budget does not match budget_a");
  }
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (!(leader[j] > 0.0)) {
      std::ostringstream msg;
      msg << "leader allocation entry " << j << " is " << leader[j]
          << "; the closed form needs every entry > 0 (clamp zeros to "
             "1e-12 * budget_a first)";
      throw UnsupportedInputError(msg.str());
    }
  }
}

}  // namespace

BestResponseResult best_response(const GameInstance& g,
                                 const Allocation& leader_alloc) {
  check_leader(g, leader_alloc);
  const std::size_t n = g.n();
  std::vector<std::size_t> order(n);
  std::vector<double> out(n);
  std::size_t k = 0;
  const double level = detail::water_fill(g.values_b(), leader_alloc.amounts(),
                                          g.budget_b(), order, out, &k);

  std::vector<std::size_t> support(order.begin(), order.begin() + k);
  std::sort(support.begin(), support.end());
  return BestResponseResult{Allocation(std::move(out), g.budget_b()),
                            std::move(support), level};
}

double follower_marginal_utility(const GameInstance& g, std::size_t j,
                                 double x_aj, double x_bj) {
  if (j >= g.n()) throw InputError("battlefield index out of range");
  if (x_aj < 0.0 || x_bj < 0.0) throw InputError("allocations must be nonnegative");
  if (x_aj + x_bj <= 0.0) {
    throw InputError("marginal utility is unbounded when both allocations are zero");
  }
  const double d = x_aj + x_bj;
  return x_aj * g.value_b(j) / (d * d);
}

std::vector<std::size_t> support_prefix(const GameInstance& g,
                                        const Allocation& leader_alloc) {
  check_leader(g, leader_alloc);
  std::vector<std::size_t> order(g.n());
  std::vector<double> out(g.n());
  std::size_t k = 0;
  detail::water_fill(g.values_b(), leader_alloc.amounts(), g.budget_b(), order,
                     out, &k);
  order.resize(k);
  return order;
}

}  // namespace blotto
