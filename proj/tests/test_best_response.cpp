#include <cmath>

#include "doctest.h"

#include "blotto/best_response.hpp"
#include "generators.hpp"

using namespace blotto;
using blotto::testing::Gen;

TEST_CASE("reference instance, r = 2") {
  const GameInstance g = testing::reference_instance(2.0);
  const BestResponseResult br = best_response(g, Allocation({0.543, 1.457}, 2.0));
  CHECK(std::abs(br.allocation[0] - 0.847) <= 1e-3);
  CHECK(std::abs(br.allocation[1] - 0.153) <= 1e-3);
  CHECK(br.support == std::vector<std::size_t>{0, 1});
}

TEST_CASE("single battlefield takes the whole budget") {
  GameInstance g(0.3, 2.5, {1.0}, {7.0});
  const BestResponseResult br = best_response(g, Allocation({0.3}, 0.3));
  CHECK(br.allocation[0] == doctest::Approx(2.5));
  CHECK(br.support == std::vector<std::size_t>{0});
}

TEST_CASE("zero leader entries are rejected") {
  GameInstance g(1.0, 1.0, {1.0, 1.0}, {1.0, 1.0});
  CHECK_THROWS_AS(best_response(g, Allocation({1.0, 0.0}, 1.0)), UnsupportedInputError);
  CHECK_THROWS_AS(support_prefix(g, Allocation({0.0, 1.0}, 1.0)), UnsupportedInputError);
}

TEST_CASE("marginal utility") {
  GameInstance g(1.0, 1.0, {1.0, 1.0}, {4.0, 3.0});
  CHECK(follower_marginal_utility(g, 1, 2.0, 0.0) == doctest::Approx(1.5));
  CHECK(follower_marginal_utility(g, 0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(follower_marginal_utility(g, 0, 0.0, 0.0), InputError);
  double prev = follower_marginal_utility(g, 0, 0.7, 0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double cur = follower_marginal_utility(g, 0, 0.7, k * 0.01);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("support prefix") {
  SUBCASE("leader proportional to follower values") {
    GameInstance g(6.0, 1.0, {1.0, 1.0, 1.0}, {1.0, 2.0, 3.0});
    CHECK(support_prefix(g, Allocation({1.0, 2.0, 3.0}, 6.0)).size() == 3);
  }
  SUBCASE("flooding past the threshold drops the battlefield") {
    // Against x_a0 = 1, x_b = 1, v_b = (1, 1) the threshold on battlefield 1 is 4.
    GameInstance over(5.1, 1.0, {1.0, 1.0}, {1.0, 1.0});
    CHECK(support_prefix(over, Allocation({1.0, 4.1}, 5.1)) == std::vector<std::size_t>{0});
    GameInstance at(5.0, 1.0, {1.0, 1.0}, {1.0, 1.0});
    CHECK(support_prefix(at, Allocation({1.0, 4.0}, 5.0)) == std::vector<std::size_t>{0});
    GameInstance under(4.9, 1.0, {1.0, 1.0}, {1.0, 1.0});
    CHECK(support_prefix(under, Allocation({1.0, 3.9}, 4.9)).size() == 2);
  }
  SUBCASE("reference commitment at r = 0.5 keeps both") {
    const GameInstance g = testing::reference_instance(0.5);
    CHECK(support_prefix(g, Allocation({0.136, 0.364}, 0.5)).size() == 2);
  }
  SUBCASE("listed by descending v_b / x_a") {
    GameInstance g(3.0, 10.0, {1.0, 1.0, 1.0}, {1.0, 3.0, 2.0});
    CHECK(support_prefix(g, Allocation({1.0, 1.0, 1.0}, 3.0)) ==
          std::vector<std::size_t>{1, 2, 0});
  }
}

TEST_CASE("optimality conditions on random instances") {
  Gen gen(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = gen.integer(1, 6);
    const GameInstance g = gen.instance(n);
    const Allocation a = gen.allocation(n, g.budget_a(), 1e-2);
    const BestResponseResult br = best_response(g, a);
    std::vector<bool> in(n, false);
    for (std::size_t j : br.support) in[j] = true;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += br.allocation[j];
      const double ratio = g.value_b(j) / a[j];
      if (in[j]) {
        CHECK(br.allocation[j] > 0.0);
        CHECK(ratio > br.water_level - 1e-9);
        const double m = follower_marginal_utility(g, j, a[j], br.allocation[j]);
        CHECK(std::abs(m - br.water_level) <= 1e-7 * br.water_level);
      } else {
        CHECK(br.allocation[j] == 0.0);
        CHECK(ratio <= br.water_level + 1e-9);
      }
    }
    CHECK(sum == doctest::Approx(g.budget_b()).epsilon(1e-12));
  }
}

TEST_CASE("beats random follower allocations") {
  Gen gen(17);
  for (int t = 0; t < 5; ++t) {
    const GameInstance g = gen.instance(3);
    const Allocation a = gen.allocation(3, g.budget_a(), 1e-2);
    const BestResponseResult br = best_response(g, a);
    const double best = total_utility(g, Player::kFollower, a, br.allocation);
    double worst_gap = 1.0;
    for (int s = 0; s < 200000; ++s) {
      const Allocation b = gen.allocation(3, g.budget_b(), 0.0);
      worst_gap = std::min(worst_gap, best - total_utility(g, Player::kFollower, a, b));
    }
    CHECK(worst_gap >= -1e-12);
  }
}

TEST_CASE("perturbing two support coordinates loses utility") {
  Gen gen(23);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.integer(2, 5);
    const GameInstance g = gen.instance(n);
    const Allocation a = gen.allocation(n, g.budget_a(), 1e-2);
    const BestResponseResult br = best_response(g, a);
    if (br.support.size() < 2) continue;
    const double u0 = total_utility(g, Player::kFollower, a, br.allocation);
    const double delta = 1e-4 * g.budget_b();
    const std::size_t i = br.support[0], j = br.support[1];
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> x = br.allocation.amounts();
      x[i] += sgn * delta;
      x[j] -= sgn * delta;
      if (x[i] < 0.0 || x[j] < 0.0) continue;
      CHECK(total_utility(g, Player::kFollower, a, Allocation(x, g.budget_b())) < u0);
    }
  }
}

TEST_CASE("scaling budgets scales the response") {
  Gen gen(29);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.integer(1, 5);
    const GameInstance g = gen.instance(n);
    const Allocation a = gen.allocation(n, g.budget_a(), 1e-2);
    const double c = gen.uniform(0.1, 10.0);
    const GameInstance gc = g.with_budgets(c * g.budget_a(), c * g.budget_b());
    const BestResponseResult br = best_response(g, a);
    const BestResponseResult bc = best_response(gc, a.scaled(c));
    CHECK(bc.support == br.support);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(bc.allocation[j] - c * br.allocation[j]) <= 1e-10 * c * g.budget_b());
    }
  }
}
