#include "blotto/nash.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "blotto/best_response.hpp"

namespace blotto {
namespace {

constexpr int kScanCells = 4096;
constexpr double kMutualTolerance = 1e-6;

// f(mu) divided by prod_j (mu + s_j)^2. Same sign and roots as nash_poly on
// mu > 0, without the overflow of the full product.
double reduced_poly(const GameInstance& g, double mu) {
  const double z = g.budget_a() / g.budget_b();
  double sum = 0.0;
  for (std::size_t h = 0; h < g.n(); ++h) {
    const double s = g.value_b(h) / g.value_a(h);
    sum += g.value_b(h) * mu * (mu - s * z) / ((mu + s) * (mu + s));
  }
  return sum;
}

struct Profile {
  std::vector<double> xa, xb;
};

Profile reconstruct(const GameInstance& g, double mu) {
  const std::size_t n = g.n();
  Profile p{std::vector<double>(n), std::vector<double>(n)};
  double wsum = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    const double s = g.value_b(h) / g.value_a(h);
    p.xb[h] = g.value_b(h) * s * mu / ((mu + s) * (mu + s));
    wsum += p.xb[h];
  }
  double asum = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    const double s = g.value_b(h) / g.value_a(h);
    p.xb[h] *= g.budget_b() / wsum;
    p.xa[h] = mu / s * p.xb[h];
    asum += p.xa[h];
  }
  // The leader budget identity is exactly f(mu) = 0; absorb the root's
  // rounding so the profile is feasible.
  for (double& v : p.xa) v *= g.budget_a() / asum;
  return p;
}

bool mutual_best_response(const GameInstance& g, const Allocation& a,
                          const Allocation& b) {
  const BestResponseResult fb = best_response(g, a);
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (std::abs(fb.allocation[j] - b[j]) > kMutualTolerance * g.budget_b()) return false;
  }
  const BestResponseResult fa = best_response(g.swapped(), b);
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (std::abs(fa.allocation[j] - a[j]) > kMutualTolerance * g.budget_a()) return false;
  }
  return true;
}

}  // namespace

double nash_poly(const GameInstance& g, double mu) {
  if (!(mu > 0.0)) throw InputError("nash_poly needs mu > 0");
  const double z = g.budget_a() / g.budget_b();
  double total = 0.0;
  for (std::size_t h = 0; h < g.n(); ++h) {
    const double s = g.value_b(h) / g.value_a(h);
    double term = g.value_b(h) * mu * (mu - s * z);
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (j == h) continue;
      const double d = mu + g.value_b(j) / g.value_a(j);
      term *= d * d;
    }
    total += term;
  }
  return total;
}

std::pair<double, double> nash_root_interval(const GameInstance& g) {
  const double z = g.budget_a() / g.budget_b();
  double lo = g.value_b(0) / g.value_a(0) * z, hi = lo;
  for (std::size_t h = 1; h < g.n(); ++h) {
    const double v = g.value_b(h) / g.value_a(h) * z;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

NashSolution solve_nash(const GameInstance& g) {
  const auto [lo, hi] = nash_root_interval(g);
  std::vector<double> roots;
  double f_scale = 0.0;

  if (hi - lo <= 1e-14 * hi) {
    roots.push_back(0.5 * (lo + hi));
  } else {
    // Cells are spaced geometrically: the interval can span decades.
    std::vector<double> mu(kScanCells + 1), f(kScanCells + 1);
    const double ratio = std::log(hi / lo);
    for (int i = 0; i <= kScanCells; ++i) {
      mu[i] = i == kScanCells ? hi : lo * std::exp(ratio * i / kScanCells);
      f[i] = reduced_poly(g, mu[i]);
      f_scale = std::max(f_scale, std::abs(f[i]));
    }
    const auto tol = [](double a, double b) {
      return std::abs(b - a) <= 1e-15 * std::max(std::abs(a), std::abs(b));
    };
    for (int i = 0; i < kScanCells; ++i) {
      if (f[i] == 0.0) {
        roots.push_back(mu[i]);
        continue;
      }
      if (i + 1 == kScanCells && f[i + 1] == 0.0) roots.push_back(mu[i + 1]);
      if ((f[i] < 0.0) != (f[i + 1] < 0.0) && f[i + 1] != 0.0) {
        auto [a, b] = boost::math::tools::bisect(
            [&g](double m) { return reduced_poly(g, m); }, mu[i], mu[i + 1], tol);
        roots.push_back(0.5 * (a + b));
      }
    }
    if (roots.empty()) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "no sign change of the equilibrium polynomial on [" << lo << ", " << hi
          << "]; samples:";
      for (int i = 0; i <= kScanCells; i += kScanCells / 8) msg << ' ' << f[i];
      throw SolverError(msg.str());
    }
  }

  std::optional<NashSolution> best;
  for (double mu : roots) {
    Profile p = reconstruct(g, mu);
    Allocation a(std::move(p.xa), g.budget_a());
    Allocation b(std::move(p.xb), g.budget_b());
    if (!mutual_best_response(g, a, b)) continue;
    const double ua = total_utility(g, Player::kLeader, a, b);
    if (best && ua <= best->leader_utility) continue;
    const double ub = total_utility(g, Player::kFollower, a, b);
    const double resid = f_scale > 0.0 ? std::abs(reduced_poly(g, mu)) / f_scale : 0.0;
    best.emplace(NashSolution{mu, std::move(a), std::move(b), ua, ub, {}, resid});
  }
  if (!best) {
    std::ostringstream msg;
    msg << "none of the " << roots.size()
        << " polynomial roots gives a mutual best response";
    throw SolverError(msg.str());
  }
  best->all_roots = std::move(roots);
  return *best;
}

}  // namespace blotto
