#include "blotto/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "blotto/best_response.hpp"

namespace blotto {
namespace {

constexpr int kWindow = 4;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_grid(const GridSpec& grid) {
  if (grid.resolution < 2) throw InputError("grid resolution must be at least 2");
  if (grid.refinement_rounds < 0) throw InputError("refinement rounds must be >= 0");
}

void require_cap(std::uint64_t needed, const GridSpec& grid, const char* what) {
  if (needed > grid.point_cap) {
    throw GridCapError(std::string(what) + " needs " + std::to_string(needed) +
                           " grid evaluations, over the cap of " +
                           std::to_string(grid.point_cap) +
                           "; raise point_cap to at least that or lower the resolution",
                       needed);
  }
}

double follower_gain(double v_b, double x_a, double x_b) {
  if (x_a + x_b == 0.0) return v_b;
  return v_b * x_b / (x_a + x_b);
}

// Max-plus knapsack: choose one option per battlefield so that the option
// "weights" sum to `target`. weight[j][i] in [0, max_weight]; returns the
// chosen option index per battlefield, preferring the smallest index at the
// earliest battlefield on ties.
std::vector<int> maxplus_choose(const std::vector<std::vector<double>>& gain,
                                const std::vector<std::vector<int>>& weight,
                                int target) {
  const std::size_t n = gain.size();
  // best[j][m]: best total for battlefields j..n-1 using exactly m units.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(target + 1, kNegInf));
  std::vector<std::vector<int>> pick(n, std::vector<int>(target + 1, -1));
  best[n][0] = 0.0;
  for (std::size_t jj = n; jj-- > 0;) {
    for (int m = 0; m <= target; ++m) {
      double b = kNegInf;
      int arg = -1;
      for (std::size_t i = 0; i < gain[jj].size(); ++i) {
        const int w = weight[jj][i];
        if (w > m || best[jj + 1][m - w] == kNegInf) continue;
        const double v = gain[jj][i] + best[jj + 1][m - w];
        if (v > b) {
          b = v;
          arg = static_cast<int>(i);
        }
      }
      best[jj][m] = b;
      pick[jj][m] = arg;
    }
  }
  std::vector<int> out(n);
  int m = target;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = pick[j][m];
    m -= weight[j][out[j]];
  }
  return out;
}

// Calls fn(parts) for every composition of `total` into parts.size() parts,
// each >= min_part, in lexicographic order.
template <class Fn>
void for_each_composition(int total, int min_part, std::vector<int>& parts,
                          std::size_t pos, Fn&& fn) {
  const int rest = static_cast<int>(parts.size() - pos - 1);
  if (rest == 0) {
    parts[pos] = total;
    fn(parts);
    return;
  }
  for (int k = min_part; k <= total - rest * min_part; ++k) {
    parts[pos] = k;
    for_each_composition(total - k, min_part, parts, pos + 1, fn);
  }
}

}  // namespace

std::uint64_t count_positive_compositions(std::uint64_t m, std::uint64_t n) {
  if (n == 0 || m < n) return 0;
  // C(m-1, n-1)
  std::uint64_t k = std::min(n - 1, m - n);
  long double c = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(m - n + i) / static_cast<long double>(i);
  }
  if (c >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(c));
}

OracleBestResponse oracle_best_response(const GameInstance& g,
                                        const Allocation& leader_alloc,
                                        const GridSpec& grid) {
  check_grid(grid);
  if (leader_alloc.size() != g.n()) throw InputError("leader allocation length mismatch");
  const std::size_t n = g.n();
  const int res = grid.resolution;
  const std::uint64_t coarse =
      static_cast<std::uint64_t>(n) * (res + 1ULL) * (res + 2ULL) / 2ULL;
  const std::uint64_t fine = static_cast<std::uint64_t>(grid.refinement_rounds) * n *
                             (2 * kWindow + 1) * (2ULL * kWindow * n + 1);
  require_cap(coarse + fine, grid, "oracle_best_response");

  const double xb = g.budget_b();
  double step = xb / res;
  std::vector<std::vector<double>> gain(n, std::vector<double>(res + 1));
  std::vector<std::vector<int>> weight(n, std::vector<int>(res + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = 0; k <= res; ++k) {
      gain[j][k] = follower_gain(g.value_b(j), leader_alloc[j], k * step);
      weight[j][k] = k;
    }
  }
  std::vector<int> choice = maxplus_choose(gain, weight, res);
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = choice[j] * step;

  // Window offsets d in [-4, 4] become weights d + 4; their sum must stay
  // 4n so the budget is unchanged.
  for (int round = 0; round < grid.refinement_rounds; ++round) {
    step /= 4.0;
    std::vector<std::vector<double>> fg(n);
    std::vector<std::vector<int>> fw(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (int d = -kWindow; d <= kWindow; ++d) {
        const double v = x[j] + d * step;
        if (v < 0.0) continue;
        fg[j].push_back(follower_gain(g.value_b(j), leader_alloc[j], v));
        fw[j].push_back(d + kWindow);
      }
    }
    std::vector<int> pick = maxplus_choose(fg, fw, kWindow * static_cast<int>(n));
    for (std::size_t j = 0; j < n; ++j) x[j] += (fw[j][pick[j]] - kWindow) * step;
  }
  for (double& v : x) v = std::max(v, 0.0);

  Allocation alloc(std::move(x), xb);
  const double u = total_utility(g, Player::kFollower, leader_alloc, alloc);
  return OracleBestResponse{std::move(alloc), u};
}

OracleCommitment oracle_commitment(const GameInstance& g, const GridSpec& grid) {
  check_grid(grid);
  const std::size_t n = g.n();
  const int res = grid.resolution;
  if (static_cast<std::size_t>(res) < n) {
    throw InputError("resolution must be at least the number of battlefields");
  }
  std::uint64_t window = 1;
  for (std::size_t j = 1; j < n; ++j) window *= 2 * kWindow + 1;
  const std::uint64_t coarse = count_positive_compositions(res, n);
  const std::uint64_t total =
      coarse == std::numeric_limits<std::uint64_t>::max()
          ? coarse
          : coarse + window * static_cast<std::uint64_t>(grid.refinement_rounds);
  require_cap(total, grid, "oracle_commitment");

  const double xa = g.budget_a();
  std::vector<std::size_t> order(n);
  std::vector<double> x(n), y(n);
  const auto leader_value = [&](const std::vector<double>& pt) {
    detail::water_fill(g.values_b(), pt, g.budget_b(), order, y);
    double u = 0.0;
    for (std::size_t j = 0; j < n; ++j) u += g.value_a(j) * pt[j] / (pt[j] + y[j]);
    return u;
  };

  double step = xa / res;
  double best_u = kNegInf;
  std::vector<double> best_x(n);
  std::vector<int> parts(n);
  for_each_composition(res, 1, parts, 0, [&](const std::vector<int>& p) {
    for (std::size_t j = 0; j < n; ++j) x[j] = p[j] * step;
    const double u = leader_value(x);
    if (u > best_u) {
      best_u = u;
      best_x = x;
    }
  });

  std::vector<int> offs(n);
  for (int round = 0; round < grid.refinement_rounds && n > 1; ++round) {
    step /= 4.0;
    const std::vector<double> centre = best_x;
    // Offsets for the first n-1 entries in lexicographic order; the last
    // entry absorbs the negated sum.
    std::fill(offs.begin(), offs.end(), -kWindow);
    while (true) {
      int sum = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) sum += offs[j];
      if (std::abs(sum) <= kWindow) {
        bool ok = true;
        for (std::size_t j = 0; j + 1 < n; ++j) {
          x[j] = centre[j] + offs[j] * step;
          ok = ok && x[j] >= step;
        }
        x[n - 1] = centre[n - 1] - sum * step;
        ok = ok && x[n - 1] >= step;
        if (ok) {
          const double u = leader_value(x);
          if (u > best_u) {
            best_u = u;
            best_x = x;
          }
        }
      }
      std::size_t k = n - 1;
      while (k-- > 0) {
        if (++offs[k] <= kWindow) break;
        offs[k] = -kWindow;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }

  Allocation alloc(best_x, xa);
  BestResponseResult br = best_response(g, alloc);
  const double u = total_utility(g, Player::kLeader, alloc, br.allocation);
  return OracleCommitment{std::move(alloc), u, std::move(br.support)};
}

}  // namespace blotto
