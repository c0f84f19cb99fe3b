#include "blotto/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

namespace blotto {
namespace {

constexpr double kClassTolerance = 1e-9;
constexpr double kCoincideTolerance = 1e-9;
constexpr double kRatioSlack = 1e-9;

double psi1(double x1, double x2, double x3, double x4) {
  const double k = std::sqrt((x1 * x1 / x3 + x2 * x2 / x4) / (x3 + x4));
  const double v = x1 / std::sqrt(x3) + k * std::sqrt(x3);
  return v * v;
}

double psi2(double x1, double x2, double x3, double x4, double x5, double x6) {
  const double p = std::sqrt(x5 * x3), q = std::sqrt(x6 * x4);
  return (x6 * x4 * x1 * p - x5 * x3 * x2 * q) / (p + q);
}

double psi3(double x1, double x2, double x3, double x4, double x5, double x6) {
  return (x1 * x4 * x6 * x5 - x6 * x5 * x3 * x2) / (x5 + x6);
}

}  // namespace

std::vector<std::vector<std::size_t>> ratio_classes(const GameInstance& g) {
  const auto [sorted, ord] = canonical_ordering(g);
  std::vector<std::vector<std::size_t>> out;
  double head = 0.0;
  for (std::size_t k = 0; k < g.n(); ++k) {
    if (out.empty() || !approx_equal_rel(ord.ratios[k], head, kClassTolerance)) {
      out.emplace_back();
      head = ord.ratios[k];
    }
    out.back().push_back(ord.permutation[k]);
  }
  for (auto& cls : out) std::sort(cls.begin(), cls.end());
  return out;
}

double coincidence_threshold(double v_aM, double v_bM, double v_aMbar,
                             double v_bMbar) {
  for (double v : {v_aM, v_bM, v_aMbar, v_bMbar}) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw InputError("coincidence_threshold needs four positive sums");
    }
  }
  if (approx_equal_rel(v_aM / v_bM, v_aMbar / v_bMbar, kClassTolerance)) {
    throw PreconditionError(
        "the two classes share a value ratio; equilibria coincide at every budget");
  }
  const double t1 = psi1(v_aM, v_aMbar, v_bM, v_bMbar);
  const double t2 = psi1(v_aMbar, v_aM, v_bMbar, v_bM);
  const double t3 = psi2(v_aMbar, v_aM, v_bMbar, v_bM, t2, t1) +
                    psi3(v_aM, v_aMbar, v_bM, v_bMbar, t1, t2);
  const double t4 = psi2(v_aM, v_aMbar, v_bM, v_bMbar, t1, t2);
  if (t3 == 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t3 vanishes with distinct ratios (t1=" << t1 << ", t2=" << t2
        << ", t4=" << t4 << ")";
    throw SolverError(msg.str());
  }
  return t4 / t3;
}

CoincidenceReport check_coincidence(const GameInstance& g) {
  CoincidenceReport rep;
  rep.ratio_classes = ratio_classes(g);
  if (rep.ratio_classes.size() == 1) {
    rep.coincides = true;
  } else if (rep.ratio_classes.size() == 2) {
    double sums[2][2] = {};
    for (int c = 0; c < 2; ++c) {
      for (std::size_t j : rep.ratio_classes[c]) {
        sums[c][0] += g.value_a(j);
        sums[c][1] += g.value_b(j);
      }
    }
    const double f = coincidence_threshold(sums[0][0], sums[0][1], sums[1][0], sums[1][1]);
    rep.threshold = f;
    rep.coincides = f > 0.0 && approx_equal_rel(g.budget_a() / g.budget_b(), f,
                                                kCoincideTolerance);
  }
  return rep;
}

ComparisonReport compare(const GameInstance& g) {
  CommitmentSolution se = optimal_commitment(g);
  NashSolution ne = solve_nash(g);
  const double leader_ratio = se.leader_utility / ne.leader_utility;
  const double follower_ratio = se.follower_utility / ne.follower_utility;
  const double cap = (g.budget_a() + g.budget_b()) / g.budget_a();
  if (leader_ratio < 1.0 - kRatioSlack || leader_ratio > cap + kRatioSlack) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "leader utility ratio " << leader_ratio << " outside [1, " << cap << "]";
    throw SolverError(msg.str());
  }
  return ComparisonReport{std::move(se), std::move(ne), leader_ratio,
                          follower_ratio, cap};
}

TwoBattlefieldBounds two_battlefield_bounds(double v_a1, double v_b1, double x_a) {
  const double lower = (v_a1 + 1.0) / (v_a1 + v_b1 * (x_a + 1.0) / (v_b1 * x_a + v_a1));
  const double upper =
      (v_a1 + 1.0) / (x_a * v_a1 * v_a1 / (x_a * v_a1 + v_b1) + x_a / (x_a + 1.0));
  return TwoBattlefieldBounds{lower, upper, v_a1, v_b1, x_a, 0};
}

AdvantageBounds leader_advantage_bounds(const GameInstance& g) {
  const double xa = g.budget_a(), xb = g.budget_b();
  const double va_sum = std::accumulate(g.values_a().begin(), g.values_a().end(), 0.0);
  AdvantageBounds out{xa / (xa + xb) * va_sum, (xa + xb) / xa, std::nullopt};
  if (g.n() == 2) {
    const std::size_t first = g.ratio(0) <= g.ratio(1) ? 0 : 1;
    const std::size_t second = 1 - first;
    TwoBattlefieldBounds b = two_battlefield_bounds(
        g.value_a(first) / g.value_a(second), g.value_b(first) / g.value_b(second),
        xa / xb);
    b.first = first;
    out.two_battlefield = b;
  }
  return out;
}

std::vector<SweepRow> budget_sweep(const GameInstance& g,
                                   std::span<const double> r_values) {
  std::vector<double> rs(r_values.begin(), r_values.end());
  std::sort(rs.begin(), rs.end());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  rows.reserve(rs.size());
  for (double r : rs) {
    SweepRow row{r, nan, nan, nan, nan, false, {}};
    const GameInstance gi = g.with_budgets(r * g.budget_b(), g.budget_b());
    const auto note = [&row](const char* what, const std::exception& e) {
      if (!row.diagnostic.empty()) row.diagnostic += "; ";
      row.diagnostic += std::string(what) + ": " + e.what();
    };
    try {
      row.coincides = check_coincidence(gi).coincides;
    } catch (const std::exception& e) {
      note("coincidence", e);
    }
    try {
      const CommitmentSolution se = optimal_commitment(gi);
      row.se_u_a = se.leader_utility;
      row.se_u_b = se.follower_utility;
    } catch (const std::exception& e) {
      note("commitment", e);
    }
    try {
      const NashSolution ne = solve_nash(gi);
      row.ne_u_a = ne.leader_utility;
      row.ne_u_b = ne.follower_utility;
    } catch (const std::exception& e) {
      note("nash", e);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "r,se_u_a,se_u_b,ne_u_a,ne_u_b,coincides\n";
  for (const SweepRow& row : rows) {
    out << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{}\n", row.r, row.se_u_a,
                       row.se_u_b, row.ne_u_a, row.ne_u_b,
                       row.coincides ? "true" : "false");
  }
}

}  // namespace blotto
