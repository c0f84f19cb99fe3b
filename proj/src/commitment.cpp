#include "blotto/commitment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "blotto/best_response.hpp"
#include "blotto/numeric.hpp"

namespace blotto {
namespace {

constexpr double kRatioTieTolerance = 1e-9;
constexpr double kCandidateTieTolerance = 1e-9;
constexpr int kScanSamples = 1024;
constexpr double kThetaTolerance = 1e-10;
constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

std::vector<std::size_t> checked_support(const GameInstance& g,
                                         std::span<const std::size_t> K) {
  if (K.empty()) throw InputError("support set K is empty");
  std::vector<std::size_t> out(K.begin(), K.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InputError("support set K repeats an index");
  }
  if (out.back() >= g.n()) throw InputError("support index out of range");
  return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& K) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0, k = 0; j < n; ++j) {
    if (k < K.size() && K[k] == j) {
      ++k;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

bool ratios_equal(double a, double b) {
  return approx_equal_rel(a, b, kRatioTieTolerance);
}

bool uniform_ratio(const GameInstance& g, const std::vector<std::size_t>& K) {
  double lo = g.ratio(K[0]), hi = lo;
  for (std::size_t j : K) {
    lo = std::min(lo, g.ratio(j));
    hi = std::max(hi, g.ratio(j));
  }
  return ratios_equal(lo, hi);
}

// Fills the complement entries of `x` (full length, K entries set).
void fill_threshold(const GameInstance& g, const std::vector<std::size_t>& K,
                    const std::vector<std::size_t>& Kbar, std::vector<double>& x) {
  double s = 0.0, t = g.budget_b();
  for (std::size_t l : K) {
    s += std::sqrt(x[l] * g.value_b(l));
    t += x[l];
  }
  const double scale = (t / s) * (t / s);
  for (std::size_t j : Kbar) x[j] = g.value_b(j) * scale;
}

// Round trip through the follower's best response and package the result.
CaseResult finalize(const GameInstance& g, const std::vector<std::size_t>& K,
                    std::vector<double> x, CaseTag tag,
                    std::optional<double> alpha, std::optional<double> y,
                    std::optional<double> beta) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j]) || !(x[j] > 0.0)) {
      std::ostringstream msg;
      msg << "reconstructed leader entry " << j << " = " << x[j] << " is not positive";
      return {std::nullopt, msg.str()};
    }
  }
  std::optional<Allocation> alloc;
  try {
    alloc.emplace(std::move(x), g.budget_a());
  } catch (const InputError& e) {
    return {std::nullopt, std::string("budget identity fails: ") + e.what()};
  }
  BestResponseResult br = best_response(g, *alloc);
  if (br.support != K) {
    std::ostringstream msg;
    msg << "follower support has " << br.support.size()
        << " battlefields, candidate expects " << K.size();
    return {std::nullopt, msg.str()};
  }
  const double ua = total_utility(g, Player::kLeader, *alloc, br.allocation);
  const double ub = total_utility(g, Player::kFollower, *alloc, br.allocation);
  return {CommitmentSolution{std::move(*alloc), std::move(br.allocation), K, tag,
                             alpha, y, beta, ua, ub},
          {}};
}

// Partial-support program in angle form: alpha = tan(theta), everything
// scaled by cos(theta) so the two alpha branches join through theta = -pi/2.
class PartialSupportProblem {
 public:
  PartialSupportProblem(const GameInstance& g, std::vector<std::size_t> K)
      : g_(g), K_(std::move(K)), Kbar_(complement(g.n(), K_)) {
    for (std::size_t j : Kbar_) v_bKbar_ += g.value_b(j);
    x_.resize(g.n());
    order_.resize(g.n());
    xb_.resize(g.n());
    in_K_.assign(g.n(), false);
    for (std::size_t j : K_) in_K_[j] = true;
  }

  // Fills x_ with the commitment for theta. Returns y-tilde, or NaN when the
  // angle is outside the feasible set.
  double build(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    double q = 0.0, r = 0.0;
    for (std::size_t j : K_) {
      const double sb = std::sqrt(g_.value_b(j));
      const double w = g_.value_a(j) / sb * c - sb * s;
      q += g_.value_a(j) * c - s * g_.value_b(j);
      r += w * w;
    }
    const double xa = g_.budget_a(), xb = g_.budget_b();
    const double phi1 = xa * q * q - 2.0 * r * v_bKbar_ * xb;
    const double phi2 = xa * xa * q * q - 4.0 * r * v_bKbar_ * xb * (xa + xb);
    if (!(phi2 >= 0.0) || !(phi1 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double yt =
        2.0 * r * (q * q + v_bKbar_ * r) / (phi1 + std::abs(q) * std::sqrt(phi2));
    for (std::size_t j : K_) {
      const double sb = std::sqrt(g_.value_b(j));
      const double w = g_.value_a(j) / sb * c - sb * s;
      x_[j] = w * w / yt;
    }
    fill_threshold(g_, K_, Kbar_, x_);
    return yt;
  }

  // Realized leader utility at theta, -inf if the commitment is not valid
  // for this K.
  double score(double theta) {
    const double yt = build(theta);
    if (!std::isfinite(yt) || !(yt > 0.0)) return kMinusInf;
    double sum = 0.0;
    for (double v : x_) {
      if (!(v > 0.0) || !std::isfinite(v)) return kMinusInf;
      sum += v;
    }
    if (!approx_equal_rel(sum, g_.budget_a(), kBudgetTolerance)) return kMinusInf;
    std::size_t k = 0;
    detail::water_fill(g_.values_b(), x_, g_.budget_b(), order_, xb_, &k);
    if (k != K_.size()) return kMinusInf;
    for (std::size_t i = 0; i < k; ++i) {
      if (!in_K_[order_[i]]) return kMinusInf;
    }
    double u = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      u += g_.value_a(j) * x_[j] / (x_[j] + xb_[j]);
    }
    return u;
  }

  // Coefficients of phi(theta) = p0 sin^2 + p1 sin cos + p2 cos^2 for both
  // constraints; their zeros split the arc.
  std::vector<double> breakpoints(double lo, double hi) const {
    const CaseCoefficients cc = case_coefficients(g_, K_);
    std::vector<double> pts{lo, hi, -std::numbers::pi / 2.0};
    for (int which = 0; which < 2; ++which) {
      const double a = cc.b[3 * which], b = cc.b[3 * which + 1], c = cc.b[3 * which + 2];
      std::vector<double> roots;
      if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
      } else {
        const double d = b * b - 4.0 * a * c;
        if (d >= 0.0) {
          const double q = -0.5 * (b + std::copysign(std::sqrt(d), b));
          if (q != 0.0) roots.push_back(c / q);
          roots.push_back(q / a);
        }
      }
      for (double t : roots) {
        const double th = std::atan(t);
        pts.push_back(th);
        pts.push_back(th - std::numbers::pi);
      }
    }
    std::vector<double> kept;
    for (double p : pts) {
      if (p >= lo && p <= hi) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return kept;
  }

  const std::vector<double>& x() const { return x_; }
  const std::vector<std::size_t>& K() const { return K_; }

 private:
  const GameInstance& g_;
  std::vector<std::size_t> K_;
  std::vector<std::size_t> Kbar_;
  double v_bKbar_ = 0.0;
  std::vector<double> x_;
  std::vector<std::size_t> order_;
  std::vector<double> xb_;
  std::vector<bool> in_K_;
};

}  // namespace

const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::kCase1:
      return "CASE_1";
    case CaseTag::kCase2_1:
      return "CASE_2_1";
    case CaseTag::kCase2_2:
      return "CASE_2_2";
  }
  return "?";
}

CaseCoefficients case_coefficients(const GameInstance& g,
                                   std::span<const std::size_t> K_in) {
  const std::vector<std::size_t> K = checked_support(g, K_in);
  CaseCoefficients cc;
  std::vector<bool> in_K(g.n(), false);
  for (std::size_t j : K) in_K[j] = true;
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (in_K[j]) {
      cc.v_aK += g.value_a(j);
      cc.v_bK += g.value_b(j);
      cc.c_K += g.value_a(j) * g.value_a(j) / g.value_b(j);
    } else {
      cc.v_aKbar += g.value_a(j);
      cc.v_bKbar += g.value_b(j);
    }
  }
  const double xa = g.budget_a(), xb = g.budget_b();
  const double vaK = cc.v_aK, vbK = cc.v_bK, vbKb = cc.v_bKbar, cK = cc.c_K;
  cc.b[0] = xa * vbK * vbK - 2.0 * xb * vbK * vbKb;
  cc.b[1] = 4.0 * xb * vaK * vbKb - 2.0 * xa * vaK * vbK;
  cc.b[2] = xa * vaK * vaK - 2.0 * xb * vbKb * cK;
  cc.b[3] = xa * xa * vbK * vbK - 4.0 * xb * (xa + xb) * vbK * vbKb;
  cc.b[4] = 8.0 * xb * (xa + xb) * vaK * vbKb - 2.0 * xa * xa * vaK * vbK;
  cc.b[5] = xa * xa * vaK * vaK - 4.0 * xb * (xa + xb) * cK * vbKb;
  return cc;
}

std::vector<double> threshold_allocation_outside_support(
    const GameInstance& g, std::span<const std::size_t> K_in,
    std::span<const double> x_on_K) {
  if (K_in.size() != x_on_K.size()) {
    throw InputError("x_on_K must have one entry per support battlefield");
  }
  const std::vector<std::size_t> K = checked_support(g, K_in);
  std::vector<double> full(g.n(), 0.0);
  for (std::size_t i = 0; i < K_in.size(); ++i) {
    if (!(x_on_K[i] > 0.0)) throw InputError("x_on_K entries must be positive");
    full[K_in[i]] = x_on_K[i];
  }
  const std::vector<std::size_t> Kbar = complement(g.n(), K);
  fill_threshold(g, K, Kbar, full);
  std::vector<double> out;
  out.reserve(Kbar.size());
  for (std::size_t j : Kbar) out.push_back(full[j]);
  return out;
}

CaseResult solve_case1(const GameInstance& g, std::span<const std::size_t> K_in) {
  const std::vector<std::size_t> K = checked_support(g, K_in);
  if (K.size() > 1 && !uniform_ratio(g, K)) {
    throw PreconditionError("case 1 needs equal value ratios on the support");
  }
  const CaseCoefficients cc = case_coefficients(g, K);
  const double xa = g.budget_a(), xb = g.budget_b();
  const double a = cc.v_bKbar + cc.v_bK;
  const double b = 2.0 * xb * cc.v_bKbar - xa * cc.v_bK;
  const double disc = xa * xa * cc.v_bK * cc.v_bK -
                      4.0 * xa * xb * cc.v_bK * cc.v_bKbar -
                      4.0 * xb * xb * cc.v_bK * cc.v_bKbar;
  if (disc < 0.0) {
    return {std::nullopt, "negative discriminant: leader budget too small for this support"};
  }
  // Both roots are negative when b >= 0 (their product is >= 0).
  if (b >= 0.0 && cc.v_bKbar > 0.0) {
    return {std::nullopt, "no positive root for the support mass"};
  }
  const double x_aK = (-b + std::sqrt(disc)) / (2.0 * a);

  std::vector<double> x(g.n(), 0.0);
  for (std::size_t j : K) x[j] = x_aK * g.value_a(j) / cc.v_aK;
  fill_threshold(g, K, complement(g.n(), K), x);
  return finalize(g, K, std::move(x), CaseTag::kCase1, std::nullopt, std::nullopt,
                  std::nullopt);
}

CaseResult solve_case2_full_support(const GameInstance& g) {
  std::vector<std::size_t> K(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) K[j] = j;
  if (uniform_ratio(g, K)) {
    throw PreconditionError("full-support case 2 needs two distinct value ratios");
  }
  const CaseCoefficients cc = case_coefficients(g, K);
  const double alpha = -std::sqrt(cc.c_K / cc.v_bK);
  std::vector<double> x(g.n());
  double total = 0.0;
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double sb = std::sqrt(g.value_b(j));
    const double w = g.value_a(j) / sb - alpha * sb;
    x[j] = w * w;
    total += x[j];
  }
  for (double& v : x) v *= g.budget_a() / total;
  const double y = total / g.budget_a();
  return finalize(g, K, std::move(x), CaseTag::kCase2_1, alpha, y, std::sqrt(y));
}

CaseResult solve_case2_partial_support(const GameInstance& g,
                                       std::span<const std::size_t> K_in) {
  std::vector<std::size_t> K = checked_support(g, K_in);
  if (K.size() == g.n()) throw PreconditionError("partial support must be a proper subset");
  if (uniform_ratio(g, K)) {
    throw PreconditionError("partial-support case 2 needs two distinct value ratios");
  }
  double r_min = g.ratio(K[0]), r_max = r_min;
  for (std::size_t j : K) {
    r_min = std::min(r_min, g.ratio(j));
    r_max = std::max(r_max, g.ratio(j));
  }
  // alpha < r_min (beta > 0) and alpha > r_max (beta < 0) meet at infinity.
  const double lo = std::atan(r_max) - std::numbers::pi;
  const double hi = std::atan(r_min);

  PartialSupportProblem prob(g, K);
  const std::vector<double> cuts = prob.breakpoints(lo, hi);
  double best_theta = 0.0, best_u = kMinusInf;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    if (!std::isfinite(prob.build(0.5 * (a + b)))) continue;

    const double h = (b - a) / kScanSamples;
    int arg = -1;
    double arc_best = kMinusInf;
    for (int s = 0; s < kScanSamples; ++s) {
      const double u = prob.score(a + (s + 0.5) * h);
      if (u > arc_best) {
        arc_best = u;
        arg = s;
      }
    }
    if (arg < 0) continue;
    double theta = a + (arg + 0.5) * h;
    const double left = std::max(a, theta - h), right = std::min(b, theta + h);
    auto [t_ref, u_ref] = golden_section_max(
        [&prob](double t) { return prob.score(t); }, left, right, kThetaTolerance);
    if (u_ref > arc_best) {
      theta = t_ref;
      arc_best = u_ref;
    }
    if (arc_best > best_u) {
      best_u = arc_best;
      best_theta = theta;
    }
  }
  if (best_u == kMinusInf) {
    return {std::nullopt, "no angle in the feasible set yields a commitment with this support"};
  }

  const double yt = prob.build(best_theta);
  const double c = std::cos(best_theta);
  const double alpha = std::tan(best_theta);
  const double y = yt / (c * c);
  const double beta = std::copysign(std::sqrt(y), c);
  return finalize(g, K, prob.x(), CaseTag::kCase2_2, alpha, y, beta);
}

std::vector<CandidateRecord> enumerate_candidates(const GameInstance& g) {
  const auto [sorted, ord] = canonical_ordering(g);
  std::vector<CandidateRecord> out;
  for (std::size_t k = 1; k <= g.n(); ++k) {
    if (k < g.n() && ratios_equal(ord.ratios[k - 1], ord.ratios[k])) continue;
    std::vector<std::size_t> K(ord.permutation.begin(), ord.permutation.begin() + k);
    std::sort(K.begin(), K.end());
    CandidateRecord rec{K, CaseTag::kCase1, {}};
    if (ratios_equal(ord.ratios[0], ord.ratios[k - 1])) {
      rec.result = solve_case1(g, K);
    } else if (k == g.n()) {
      rec.case_tag = CaseTag::kCase2_1;
      rec.result = solve_case2_full_support(g);
    } else {
      rec.case_tag = CaseTag::kCase2_2;
      rec.result = solve_case2_partial_support(g, K);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

CommitmentSolution optimal_commitment(const GameInstance& g) {
  std::vector<CandidateRecord> cands = enumerate_candidates(g);
  const CommitmentSolution* best = nullptr;
  for (const CandidateRecord& rec : cands) {
    if (!rec.result.solution) continue;
    const CommitmentSolution& s = *rec.result.solution;
    if (best == nullptr) {
      best = &s;
      continue;
    }
    const double slack =
        kCandidateTieTolerance * std::max(1.0, std::abs(best->leader_utility));
    // Candidates arrive by increasing |K|, so >= within slack prefers larger K.
    if (s.leader_utility >= best->leader_utility - slack) best = &s;
  }
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "no valid commitment candidate;";
    for (const CandidateRecord& rec : cands) {
      msg << " |K|=" << rec.K.size() << " (" << to_string(rec.case_tag)
          << "): " << rec.result.diagnostic << ";";
    }
    throw SolverError(msg.str());
  }
  return *best;
}

double alpha_beta_residual(const GameInstance& g, const CommitmentSolution& s) {
  if (!s.alpha || !s.beta) throw InputError("solution carries no alpha/beta");
  double worst = 0.0;
  for (std::size_t j : s.support) {
    const double sb = std::sqrt(g.value_b(j));
    const double lhs = g.value_a(j) / sb - *s.alpha * sb;
    const double rhs = *s.beta * std::sqrt(s.allocation[j]);
    const double scale = g.value_a(j) / sb + std::abs(*s.alpha) * sb;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double threshold_residual(const GameInstance& g, const CommitmentSolution& s) {
  std::vector<double> on_K;
  for (std::size_t j : s.support) on_K.push_back(s.allocation[j]);
  const std::vector<double> thr = threshold_allocation_outside_support(g, s.support, on_K);
  const std::vector<std::size_t> Kbar = complement(g.n(), s.support);
  double worst = 0.0;
  for (std::size_t i = 0; i < Kbar.size(); ++i) {
    worst = std::max(worst, std::abs(s.allocation[Kbar[i]] - thr[i]) / thr[i]);
  }
  return worst;
}

}  // namespace blotto
