#include "blotto/cli.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "blotto/analysis.hpp"
#include "blotto/best_response.hpp"
#include "blotto/commitment.hpp"
#include "blotto/io.hpp"
#include "blotto/nash.hpp"
#include "blotto/oracle.hpp"

namespace blotto::cli {
namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json commitment_json(const CommitmentSolution& s) {
  Json j;
  j["allocation"] = s.allocation.amounts();
  j["follower_allocation"] = s.follower_allocation.amounts();
  j["support"] = s.support;
  j["case"] = to_string(s.case_tag);
  j["alpha"] = optional_number(s.alpha);
  j["y"] = optional_number(s.y);
  j["leader_utility"] = s.leader_utility;
  j["follower_utility"] = s.follower_utility;
  return j;
}

Json nash_json(const NashSolution& s) {
  Json j;
  j["mu_star"] = s.mu_star;
  j["alloc_a"] = s.alloc_a.amounts();
  j["alloc_b"] = s.alloc_b.amounts();
  j["leader_utility"] = s.leader_utility;
  j["follower_utility"] = s.follower_utility;
  j["roots"] = s.all_roots;
  return j;
}

Json coincidence_json(const CoincidenceReport& r) {
  Json j;
  j["ratio_classes"] = r.ratio_classes;
  j["coincides"] = r.coincides;
  j["threshold"] = optional_number(r.threshold);
  return j;
}

Json bounds_json(const AdvantageBounds& b) {
  Json j;
  j["ne_lower"] = b.ne_lower;
  j["ratio_cap"] = b.ratio_cap;
  if (b.two_battlefield) {
    const TwoBattlefieldBounds& t = *b.two_battlefield;
    j["two_battlefield"] = Json{{"frame", {{"v_a1", t.v_a1}, {"v_b1", t.v_b1}, {"x_a", t.x_a},
                                           {"first", t.first}}},
                                {"lower", t.lower},
                                {"upper", t.upper}};
  } else {
    j["two_battlefield"] = nullptr;
  }
  return j;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    out[i] = i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
  }
  return out;
}

InstanceFile load(const RunConfig& c) {
  if (c.instance_path.empty()) throw InputError("--instance is required");
  return read_instance_file(c.instance_path);
}

void run_solve_br(const RunConfig& c, std::ostream& out) {
  const InstanceFile f = load(c);
  if (!f.commit_a) throw InputError("solve-br needs a \"commit_a\" array in the instance file");
  const Allocation leader(*f.commit_a, f.instance.budget_a());
  const BestResponseResult br = best_response(f.instance, leader);
  Json j;
  j["follower_allocation"] = br.allocation.amounts();
  j["support"] = br.support;
  j["water_level"] = br.water_level;
  j["leader_utility"] = total_utility(f.instance, Player::kLeader, leader, br.allocation);
  j["follower_utility"] = total_utility(f.instance, Player::kFollower, leader, br.allocation);
  out << j.dump(2) << '\n';
}

void run_compare(const RunConfig& c, std::ostream& out) {
  const InstanceFile f = load(c);
  const ComparisonReport rep = compare(f.instance);
  Json j;
  j["se"] = commitment_json(rep.se);
  j["ne"] = nash_json(rep.ne);
  j["leader_ratio"] = rep.leader_ratio;
  j["follower_ratio"] = rep.follower_ratio;
  j["ratio_cap"] = rep.ratio_cap;
  j["coincidence"] = coincidence_json(check_coincidence(f.instance));
  j["bounds"] = bounds_json(leader_advantage_bounds(f.instance));
  out << j.dump(2) << '\n';
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!(c.r_min > 0.0) || !(c.r_max >= c.r_min) || !std::isfinite(c.r_max)) {
    throw InputError("sweep needs 0 < r_min <= r_max");
  }
  if (c.steps < 2) throw InputError("sweep needs steps >= 2");
  const InstanceFile f = load(c);
  std::vector<double> rs = linspace(c.r_min, c.r_max, c.steps);
  // Add the crossing row when the instance has one inside the range.
  const CoincidenceReport cr = check_coincidence(f.instance);
  if (cr.threshold && *cr.threshold >= c.r_min && *cr.threshold <= c.r_max) {
    rs.push_back(*cr.threshold);
  }
  const std::vector<SweepRow> rows = budget_sweep(f.instance, rs);
  write_sweep_csv(out, rows);
  for (const SweepRow& row : rows) {
    if (!row.diagnostic.empty()) err << "r=" << row.r << ": " << row.diagnostic << '\n';
  }
  return kExitOk;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const InstanceFile f = load(c);
  const GameInstance& g = f.instance;
  Json checks = Json::array();
  bool all_ok = true;
  const auto check = [&](const std::string& name, double value, double limit, bool ok) {
    checks.push_back(Json{{"name", name}, {"value", value}, {"limit", limit}, {"pass", ok}});
    all_ok = all_ok && ok;
  };

  const CommitmentSolution se = optimal_commitment(g);
  const OracleCommitment oc = oracle_commitment(g, c.grid);
  check("commitment_minus_oracle", se.leader_utility - oc.utility, -1e-3,
        se.leader_utility - oc.utility >= -1e-3);
  check("oracle_support_is_prefix", is_ratio_prefix(g, oc.support) ? 1.0 : 0.0, 1.0,
        is_ratio_prefix(g, oc.support));
  const double l2 = threshold_residual(g, se);
  check("threshold_residual", l2, 1e-9, l2 <= 1e-9);
  if (se.case_tag == CaseTag::kCase2_2) {
    const double l3 = alpha_beta_residual(g, se);
    check("alpha_beta_residual", l3, 1e-6, l3 <= 1e-6);
  }

  const NashSolution ne = solve_nash(g);
  const AdvantageBounds b = leader_advantage_bounds(g);
  check("ne_minus_lower_bound", ne.leader_utility - b.ne_lower, -1e-9,
        ne.leader_utility - b.ne_lower >= -1e-9);
  const double ratio = se.leader_utility / ne.leader_utility;
  check("se_over_ne", ratio, b.ratio_cap, ratio >= 1.0 - 1e-9 && ratio <= b.ratio_cap + 1e-9);

  if (f.commit_a) {
    const Allocation leader(*f.commit_a, g.budget_a());
    const BestResponseResult br = best_response(g, leader);
    const double closed = total_utility(g, Player::kFollower, leader, br.allocation);
    const OracleBestResponse ob = oracle_best_response(g, leader, c.grid);
    check("best_response_minus_oracle", closed - ob.utility, -1e-6,
          closed - ob.utility >= -1e-6);
  }

  Json j;
  j["resolution"] = c.grid.resolution;
  j["refinement_rounds"] = c.grid.refinement_rounds;
  j["checks"] = checks;
  j["pass"] = all_ok;
  out << j.dump(2) << '\n';
  return all_ok ? kExitOk : kExitSolver;
}

void run_gen(const RunConfig& c, std::ostream& out) {
  if (c.n < 1) throw InputError("gen needs n >= 1");
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> draw(0.1, 10.0);
  const double xa = draw(rng);
  const double xb = draw(rng);
  std::vector<double> va(c.n), vb(c.n);
  for (double& v : va) v = draw(rng);
  for (double& v : vb) v = draw(rng);
  out << instance_to_json(GameInstance(xa, xb, std::move(va), std::move(vb)));
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::kSolveBr:
      run_solve_br(c, out);
      return kExitOk;
    case Command::kSolveCommitment:
      out << commitment_json(optimal_commitment(load(c).instance)).dump(2) << '\n';
      return kExitOk;
    case Command::kSolveNash:
      out << nash_json(solve_nash(load(c).instance)).dump(2) << '\n';
      return kExitOk;
    case Command::kCompare:
      run_compare(c, out);
      return kExitOk;
    case Command::kSweep:
      return run_sweep(c, out, err);
    case Command::kVerify:
      return run_verify(c, out);
    case Command::kGen:
      run_gen(c, out);
      return kExitOk;
  }
  return kExitInput;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::kSolveBr, Command::kSolveCommitment, Command::kSolveNash,
                    Command::kCompare, Command::kSweep, Command::kVerify, Command::kGen}) {
    if (name == command_name(c)) return c;
  }
  return std::nullopt;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::kSolveBr:
      return "solve-br";
    case Command::kSolveCommitment:
      return "solve-commitment";
    case Command::kSolveNash:
      return "solve-nash";
    case Command::kCompare:
      return "compare";
    case Command::kSweep:
      return "sweep";
    case Command::kVerify:
      return "verify";
    case Command::kGen:
      return "gen";
  }
  return "?";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  // Buffer so a failing command leaves no partial output file behind.
  std::ostringstream buffer;
  int status = kExitOk;
  try {
    status = dispatch(config, buffer, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }

  if (config.output_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.output_path << '\n';
      return kExitInput;
    }
    file << buffer.str();
  }
  return status;
}

}  // namespace blotto::cli
