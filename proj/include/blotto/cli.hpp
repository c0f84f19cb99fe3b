#ifndef BLOTTO_CLI_HPP_
#define BLOTTO_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "blotto/oracle.hpp"

namespace blotto::cli {

enum class Command { kSolveBr, kSolveCommitment, kSolveNash, kCompare, kSweep, kVerify, kGen };

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;

struct RunConfig {
  Command command = Command::kSolveCommitment;
  std::string instance_path;
  std::string output_path;  // empty: write to the `out` stream
  double r_min = 0.25;
  double r_max = 3.0;
  int steps = 50;
  std::uint64_t seed = 0;
  GridSpec grid{};
  int n = 3;
};

// Runs one command. Results go to `out` (or output_path), diagnostics to
// `err`. Returns kExitOk, kExitInput or kExitSolver.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace blotto::cli

#endif  // BLOTTO_CLI_HPP_
