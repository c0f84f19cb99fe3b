#ifndef BLOTTO_IO_HPP_
#define BLOTTO_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

// Instance file: {"budget_a", "budget_b", "values_a", "values_b"} plus an
// optional "commit_a" leader allocation.
struct InstanceFile {
  GameInstance instance;
  std::optional<std::vector<double>> commit_a;
};

// Errors are InputError with a "line N: " prefix.
InstanceFile parse_instance_json(std::string_view text);
InstanceFile read_instance_file(const std::string& path);

std::string instance_to_json(const GameInstance& g,
                             const std::optional<std::vector<double>>& commit_a = {});

}  // namespace blotto

#endif  // BLOTTO_IO_HPP_
