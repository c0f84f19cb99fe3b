#include "blotto/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace blotto {
namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Line of the first occurrence of "key" in the text; 1 if it is absent.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const std::size_t pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : line_of(text, pos);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

double positive_number(const json& j, std::string_view text, const std::string& key) {
  const std::size_t line = line_of_key(text, key);
  if (!j.is_number()) fail(line, key + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v) || !(v > 0.0)) {
    std::ostringstream msg;
    msg << key << " must be strictly positive, got " << v;
    fail(line, msg.str());
  }
  return v;
}

std::vector<double> number_array(const json& j, std::string_view text,
                                 const std::string& key, bool strictly_positive) {
  const std::size_t line = line_of_key(text, key);
  if (!j.is_array()) fail(line, key + " must be an array of numbers");
  if (j.empty()) fail(line, key + " must not be empty");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      fail(line, key + "[" + std::to_string(i) + "] is not a number");
    }
    const double v = j[i].get<double>();
    const bool ok = std::isfinite(v) && (strictly_positive ? v > 0.0 : v >= 0.0);
    if (!ok) {
      std::ostringstream msg;
      msg << key << "[" << i << "] must be " << (strictly_positive ? "> 0" : ">= 0")
          << ", got " << v;
      fail(line, msg.str());
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

InstanceFile parse_instance_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) fail(1, "instance must be a JSON object");

  static constexpr std::array<std::string_view, 5> kKnown{
      "budget_a", "budget_b", "values_a", "values_b", "commit_a"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      fail(line_of_key(text, key), "unknown field \"" + key + "\"");
    }
  }
  for (const char* key : {"budget_a", "budget_b", "values_a", "values_b"}) {
    if (!doc.contains(key)) fail(1, std::string("missing field \"") + key + "\"");
  }

  const double xa = positive_number(doc["budget_a"], text, "budget_a");
  const double xb = positive_number(doc["budget_b"], text, "budget_b");
  std::vector<double> va = number_array(doc["values_a"], text, "values_a", true);
  std::vector<double> vb = number_array(doc["values_b"], text, "values_b", true);
  if (va.size() != vb.size()) {
    fail(line_of_key(text, "values_b"),
         "values_a has " + std::to_string(va.size()) + " entries but values_b has " +
             std::to_string(vb.size()));
  }
  std::optional<std::vector<double>> commit;
  if (doc.contains("commit_a")) {
    commit = number_array(doc["commit_a"], text, "commit_a", false);
    if (commit->size() != va.size()) {
      fail(line_of_key(text, "commit_a"), "commit_a length does not match values_a");
    }
  }
  return InstanceFile{GameInstance(xa, xb, std::move(va), std::move(vb)), std::move(commit)};
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string instance_to_json(const GameInstance& g,
                             const std::optional<std::vector<double>>& commit_a) {
  nlohmann::ordered_json doc;
  doc["budget_a"] = g.budget_a();
  doc["budget_b"] = g.budget_b();
  doc["values_a"] = g.values_a();
  doc["values_b"] = g.values_b();
  if (commit_a) doc["commit_a"] = *commit_a;
  return doc.dump(2) + "\n";
}

}  // namespace blotto
