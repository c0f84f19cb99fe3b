#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "blotto/cli.hpp"

namespace fs = std::filesystem;
using namespace blotto::cli;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("blotto_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

Outcome run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  const int status = run(cfg, out, err);
  return {status, out.str(), err.str()};
}

RunConfig with(Command c, const fs::path& instance) {
  RunConfig cfg;
  cfg.command = c;
  cfg.instance_path = instance.string();
  return cfg;
}

const char* kReference = R"({
  "budget_a": 2,
  "budget_b": 1,
  "values_a": [1, 5],
  "values_b": [1, 0.5],
  "commit_a": [0.54267043962, 1.45732956038]
}
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("command names") {
  for (const char* name :
       {"solve-br", "solve-commitment", "solve-nash", "compare", "sweep", "verify", "gen"}) {
    const auto c = parse_command(name);
    REQUIRE(c);
    CHECK(std::string(command_name(*c)) == name);
  }
  CHECK_FALSE(parse_command("solve"));
}

TEST_CASE("gen is deterministic") {
  TempDir dir;
  RunConfig cfg;
  cfg.command = Command::kGen;
  cfg.seed = 7;
  cfg.output_path = (dir / "a.json").string();
  REQUIRE(run_cli(cfg).status == kExitOk);
  cfg.output_path = (dir / "b.json").string();
  REQUIRE(run_cli(cfg).status == kExitOk);
  const std::string a = slurp(dir / "a.json");
  CHECK(a == slurp(dir / "b.json"));

  const auto j = nlohmann::json::parse(a);
  CHECK(j["values_a"].size() == 3);
  for (const auto& key : {"values_a", "values_b"}) {
    for (double v : j[key]) CHECK((v >= 0.1 && v <= 10.0));
  }
  CHECK(j["budget_a"].get<double>() >= 0.1);
  CHECK(j["budget_b"].get<double>() <= 10.0);

  cfg.seed = 8;
  cfg.output_path = (dir / "c.json").string();
  REQUIRE(run_cli(cfg).status == kExitOk);
  CHECK(a != slurp(dir / "c.json"));

  cfg.n = 0;
  CHECK(run_cli(cfg).status == kExitInput);
}

TEST_CASE("input errors exit with status 2") {
  TempDir dir;
  SUBCASE("malformed json carries a line number") {
    const auto p = dir.write("bad.json", "{\n  \"budget_a\": 1,\n  \"budget_b\": ,\n}\n");
    const Outcome o = run_cli(with(Command::kSolveCommitment, p));
    CHECK(o.status == kExitInput);
    CHECK(o.err.find("line 3") != std::string::npos);
    CHECK(o.out.empty());
  }
  SUBCASE("negative value") {
    const auto p = dir.write("neg.json",
                             R"({"budget_a": 1, "budget_b": 1, "values_a": [1, -2], "values_b": [1, 1]})");
    const Outcome o = run_cli(with(Command::kSolveNash, p));
    CHECK(o.status == kExitInput);
    CHECK(o.err.find("line") != std::string::npos);
  }
  SUBCASE("length mismatch") {
    const auto p = dir.write("len.json",
                             R"({"budget_a": 1, "budget_b": 1, "values_a": [1, 2], "values_b": [1]})");
    CHECK(run_cli(with(Command::kCompare, p)).status == kExitInput);
  }
  SUBCASE("missing file") {
    CHECK(run_cli(with(Command::kCompare, dir / "nope.json")).status == kExitInput);
  }
  SUBCASE("solve-br without commit_a") {
    const auto p = dir.write("nc.json",
                             R"({"budget_a": 1, "budget_b": 1, "values_a": [1, 2], "values_b": [1, 1]})");
    CHECK(run_cli(with(Command::kSolveBr, p)).status == kExitInput);
  }
  SUBCASE("bad sweep range") {
    RunConfig cfg = with(Command::kSweep, dir.write("r.json", kReference));
    cfg.r_min = 0.0;
    CHECK(run_cli(cfg).status == kExitInput);
    cfg.r_min = 1.0;
    cfg.steps = 1;
    CHECK(run_cli(cfg).status == kExitInput);
  }
}

TEST_CASE("solve-br and compare on the reference instance") {
  TempDir dir;
  const auto p = dir.write("ref.json", kReference);

  const Outcome br = run_cli(with(Command::kSolveBr, p));
  REQUIRE(br.status == kExitOk);
  const auto b = nlohmann::json::parse(br.out);
  CHECK(b["follower_allocation"][0].get<double>() == doctest::Approx(0.847).epsilon(1e-3));

  const Outcome cmp = run_cli(with(Command::kCompare, p));
  REQUIRE(cmp.status == kExitOk);
  const auto j = nlohmann::json::parse(cmp.out);
  CHECK(std::abs(j["se"]["leader_utility"].get<double>() - 4.915) <= 1e-3);
  CHECK(std::abs(j["se"]["follower_utility"].get<double>() - 0.657) <= 1e-3);
  CHECK(std::abs(j["ne"]["leader_utility"].get<double>() - 4.889) <= 1e-3);
  CHECK(std::abs(j["ne"]["follower_utility"].get<double>() - 0.611) <= 1e-3);
  CHECK(j["se"]["case"] == "CASE_2_1");
  CHECK(j["coincidence"]["coincides"] == false);

  CHECK(run_cli(with(Command::kCompare, p)).out == cmp.out);
}

TEST_CASE("sweep csv includes the crossing row") {
  TempDir dir;
  RunConfig cfg = with(Command::kSweep, dir.write("ref.json", kReference));
  const Outcome o = run_cli(cfg);
  REQUIRE(o.status == kExitOk);
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "r,se_u_a,se_u_b,ne_u_a,ne_u_b,coincides");
  int rows = 0, crossing = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.size() > 5 && line.substr(line.size() - 5) == ",true") {
      ++crossing;
      CHECK(line.rfind("1.69405088", 0) == 0);
    }
  }
  CHECK(rows == 51);
  CHECK(crossing == 1);
}

TEST_CASE("gen, solve-commitment and verify round trip") {
  TempDir dir;
  for (unsigned seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    RunConfig gen;
    gen.command = Command::kGen;
    gen.seed = seed;
    gen.n = 1 + static_cast<int>(seed % 3);
    gen.output_path = (dir / "g.json").string();
    REQUIRE(run_cli(gen).status == kExitOk);
    REQUIRE(run_cli(with(Command::kSolveCommitment, dir / "g.json")).status == kExitOk);
    const Outcome v = run_cli(with(Command::kVerify, dir / "g.json"));
    CHECK(v.status == kExitOk);
    if (v.status != kExitOk) MESSAGE(v.out);
  }
}

TEST_CASE("verify also checks a supplied leader allocation") {
  TempDir dir;
  const Outcome v = run_cli(with(Command::kVerify, dir.write("ref.json", kReference)));
  REQUIRE(v.status == kExitOk);
  const auto j = nlohmann::json::parse(v.out);
  bool seen = false;
  for (const auto& c : j["checks"]) seen = seen || c["name"] == "best_response_minus_oracle";
  CHECK(seen);
}
