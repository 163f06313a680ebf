#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcover/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = qcover::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// name, arguments; golden output in tests/golden/<name>.out
const std::vector<std::pair<std::string, std::vector<std::string>>> kGolden = {
    {"cb_trivial", {"cb", "--a", "0", "--b", "0", "--k", "5", "--format", "text"}},
    {"cb_fe_shape", {"cb", "--a", "1", "--b", "2", "--k", "3"}},
    {"cb_json", {"--format", "json", "cb", "--a", "2", "--b", "1", "--k", "-2"}},
    {"mul_pbw", {"mul", "E0^(2)", "F0"}},
    {"mul_udot", {"mul", "E 1_{0}", "F 1_{2}"}},
    {"normal_form", {"normal-form", "F1 E1 K1"}},
    {"morphism_rho", {"morphism", "rho", "E1^(2)"}},
    {"morphism_udot", {"morphism", "omega", "E^(1) 1_{-1} F^(2)"}},
    {"coproduct", {"coproduct", "F1^(2)"}},
    {"cb_expand", {"cb-expand", "F^(2) 1_{2} E^(1)"}},
    {"cb_expand_json", {"cb-expand", "E^(2) 1_{-3} F^(2)", "--format", "json"}},
    {"tensor_cb", {"tensor-cb", "--s", "3", "--t", "2"}},
    {"tensor_cb_json", {"tensor-cb", "--s", "2", "--t", "1", "--format", "json"}},
    {"struct_const", {"struct-const", "--i1", "1,1,0", "--i2", "1,1,0"}},
    {"struct_const_json", {"struct-const", "--i1", "1,0,0", "--i2", "0,1,2", "--format", "json"}},
    {"form", {"form", "E^(1) 1_{0} F^(1)", "E^(1) 1_{0} F^(1)"}},
    {"specialize_udot", {"specialize", "--pi", "+1", "CB(1,2,0)"}},
    {"specialize_scalar", {"specialize", "--pi", "-1", "p*q^2 + 3*q^-1"}},
    {"decompose", {"decompose", "--tensor", "1,2"}},
    {"decompose_json", {"decompose", "--tensor", "3,2", "--format", "json"}},
    {"verify_theta", {"verify", "theta", "--max-n", "10", "--modules", "4"}},
    {"verify_all_small", {"verify", "all", "--max-n", "3", "--modules", "2", "--box", "2", "--weights", "3",
                          "--samples", "10", "--cutoff", "5"}},
};

fs::path golden_dir() { return fs::path(QCOVER_SOURCE_DIR) / "tests" / "golden"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("golden outputs") {
  const bool update = std::getenv("QCOVER_UPDATE_GOLDEN") != nullptr;
  for (const auto& [name, args] : kGolden) {
    CAPTURE(name);
    const Run r = run(args);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const fs::path p = golden_dir() / (name + ".out");
    if (update) {
      std::ofstream(p, std::ios::binary) << r.out;
      continue;
    }
    REQUIRE(fs::exists(p));
    CHECK(r.out == slurp(p));
    // byte-identical on a second run
    CHECK(run(args).out == r.out);
  }
}

TEST_CASE("documented examples") {
  CHECK(run({"cb", "--a", "0", "--b", "0", "--k", "5", "--format", "text"}).out == "1_{5}\n");
  CHECK(run({"verify", "theta", "--max-n", "10", "--modules", "4"}).out ==
        "OK: b_n = 0 for 1 ≤ n ≤ 10; intertwining verified on L(s)⊗L(t), s,t ≤ 4\n");
  // weights do not compose: empty table, success
  Run r = run({"struct-const", "--i1", "1,0,2", "--i2", "0,1,7", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "qcover/1");
  CHECK(j["products"].empty());
  CHECK(run({"decompose", "--tensor", "1,2"}).out == "L(3) + L(1)\n");
}

TEST_CASE("exit codes") {
  Run r = run({"mul", "E0 +", "F0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("position 4") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"cb", "--a", "-1", "--b", "0", "--k", "0"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"struct-const", "--i1", "1,0", "--i2", "0,1,2"}).code == 2);
  CHECK(run({"normal-form", "1_{0} 1_{2}"}).code == 2);
  CHECK(run({"mul", "E0", "E 1_{0}"}).code == 2);
  CHECK(run({"coproduct", "E 1_{0}"}).code == 2);
  r = run({"normal-form", "(1)/(1 + p) * 1_{0}"});
  CHECK(r.code == 2);
  CHECK(r.err.find("zero divisor at position 5") != std::string::npos);
  // a bound past the Verma cutoff is a mathematical failure with a counterexample
  r = run({"verify", "classification", "--max-n", "4", "--cutoff", "4"});
  CHECK(r.code == 1);
  CHECK(r.out == "FAIL: weight +q^4, sector 0: no singular vector up to the cutoff, expected t = 5\n");
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify output is independent of the worker count") {
  const std::vector<std::string> base = {"verify", "all", "--max-n", "3", "--modules", "2",
                                         "--box", "2", "--weights", "3", "--samples", "10", "--cutoff", "5"};
  auto with = [&](const char* n) {
    auto a = base;
    a.push_back("--threads");
    a.push_back(n);
    return run(a);
  };
  const Run one = with("1"), four = with("4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  auto j = nlohmann::json::parse(run({"verify", "form", "--box", "1", "--weights", "2", "--format", "json"}).out);
  CHECK(j["ok"] == true);
  CHECK(j["results"][0]["suite"] == "form");
}
