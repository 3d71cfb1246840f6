#include <doctest.h>

#include "ccl/cli.hpp"
#include "ccl/io.hpp"

#include <filesystem>
#include <fstream>

using namespace ccl;

namespace {

CliResult run(std::initializer_list<std::string> args) {
  return dispatch(std::vector<std::string>(args));
}

Json parsed(const CliResult& r) {
  REQUIRE(!r.out.empty());
  return Json::parse(r.out);
}

std::string without_timing(const CliResult& r) {
  auto j = parsed(r);
  j["stats"]["elapsedMs"] = 0;
  return j.dump();
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("ccl_cli_" + name);
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("core on the first example reports the empty set") {
  auto r = run({"core", "--builtin", "example1"});
  CHECK(r.exit_code == 0);
  auto j = parsed(r);
  CHECK(j["command"] == "core");
  CHECK(j["result"]["outcomes"] == Json::array());
  CHECK(j["result"]["count"] == 0);
  CHECK(j["instanceDigest"].get<std::string>().starts_with("fnv1a64:"));
  CHECK(j["stats"]["counts"]["agents"] == 4);
}

TEST_CASE("classical bargaining set of the second example is empty") {
  auto r = run({"wb", "--builtin", "example2", "--classical"});
  CHECK(r.exit_code == 0);
  CHECK(parsed(r)["result"]["count"] == 0);

  auto plain = run({"wb", "--builtin", "example2"});
  auto j = parsed(plain);
  CHECK(j["result"]["count"] == 3);
  CHECK(j["result"]["outcomes"][0]["payoff"] == Json::array({2, 1, 0}));
}

TEST_CASE("reports are deterministic apart from timing") {
  for (auto args : {std::vector<std::string>{"wb", "--builtin", "example2"},
                    std::vector<std::string>{"outcomes", "--builtin", "gstar"},
                    std::vector<std::string>{"properties", "--weak-top-cycle", "--builtin",
                                             "gstar"}}) {
    auto a = dispatch(args);
    auto b = dispatch(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(without_timing(a) == without_timing(b));
  }
}

TEST_CASE("trading cycles resolve builtins through their utilities") {
  auto r = run({"ttc", "--builtin", "example1"});
  CHECK(r.exit_code == 0);
  auto j = parsed(r);
  CHECK(j["result"]["outcome"]["payoff"] == Json::array({3, 3, 3, 0}));
  CHECK(j["result"]["rounds"][0]["cycle"] == Json::array({1, 2, 3}));
  CHECK(j["stats"]["counts"]["rounds"] == 2);
}

TEST_CASE("trading cycles accept a generator spec file") {
  auto path = write_temp("housing.json", R"({
    "type": "shapley-scarf",
    "utilities": {
      "1": {"1": 0, "2": 3, "3": 2, "4": 1},
      "2": {"1": 2, "2": 0, "3": 3, "4": 1},
      "3": {"1": 3, "2": 2, "3": 0, "4": 1},
      "4": {"1": 3, "2": 2, "3": 1, "4": 0}
    }
  })");
  auto r = run({"ttc", "--spec", path});
  CHECK(r.exit_code == 0);
  CHECK(parsed(r)["result"]["outcome"]["payoff"] == Json::array({3, 3, 3, 0}));
}

TEST_CASE("table format prints the human summary") {
  auto r = run({"core", "--builtin", "example1", "--format", "table"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "command: core\ndigest: fnv1a64:7ce4ac103a416660\ncount: 0\n");

  auto c = run({"construct", "--theorem", "1", "--builtin", "gstar", "--format", "table"});
  CHECK(c.out.find("status: ok") != std::string::npos);
  CHECK(c.out.find("({{1,2,3},{4}}, (3,3,3,0))") != std::string::npos);
}

TEST_CASE("validate reports problems in the result with exit 1") {
  auto good = run({"validate", "--instance",
                   write_temp("ok.json",
                              R"({"agents": [1, 2],
                                  "coalitions": [{"members": [1, 2], "payoffs": [[1, 1]]}]})")});
  CHECK(good.exit_code == 0);
  CHECK(parsed(good)["result"]["valid"] == true);

  auto bad = run({"validate", "--instance",
                  write_temp("dup.json", R"({"agents": [1, 1]})")});
  CHECK(bad.exit_code == 1);
  auto j = parsed(bad);
  CHECK(j["result"]["valid"] == false);
  CHECK(j["result"]["errors"].size() == 1);
  CHECK(j["instanceDigest"].is_null());

  auto missing = run({"validate", "--instance", "/nonexistent/path.json"});
  CHECK(missing.exit_code == 1);
  CHECK(parsed(missing)["result"]["valid"] == false);
}

TEST_CASE("size guard violations exit with code 2") {
  auto spec = write_temp("big.json", R"({"type": "random", "seed": 3, "nAgents": 12})");
  auto r = run({"core", "--spec", spec});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("1..8") != std::string::npos);

  // a raised guard admits the same spec
  auto ok = run({"outcomes", "--spec",
                 write_temp("mid.json", R"({"type": "random", "seed": 3, "nAgents": 9,
                                            "maxVectors": 1, "valueRange": [0, 1]})"),
                 "--max-agents", "9"});
  CHECK(ok.exit_code == 0);

  auto instance = run({"core", "--instance",
                       write_temp("wide.json",
                                  R"({"agents": [1,2,3,4,5,6,7,8,9]})")});
  CHECK(instance.exit_code == 2);
}

TEST_CASE("construction that refutes its verification exits with code 3") {
  auto path = write_temp("esc.json", R"({
    "agents": [1, 2, 3],
    "coalitions": [
      {"members": [1, 2], "payoffs": [[0, 3]]},
      {"members": [1, 3], "payoffs": [[0, 3]]},
      {"members": [2, 3], "payoffs": [[1, 1]]}
    ]
  })");
  auto r = run({"construct", "--theorem", "2", "--instance", path});
  CHECK(r.exit_code == 3);
  CHECK(parsed(r)["result"]["status"] == "verification-failed");

  // the hypothesis failing honestly is not a discrepancy
  auto hypo = run({"construct", "--theorem", "1", "--builtin", "example1"});
  CHECK(hypo.exit_code == 0);
  CHECK(parsed(hypo)["result"]["status"] == "property-failed");
  CHECK(parsed(hypo)["result"]["failedScope"] == Json::array({1, 2, 3, 4}));
}

TEST_CASE("bargaining chain command reports its steps") {
  auto r = run({"construct", "--theorem", "4", "--builtin", "example2"});
  CHECK(r.exit_code == 0);
  auto j = parsed(r);
  CHECK(j["result"]["status"] == "ok");
  CHECK(j["result"].contains("start"));
  CHECK(j["result"]["outcome"].is_object());
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run({"frobnicate"}).exit_code == 1);
  CHECK(run({"core"}).exit_code == 1);  // no source
  CHECK(run({"core", "--builtin", "nosuch"}).exit_code == 1);
  CHECK(run({"core", "--builtin", "example1", "--instance", "x.json"}).exit_code == 1);
  CHECK(run({"properties", "--builtin", "gstar"}).exit_code == 1);
  CHECK(run({"properties", "--builtin", "gstar", "--top-coalition", "--weak-top-cycle"})
            .exit_code == 1);
  CHECK(run({"construct", "--builtin", "gstar"}).exit_code == 1);       // --theorem required
  CHECK(run({"construct", "--theorem", "7", "--builtin", "gstar"}).exit_code == 1);
  CHECK(run({"core", "--builtin", "example1", "--format", "yaml"}).exit_code == 1);
  CHECK(run({"core", "--builtin", "example1", "--max-agents", "40"}).exit_code == 1);
  CHECK(run({"ttc", "--instance", "x.json"}).exit_code == 1);  // ttc has no --instance
}

TEST_CASE("help is available at exit 0") {
  auto r = run({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("core") != std::string::npos);
  CHECK(r.out.find("wb") != std::string::npos);
}

TEST_CASE("variant flags reach the analyses") {
  auto lit = run({"pareto", "--builtin", "example2", "--mode", "literal"});
  CHECK(lit.exit_code == 0);
  // under the literal reading, the minus-e grand coalition never blocks,
  // so every outcome passes
  CHECK(parsed(lit)["result"]["count"] == 4);
  auto od = run({"pareto", "--builtin", "example2"});
  CHECK(parsed(od)["result"]["count"] == 3);

  auto strict = run({"is", "--builtin", "example1", "--is-variant", "strict-join"});
  CHECK(strict.exit_code == 0);
  auto literal = run({"is", "--builtin", "example1"});
  CHECK(parsed(literal)["result"]["count"] == 0);
}

TEST_CASE("every analysis command emits the report envelope") {
  auto spec = write_temp("envelope.json", R"({"type": "random", "seed": 5, "nAgents": 3})");
  std::vector<std::vector<std::string>> calls = {
      {"validate", "--spec", spec},
      {"outcomes", "--spec", spec},
      {"core", "--spec", spec},
      {"strict-core", "--spec", spec},
      {"pareto", "--spec", spec},
      {"is", "--spec", spec},
      {"wb", "--spec", spec},
      {"properties", "--weak-top-coalition", "--spec", spec},
      {"construct", "--theorem", "3", "--spec", spec},
      {"generate", "--spec", spec},
      {"super-additive", "--spec", spec},
  };
  for (const auto& call : calls) {
    CAPTURE(call[0]);
    auto r = dispatch(call);
    auto j = parsed(r);
    CHECK(j["command"] == call[0]);
    CHECK(j.contains("instanceDigest"));
    CHECK(j.contains("result"));
    CHECK(j["stats"]["counts"].is_object());
    CHECK(j["stats"]["elapsedMs"].is_number());
  }
}

TEST_CASE("generated instances round-trip through the instance reader") {
  auto spec = write_temp("round.json", R"({"type": "random", "seed": 9, "nAgents": 3})");
  auto gen = run({"generate", "--spec", spec});
  REQUIRE(gen.exit_code == 0);
  auto instance = parsed(gen)["result"]["instance"];
  auto path = write_temp("round_inst.json", instance.dump());
  auto via_instance = run({"core", "--instance", path});
  auto via_spec = run({"core", "--spec", spec});
  CHECK(without_timing(via_instance) == without_timing(via_spec));
}

TEST_SUITE_END();
