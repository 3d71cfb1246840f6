#include <doctest.h>

#include "ccl/bargaining.hpp"
#include "ccl/io.hpp"
#include "ccl/properties.hpp"
#include "ccl/stability.hpp"

using namespace ccl;

namespace {

Ccp make(const RawInstance& raw) {
  auto v = Ccp::validate(raw);
  REQUIRE(v.ok());
  return *v;
}

Ccp reparse(const Ccp& g) {
  auto raw = parse_instance(instance_to_json(g).dump());
  REQUIRE_MESSAGE(raw.ok(), (raw.errors.empty() ? "" : raw.errors.front()));
  auto v = Ccp::validate(*raw);
  REQUIRE(v.ok());
  return *v;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("instance round trip is the identity on the builtins") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    auto g = builtin(name);
    CHECK(reparse(g) == g);
  }
}

TEST_CASE("instance round trip keeps strict mode and listed singletons") {
  RawInstance raw;
  raw.agents = {1, 2};
  raw.default_rule = DefaultRule::Strict;
  raw.coalitions.push_back({{1}, {{Money(0)}}});
  raw.coalitions.push_back({{1, 2}, {{Money(1), Money(1, 2)}}});
  auto g = make(raw);
  auto h = reparse(g);
  CHECK(h == g);
  CHECK(h.default_rule() == DefaultRule::Strict);
  CHECK(h.listed_masks().size() == 2);
}

TEST_CASE("instance serialization uses plain integers where exact") {
  RawInstance raw;
  raw.agents = {1, 2};
  raw.coalitions.push_back({{1, 2}, {{Money(2), Money(1, 2)}, {Money(1, 3), Money(0)}}});
  auto g = make(raw);
  auto j = instance_to_json(g);
  CHECK(j["coalitions"][0]["payoffs"][0][0] == Json(2));
  CHECK(j["coalitions"][0]["payoffs"][0][1] == Json("0.5"));
  CHECK(j["coalitions"][0]["payoffs"][1][0] == Json("1/3"));
  CHECK(j["default"] == "minus-e");
  CHECK(reparse(g) == g);
}

TEST_CASE("parse accepts integers, decimal strings, and fractions") {
  auto raw = parse_instance(R"({
    "agents": [1, 2],
    "coalitions": [{"members": [1, 2], "payoffs": [[2, "0.5"], ["3/2", "4"]]}]
  })");
  REQUIRE(raw.ok());
  auto g = Ccp::validate(*raw);
  REQUIRE(g.ok());
  auto fs = g->feasible(Coalition{1, 2});
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].amounts == std::vector<Money>{Money(2), Money(1, 2)});
  CHECK(fs[1].amounts == std::vector<Money>{Money(3, 2), Money(4)});
}

TEST_CASE("parse rejects malformed documents with one message each") {
  auto bad = [](const std::string& text) {
    auto r = parse_instance(text);
    REQUIRE(!r.ok());
    return r.errors;
  };
  CHECK(bad("{")[0].find("invalid JSON") == 0);
  CHECK(bad("[]")[0] == "instance must be a JSON object");
  CHECK(bad(R"({"coalitions": []})")[0] == "instance: missing \"agents\"");
  CHECK(bad(R"({"agents": [1], "color": 3})")[0] ==
        "instance: unknown field \"color\"");
  CHECK(bad(R"({"agents": [1, -2]})")[0].find("non-negative") != std::string::npos);
  CHECK(bad(R"({"agents": [1], "default": "open"})")[0].find("minus-e") != std::string::npos);
  // floats are not exact amounts
  auto errs = bad(R"({"agents": [1, 2],
                      "coalitions": [{"members": [1, 2], "payoffs": [[0.5, 1]]}]})");
  CHECK(errs[0].find("payoff amounts") != std::string::npos);
  errs = bad(R"({"agents": [1, 2], "coalitions": [{"members": [1, 2]}]})");
  CHECK(errs[0].find("payoffs") != std::string::npos);
  errs = bad(R"({"agents": [1, 2],
                 "coalitions": [{"members": [1, 2], "payoffs": [[1, 1]], "note": 0}]})");
  CHECK(errs[0] == "coalitions[0]: unknown field \"note\"");
}

TEST_CASE("validation failures surface through the parse pipeline") {
  // parse succeeds, validate catches the semantic error
  auto raw = parse_instance(R"({
    "agents": [1, 2],
    "coalitions": [{"members": [1, 3], "payoffs": [[1, 1]]}]
  })");
  REQUIRE(raw.ok());
  auto g = Ccp::validate(*raw);
  CHECK(!g.ok());
}

TEST_CASE("generator spec builds a housing market") {
  auto g = parse_generator_spec(R"({
    "type": "shapley-scarf",
    "utilities": {
      "1": {"1": 0, "2": 2, "3": 1},
      "2": {"1": 1, "2": 0, "3": 2},
      "3": {"1": 2, "2": 1, "3": 0}
    }
  })");
  REQUIRE_MESSAGE(g.ok(), (g.errors.empty() ? "" : g.errors.front()));
  CHECK(g->n() == 3);
  auto u = UtilityProfile::make({1, 2, 3}, {{1, {{1, 0}, {2, 2}, {3, 1}}},
                                            {2, {{1, 1}, {2, 0}, {3, 2}}},
                                            {3, {{1, 2}, {2, 1}, {3, 0}}}});
  REQUIRE(u.ok());
  auto direct = shapley_scarf(*u);
  REQUIRE(direct.ok());
  CHECK(*g == *direct);
}

TEST_CASE("generator spec builds a marriage market") {
  auto g = parse_generator_spec(R"({
    "type": "marriage",
    "men": [1, 2],
    "women": [3, 4],
    "utilities": {
      "1": {"3": 2, "4": 1},
      "2": {"3": 1, "4": 2},
      "3": {"1": 2, "2": 1},
      "4": {"1": 1, "2": 2}
    }
  })");
  REQUIRE_MESSAGE(g.ok(), (g.errors.empty() ? "" : g.errors.front()));
  CHECK(g->n() == 4);
  // favorite pairs are feasible, same-sex pairs are not
  CHECK(g->feasible(Coalition{1, 3})[0].amounts == std::vector<Money>{Money(2), Money(2)});
  CHECK(g->feasible(Coalition{1, 2})[0].amounts == std::vector<Money>{Money(-1), Money(-1)});
}

TEST_CASE("generator spec builds seeded random problems deterministically") {
  std::string text = R"({"type": "random", "seed": 11, "nAgents": 3,
                         "maxVectors": 2, "valueRange": [0, 3]})";
  auto a = parse_generator_spec(text);
  auto b = parse_generator_spec(text);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(*a == *b);
  CHECK(*a == random_ccp(11, 3, 2, {0, 3}));
  // defaults fill in maxVectors and valueRange
  auto c = parse_generator_spec(R"({"type": "random", "seed": 11, "nAgents": 3})");
  REQUIRE(c.ok());
  CHECK(*c == *a);
}

TEST_CASE("generator spec rejects malformed requests") {
  CHECK(!parse_generator_spec("{}").ok());
  CHECK(!parse_generator_spec(R"({"type": "lottery"})").ok());
  CHECK(!parse_generator_spec(R"({"type": "random", "nAgents": 3})").ok());
  CHECK(!parse_generator_spec(R"({"type": "random", "seed": 1})").ok());
  CHECK(!parse_generator_spec(R"({"type": "random", "seed": 1, "nAgents": 3,
                                  "valueRange": [3]})")
             .ok());
  CHECK(!parse_generator_spec(R"({"type": "marriage", "men": [1],
                                  "utilities": {}})")
             .ok());
  CHECK(!parse_generator_spec(R"({"type": "roommate"})").ok());
  auto bad_id = parse_generator_spec(R"({"type": "roommate",
                                         "utilities": {"x": {"1": 1}}})");
  REQUIRE(!bad_id.ok());
  CHECK(bad_id.errors[0].find("bad agent id") != std::string::npos);
  // bad utility amounts are reported, not silently dropped
  auto bad_amount = parse_generator_spec(R"({"type": "roommate",
                                             "utilities": {"1": {"2": 0.5}}})");
  CHECK(!bad_amount.ok());
}

TEST_CASE("digest is stable across runs and distinguishes instances") {
  auto g = builtin("example1");
  CHECK(instance_digest(g) == instance_digest(builtin("example1")));
  CHECK(instance_digest(g) != instance_digest(builtin("example2")));
  CHECK(instance_digest(g).substr(0, 8) == "fnv1a64:");
  CHECK(instance_digest(g).size() == 8 + 16);
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("outcome serialization is position aligned") {
  auto g = builtin("example2");
  auto filled = validate_outcome(g, {Coalition{1, 2}, Coalition{3}},
                                 {{1, Money(2)}, {2, Money(1)}, {3, Money(0)}});
  REQUIRE(filled.ok());
  auto j = outcome_to_json(g, *filled);
  CHECK(j.dump() == R"({"structure":[[1,2],[3]],"payoff":[2,1,0]})");
}

TEST_CASE("witness serializations carry every field") {
  auto g = builtin("example1");
  Outcome everyone_alone = zero_outcome(g);
  auto strong = find_block(g, everyone_alone);
  REQUIRE(strong.has_value());
  auto js = block_witness_to_json(*strong);
  CHECK(js["kind"] == "strong");
  CHECK(js["coalition"] == Json::array({1, 2}));
  CHECK(js["vector"] == Json::array({3, 2}));
  CHECK(!js.contains("active"));

  BlockWitness weak{Coalition{1, 2}, PayoffVector{Coalition{1, 2}, {Money(3), Money(2)}},
                    BlockKind::Weak, Coalition{1}};
  auto jw = block_witness_to_json(weak);
  CHECK(jw["kind"] == "weak");
  CHECK(jw["active"] == Json::array({1}));

  auto uni = unilateral_blocks(g, 1, everyone_alone);
  REQUIRE(uni.has_value());
  auto ju = unilateral_witness_to_json(*uni);
  CHECK(ju["agent"] == 1);
  CHECK(ju.contains("host"));
  CHECK(ju.contains("deviatingSet"));
  CHECK(ju.contains("vector"));
}

TEST_CASE("property witness serializations match the gstar pins") {
  auto g = builtin("gstar");
  Coalition all{1, 2, 3, 4};
  auto weak = find_weak_top_coalition(g, all);
  REQUIRE(weak.has_value());
  auto jw = weak_top_coalition_to_json(*weak);
  CHECK(jw["scope"] == Json::array({1, 2, 3, 4}));
  CHECK(jw["top"] == Json::array({1, 2, 3}));
  CHECK(jw["vector"] == Json::array({3, 3, 3}));
  CHECK(jw["tiers"] == Json::array({Json::array({1, 2, 3})}));

  auto top = find_top_coalition(g, all);
  REQUIRE(top.has_value());
  auto jt = top_coalition_to_json(*top);
  CHECK(jt["top"] == Json::array({1, 2, 3}));
  CHECK(!jt.contains("tiers"));

  auto cyc = find_weak_top_cycle(g, all);
  REQUIRE(cyc.has_value());
  auto jc = weak_top_cycle_to_json(*cyc);
  CHECK(jc["rank"] == Json({{"1", 1}, {"2", 2}, {"3", 3}}));

  auto report = satisfies_top_coalition_property(g);
  auto jr = property_report_to_json(report, top_coalition_to_json);
  CHECK(jr["satisfied"] == true);
  CHECK(jr["witnesses"].size() == 15);
  CHECK(jr["failing"].empty());
}

TEST_CASE("construction and chain serializations cover both shapes") {
  auto g = builtin("gstar");
  auto c = construct_core_outcome(g);
  REQUIRE(c.status == ConstructStatus::Ok);
  auto jc = construction_to_json(g, c);
  CHECK(jc["status"] == "ok");
  CHECK(jc["failedScope"].is_null());
  CHECK(jc["outcome"]["payoff"] == Json::array({3, 3, 3, 0}));
  CHECK(jc["stages"].size() == 2);
  CHECK(jc["stages"][0]["top"] == Json::array({1, 2, 3}));

  auto e1 = builtin("example1");
  auto failed = construct_core_outcome(e1);
  REQUIRE(failed.status == ConstructStatus::PropertyFailed);
  auto jf = construction_to_json(e1, failed);
  CHECK(jf["status"] == "property-failed");
  CHECK(jf["outcome"].is_null());
  CHECK(jf["failedScope"] == Json::array({1, 2, 3, 4}));

  auto e2 = builtin("example2");
  auto base = validate_outcome(e2, {Coalition{1, 3}, Coalition{2}},
                               {{1, Money(1)}, {2, Money(0)}, {3, Money(2)}});
  REQUIRE(base.ok());
  auto chain = wb_chain_construct(e2, *base);
  REQUIRE(chain.status == ChainStatus::Ok);
  auto jn = chain_to_json(e2, chain);
  CHECK(jn["status"] == "ok");
  CHECK(jn["steps"].is_array());
  CHECK(!jn.contains("note"));
}

TEST_CASE("analysis serializations for super-additivity and trading cycles") {
  auto rep = is_super_additive(builtin("example1"));
  REQUIRE(!rep.super_additive);
  auto jr = super_additivity_to_json(rep);
  CHECK(jr["superAdditive"] == false);
  CHECK(jr["counterexample"]["s"] == Json::array({1}));
  CHECK(jr["counterexample"]["t"] == Json::array({2}));
  CHECK(jr["counterexample"]["z"] == Json::array({0, 0}));

  auto ttc = top_trading_cycles(builtin_utilities("example1"));
  REQUIRE(ttc.ok());
  auto jt = ttc_to_json(*shapley_scarf(builtin_utilities("example1")), *ttc);
  CHECK(jt["outcome"]["payoff"] == Json::array({3, 3, 3, 0}));
  REQUIRE(jt["rounds"].size() >= 1);
  CHECK(jt["rounds"][0]["cycle"] == Json::array({1, 2, 3}));
}

TEST_SUITE_END();
