#include <doctest.h>

#include "ccl/combinatorics.hpp"
#include "ccl/instances.hpp"

using namespace ccl;

namespace {

std::vector<PayoffVector> fs(const Ccp& g, std::initializer_list<Agent> members) {
  return g.feasible(Coalition{std::vector<Agent>(members)});
}

PayoffVector pv(std::initializer_list<Agent> members, std::initializer_list<long long> pay) {
  PayoffVector out{Coalition{std::vector<Agent>(members)}, {}};
  for (long long p : pay) out.amounts.emplace_back(p);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("instances");

TEST_CASE("utility profile validation") {
  CHECK(UtilityProfile::make({1, 2}, {{1, {{1, 0}, {2, 1}}}, {2, {{1, 1}, {2, 0}}}}).ok());
  // nonzero diagonal
  CHECK(!UtilityProfile::make({1, 2}, {{1, {{1, 2}, {2, 1}}}, {2, {{1, 1}, {2, 0}}}}).ok());
  // missing entry
  CHECK(!UtilityProfile::make({1, 2}, {{1, {{1, 0}}}, {2, {{1, 1}, {2, 0}}}}).ok());
  // unknown agent in the table
  CHECK(!UtilityProfile::make({1, 2}, {{1, {{1, 0}, {2, 1}, {3, 5}}}, {2, {{1, 1}, {2, 0}}}})
             .ok());
}

TEST_CASE("builtin example1 feasible sets") {
  auto g = builtin("example1");
  CHECK(g.n() == 4);
  CHECK(fs(g, {1, 2}) == std::vector<PayoffVector>{pv({1, 2}, {3, 2})});
  CHECK(fs(g, {1, 3}) == std::vector<PayoffVector>{pv({1, 3}, {2, 3})});
  CHECK(fs(g, {1, 4}) == std::vector<PayoffVector>{pv({1, 4}, {1, 3})});
  CHECK(fs(g, {2, 3}) == std::vector<PayoffVector>{pv({2, 3}, {3, 2})});
  CHECK(fs(g, {2, 4}) == std::vector<PayoffVector>{pv({2, 4}, {1, 2})});
  CHECK(fs(g, {3, 4}) == std::vector<PayoffVector>{pv({3, 4}, {1, 1})});
  CHECK(fs(g, {1, 2, 3}) == std::vector<PayoffVector>{pv({1, 2, 3}, {-1, -1, -1})});
  CHECK(fs(g, {1, 2, 3, 4}) == std::vector<PayoffVector>{pv({1, 2, 3, 4}, {-1, -1, -1, -1})});
  CHECK(fs(g, {2}) == std::vector<PayoffVector>{pv({2}, {0})});
}

TEST_CASE("builtin example2 feasible sets use the corrected utilities") {
  auto g = builtin("example2");
  CHECK(g.n() == 3);
  CHECK(fs(g, {1, 2}) == std::vector<PayoffVector>{pv({1, 2}, {2, 1})});
  CHECK(fs(g, {1, 3}) == std::vector<PayoffVector>{pv({1, 3}, {1, 2})});
  CHECK(fs(g, {2, 3}) == std::vector<PayoffVector>{pv({2, 3}, {2, 1})});
  CHECK(fs(g, {1, 2, 3}) == std::vector<PayoffVector>{pv({1, 2, 3}, {-1, -1, -1})});
}

TEST_CASE("builtin gstar extends example1 with three-agent cycles") {
  auto g = builtin("gstar");
  CHECK(g.n() == 4);
  CHECK(fs(g, {1, 2}) == std::vector<PayoffVector>{pv({1, 2}, {3, 2})});
  CHECK(fs(g, {1, 2, 3}) ==
        std::vector<PayoffVector>{pv({1, 2, 3}, {3, 3, 3}), pv({1, 2, 3}, {2, 2, 2})});
  CHECK(fs(g, {1, 2, 4}) ==
        std::vector<PayoffVector>{pv({1, 2, 4}, {3, 1, 3}), pv({1, 2, 4}, {1, 2, 2})});
  CHECK(fs(g, {1, 2, 3, 4}) == std::vector<PayoffVector>{pv({1, 2, 3, 4}, {-1, -1, -1, -1})});
  CHECK(outcomes(g).size() == 18);
}

TEST_CASE("builtin names and unknown name") {
  CHECK(builtin_names() == std::vector<std::string>{"example1", "example2", "gstar"});
  CHECK_THROWS_AS(builtin("nope"), std::invalid_argument);
}

TEST_CASE("shapley_scarf lists every cycle payoff") {
  auto u = builtin_utilities("example1");
  auto g = shapley_scarf(u);
  REQUIRE(g.ok());
  CHECK(g->feasible(Coalition{1, 2, 3}) ==
        std::vector<PayoffVector>{pv({1, 2, 3}, {3, 3, 3}), pv({1, 2, 3}, {2, 2, 2})});
  CHECK(g->feasible(Coalition{2, 3}) == std::vector<PayoffVector>{pv({2, 3}, {3, 2})});
  // 3! full cycles on the grand coalition, no duplicates here.
  CHECK(g->feasible(Coalition{1, 2, 3, 4}).size() == 6);
}

TEST_CASE("roommate pair payoffs are the swap values") {
  auto u = UtilityProfile::make(
      {1, 2, 3}, {{1, {{1, 0}, {2, 5}, {3, 1}}},
                  {2, {{1, 2}, {2, 0}, {3, 7}}},
                  {3, {{1, 4}, {2, 3}, {3, 0}}}});
  REQUIRE(u.ok());
  auto g = roommate(*u);
  REQUIRE(g.ok());
  CHECK(g->feasible(Coalition{1, 2}) == std::vector<PayoffVector>{pv({1, 2}, {5, 2})});
  CHECK(g->feasible(Coalition{1, 3}) == std::vector<PayoffVector>{pv({1, 3}, {1, 4})});
  CHECK(g->feasible(Coalition{2, 3}) == std::vector<PayoffVector>{pv({2, 3}, {7, 3})});
  CHECK(g->feasible(Coalition{1, 2, 3}) ==
        std::vector<PayoffVector>{pv({1, 2, 3}, {-1, -1, -1})});
}

TEST_CASE("marriage forces same-sex pairs out") {
  std::map<Agent, std::map<Agent, Money>> u;
  u[1][3] = Money(2);
  u[2][3] = Money(1);
  u[3][1] = Money(1);
  u[3][2] = Money(2);
  u[1][2] = Money(9);  // forced down to -1 regardless
  auto g = marriage({1, 2}, {3}, u);
  REQUIRE(g.ok());
  CHECK(g->feasible(Coalition{1, 2}) == std::vector<PayoffVector>{pv({1, 2}, {-1, -1})});
  CHECK(g->feasible(Coalition{1, 3}) == std::vector<PayoffVector>{pv({1, 3}, {2, 1})});
  CHECK(g->feasible(Coalition{2, 3}) == std::vector<PayoffVector>{pv({2, 3}, {1, 2})});

  CHECK(!marriage({1, 2}, {2, 3}, u).ok());  // overlapping sides
}

TEST_CASE("man_woman_child cuts off above three") {
  auto g = man_woman_child(builtin_utilities("example1"));
  REQUIRE(g.ok());
  CHECK(*g == builtin("gstar"));
}

TEST_CASE("super-additivity counterexample on the pairing instance") {
  auto r = is_super_additive(builtin("example1"));
  CHECK(!r.super_additive);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->s == Coalition{1});
  CHECK(r.counterexample->t == Coalition{2});
  CHECK(r.counterexample->x == pv({1}, {0}));
  CHECK(r.counterexample->y == pv({2}, {0}));
  CHECK(r.counterexample->z == pv({1, 2}, {0, 0}));
}

TEST_CASE("super-additivity holds when unions contain all concatenations") {
  RawInstance raw;
  raw.agents = {1, 2};
  raw.coalitions.push_back({{1, 2}, {{Money(0), Money(0)}, {Money(4), Money(4)}}});
  auto g = Ccp::validate(raw);
  REQUIRE(g.ok());
  CHECK(is_super_additive(*g).super_additive);

  RawInstance single;
  single.agents = {3};
  CHECK(is_super_additive(*Ccp::validate(single)).super_additive);
}

TEST_CASE("top trading cycles") {
  SUBCASE("example1 utilities trade the 1-2-3 cycle first") {
    auto r = top_trading_cycles(builtin_utilities("example1"));
    REQUIRE(r.ok());
    REQUIRE(r->rounds.size() == 2);
    CHECK(r->rounds[0].cycle == Coalition{1, 2, 3});
    CHECK(r->rounds[0].pointed_to == std::vector<Agent>{2, 3, 1});
    CHECK(r->rounds[1].cycle == Coalition{4});
    CHECK(r->rounds[1].pointed_to == std::vector<Agent>{4});
    CHECK(r->outcome.structure.blocks ==
          std::vector<Coalition>{Coalition{1, 2, 3}, Coalition{4}});
    CHECK(r->outcome.payoff == std::vector<Money>{Money(3), Money(3), Money(3), Money(0)});
  }
  SUBCASE("two agents preferring each other swap") {
    auto u = UtilityProfile::make({1, 2}, {{1, {{1, 0}, {2, 4}}}, {2, {{1, 6}, {2, 0}}}});
    REQUIRE(u.ok());
    auto r = top_trading_cycles(*u);
    REQUIRE(r.ok());
    CHECK(r->outcome.structure.blocks == std::vector<Coalition>{Coalition{1, 2}});
    CHECK(r->outcome.payoff == std::vector<Money>{Money(4), Money(6)});
  }
  SUBCASE("single agent keeps the null trade") {
    auto u = UtilityProfile::make({5}, {{5, {{5, 0}}}});
    REQUIRE(u.ok());
    auto r = top_trading_cycles(*u);
    REQUIRE(r.ok());
    CHECK(r->outcome == zero_outcome(shapley_scarf(*u).value.value()));
  }
  SUBCASE("ties are rejected") {
    auto u = UtilityProfile::make(
        {1, 2, 3}, {{1, {{1, 0}, {2, 1}, {3, 1}}},
                    {2, {{1, 1}, {2, 0}, {3, 2}}},
                    {3, {{1, 2}, {2, 1}, {3, 0}}}});
    REQUIRE(u.ok());
    CHECK(!top_trading_cycles(*u).ok());
  }
}

TEST_CASE("random instances are reproducible") {
  auto a = random_ccp(7, 3, 2, {0, 3});
  auto b = random_ccp(7, 3, 2, {0, 3});
  CHECK(a == b);

  bool any_difference = false;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    if (!(random_ccp(seed, 3, 2, {0, 3}) == a)) any_difference = true;
  CHECK(any_difference);

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    int n = static_cast<int>(seed % 4) + 1;
    auto g = random_ccp(seed, n, 2, {0, 3});
    CHECK(g.n() == n);
    for (Mask m : g.listed_masks()) CHECK(!g.feasible(m).empty());
  }
  CHECK_THROWS(random_ccp(1, 40, 2, {0, 3}));
}

TEST_SUITE_END();
