#pragma once

#include "ccl/model.hpp"

#include <cstdint>
#include <functional>

namespace ccl {

// Full utility table u[a][b] = value of b's object (or company) to a, with
// u[a][a] pinned to 0.
class UtilityProfile {
 public:
  static Validated<UtilityProfile> make(
      const std::vector<Agent>& agents,
      const std::map<Agent, std::map<Agent, Money>>& u);

  const std::vector<Agent>& agents() const { return agents_; }
  int n() const { return static_cast<int>(agents_.size()); }
  Money value(Agent a, Agent b) const;

  // Strict preferences: u[a][.] injective over all agents, for every a.
  bool strict() const;

  UtilityProfile with_forced(const std::function<std::optional<Money>(Agent, Agent)>&) const;

 private:
  std::vector<Agent> agents_;
  std::vector<std::vector<Money>> u_;  // by positions
};

// Payoff vectors induced by the full cycles of a coalition: member a receives
// u[a][cycle(a)]. Pairs give the swap, singletons give {0}.
std::vector<PayoffVector> cycle_payoffs(const UtilityProfile& u, const Coalition& s);

// Chooses, for each non-singleton coalition, a nonempty subset of its
// candidate vectors (the cycle payoffs plus the all -1 sentinel, in that
// order). Returning an empty list is a validation error.
using Selection = std::function<std::vector<PayoffVector>(
    const Coalition&, const std::vector<PayoffVector>& candidates)>;

Validated<Ccp> generalized_matching(const UtilityProfile& u, const Selection& pick,
                                    int size_guard = kDefaultSizeGuard);

// Housing market: every coalition trades along full cycles.
Validated<Ccp> shapley_scarf(const UtilityProfile& u, int size_guard = kDefaultSizeGuard);

// Pairwise matching: coalitions of three or more get only the sentinel.
Validated<Ccp> roommate(const UtilityProfile& u, int size_guard = kDefaultSizeGuard);

// Two-sided pairwise matching: same-sex utilities forced to -1, so those
// pairs can never block and never appear in an outcome.
Validated<Ccp> marriage(const std::vector<Agent>& men, const std::vector<Agent>& women,
                        const std::map<Agent, std::map<Agent, Money>>& u,
                        int size_guard = kDefaultSizeGuard);

// Cycles for coalitions of up to three agents, sentinel above that.
Validated<Ccp> man_woman_child(const UtilityProfile& u, int size_guard = kDefaultSizeGuard);

// Named instances used throughout the tests: "example1" and "example2" are
// 4- and 3-agent pairwise matching problems, "gstar" extends the example1
// utilities with three-agent trading cycles. Throws std::invalid_argument on
// unknown names.
Ccp builtin(const std::string& name);
UtilityProfile builtin_utilities(const std::string& name);
std::vector<std::string> builtin_names();

struct SuperAdditivityCounterexample {
  Coalition s, t;
  PayoffVector x, y;   // x in F(s), y in F(t)
  PayoffVector z;      // their concatenation, missing from F(s union t)
};

struct SuperAdditivityReport {
  bool super_additive = false;
  std::optional<SuperAdditivityCounterexample> counterexample;
};

// Checks F(S) x F(T) concatenations for all disjoint S, T; first failure in
// (S mask, T mask, vector index) order is reported.
SuperAdditivityReport is_super_additive(const Ccp& g);

struct TtcRound {
  Coalition cycle;                  // members of the extracted cycle
  std::vector<Agent> pointed_to;   // image, aligned with cycle.members
};

struct TtcResult {
  Outcome outcome;          // outcome of shapley_scarf(u)
  std::vector<TtcRound> rounds;
};

// Top trading cycles under strict preferences; the cycle reached from the
// lowest remaining agent id is executed first. Error on ties.
Validated<TtcResult> top_trading_cycles(const UtilityProfile& u,
                                        int size_guard = kDefaultSizeGuard);

// Seeded random problem on agents 1..n: every non-singleton coalition gets
// one to max_vectors vectors with entries drawn uniformly from value_range,
// plus the sentinel on a coin flip. Identical seeds give identical problems
// on every platform.
Ccp random_ccp(std::uint64_t seed, int n_agents, int max_vectors,
               std::pair<int, int> value_range, int size_guard = kDefaultSizeGuard);

}  // namespace ccl
