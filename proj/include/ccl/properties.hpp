#pragma once

#include "ccl/combinatorics.hpp"
#include "ccl/model.hpp"

#include <map>
#include <optional>

namespace ccl {

// Witness that `top` is a weak top coalition for `scope`: tier-1 members can
// never improve inside the scope, later tiers only by poaching earlier ones.
struct WeakTopCoalitionWitness {
  Coalition scope;
  Coalition top;
  PayoffVector vector;
  OrderedPartition tiers;

  friend bool operator==(const WeakTopCoalitionWitness&, const WeakTopCoalitionWitness&) = default;
};

// Single-tier specialization: no member of `top` can improve at all.
struct TopCoalitionWitness {
  Coalition scope;
  Coalition top;
  PayoffVector vector;

  friend bool operator==(const TopCoalitionWitness&, const TopCoalitionWitness&) = default;
};

// Ranked witness: members cannot improve with outsiders, and any improvement
// through a higher-ranked member is vetoed by someone in the poached set.
struct WeakTopCycleWitness {
  Coalition scope;
  Coalition top;
  PayoffVector vector;
  std::map<Agent, int> rank;  // bijection top -> 1..|top|

  friend bool operator==(const WeakTopCycleWitness&, const WeakTopCycleWitness&) = default;
};

std::optional<WeakTopCoalitionWitness> find_weak_top_coalition(
    const Ccp& g, const Coalition& scope, int size_guard = kDefaultSizeGuard);
std::optional<TopCoalitionWitness> find_top_coalition(
    const Ccp& g, const Coalition& scope, int size_guard = kDefaultSizeGuard);
std::optional<WeakTopCycleWitness> find_weak_top_cycle(
    const Ccp& g, const Coalition& scope, int size_guard = kDefaultSizeGuard);

// Scope-by-scope verdict over every nonempty subset of X, in subset stream
// order. satisfied iff `failing` is empty.
template <typename W>
struct PropertyReport {
  bool satisfied = false;
  std::map<Mask, W> witnesses;
  std::vector<Coalition> failing;
};

PropertyReport<WeakTopCoalitionWitness> satisfies_weak_top_coalition_property(
    const Ccp& g, int size_guard = kDefaultSizeGuard);
PropertyReport<TopCoalitionWitness> satisfies_top_coalition_property(
    const Ccp& g, int size_guard = kDefaultSizeGuard);
PropertyReport<WeakTopCycleWitness> satisfies_weak_top_cycle_property(
    const Ccp& g, int size_guard = kDefaultSizeGuard);

// Union under substitutions: each piece donates one of its blocks; the blocks
// must partition the agent set.
Validated<Outcome> combine_outcomes(const Ccp& g,
                                    const std::vector<std::pair<Outcome, Coalition>>& pieces);

enum class ConstructStatus { Ok, PropertyFailed, VerificationFailed };

struct StagePiece {
  Coalition scope;  // remaining agents when this stage ran
  Coalition top;
  PayoffVector vector;

  friend bool operator==(const StagePiece&, const StagePiece&) = default;
};

struct Construction {
  ConstructStatus status = ConstructStatus::PropertyFailed;
  std::optional<Outcome> outcome;        // set when status == Ok
  std::optional<Coalition> failed_scope; // set when status == PropertyFailed
  std::vector<StagePiece> stages;
};

// Staged extraction: fix a witness's top coalition, drop it from the scope,
// repeat, then splice the fixed blocks into one outcome. The core and IS
// variants take the first witness at every stage; the strict-core variant
// backtracks across stage witnesses until the combined outcome survives its
// verification, since a greedy pick can strand later scopes.
Construction construct_core_outcome(const Ccp& g, int size_guard = kDefaultSizeGuard);
Construction construct_strict_core_outcome(const Ccp& g, int size_guard = kDefaultSizeGuard);
Construction construct_is_outcome(const Ccp& g, int size_guard = kDefaultSizeGuard);

}  // namespace ccl
