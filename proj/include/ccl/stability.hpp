#pragma once

#include "ccl/combinatorics.hpp"
#include "ccl/model.hpp"

#include <optional>

namespace ccl {

enum class BlockKind { Strong, Weak };

// A coalition together with a feasible vector that improves on an outcome.
// Strong: every member gains strictly. Weak: nobody loses and the active
// members gain strictly.
struct BlockWitness {
  Coalition coalition;
  PayoffVector vector;
  BlockKind kind = BlockKind::Strong;
  Coalition active;

  friend bool operator==(const BlockWitness&, const BlockWitness&) = default;
};

std::optional<BlockWitness> blocks(const Ccp& g, const Coalition& s, const Outcome& o);
std::optional<BlockWitness> weakly_blocks(const Ccp& g, const Coalition& t, const Outcome& o);

// First witness over all coalitions, subset-stream then vector-index order.
std::optional<BlockWitness> find_block(const Ccp& g, const Outcome& o);
std::optional<BlockWitness> find_weak_block(const Ccp& g, const Outcome& o);

// Outcomes admitting no (weakly) blocking coalition, in stream order.
std::vector<Outcome> core(const Ccp& g, int size_guard = kDefaultSizeGuard);
std::vector<Outcome> strict_core(const Ccp& g, int size_guard = kDefaultSizeGuard);

// Outcome-domination compares against every other outcome; Literal only asks
// whether the grand coalition (weakly) blocks through F(X). The two disagree
// exactly when F(X) cannot express the improvement.
enum class ParetoMode { OutcomeDomination, Literal };

bool pareto_optimal(const Ccp& g, const Outcome& o,
                    ParetoMode mode = ParetoMode::OutcomeDomination,
                    int size_guard = kDefaultSizeGuard);
bool weakly_pareto_optimal(const Ccp& g, const Outcome& o,
                           ParetoMode mode = ParetoMode::OutcomeDomination,
                           int size_guard = kDefaultSizeGuard);
std::vector<Outcome> pareto_set(const Ccp& g,
                                ParetoMode mode = ParetoMode::OutcomeDomination,
                                int size_guard = kDefaultSizeGuard);

// Literal follows the written quantifier: any nonempty S with S\{a} inside
// some block T. StrictJoin narrows to a genuine join: a outside T, deviating
// set = {a} plus a nonempty part of T.
enum class DeviationVariant { Literal, StrictJoin };

struct UnilateralBlockWitness {
  Agent agent = 0;
  Coalition host;           // the outcome block T
  Coalition deviating_set;  // the S of the definition
  PayoffVector vector;

  friend bool operator==(const UnilateralBlockWitness&, const UnilateralBlockWitness&) = default;
};

std::optional<UnilateralBlockWitness> unilateral_blocks(
    const Ccp& g, Agent a, const Outcome& o,
    DeviationVariant variant = DeviationVariant::Literal);

std::vector<Outcome> individually_stable_set(
    const Ccp& g, DeviationVariant variant = DeviationVariant::Literal,
    int size_guard = kDefaultSizeGuard);

}  // namespace ccl
