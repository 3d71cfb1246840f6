#pragma once

#include "ccl/model.hpp"
#include "ccl/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccl {

// An outcome whose block improves strictly on a Pareto optimal base, with the
// credibility clause: no part of the block could break away from it.
struct StrongObjection {
  Outcome base;
  Outcome objecting;
  Coalition block;  // the T, a block of objecting

  friend bool operator==(const StrongObjection&, const StrongObjection&) = default;
};

// An outcome whose block overlaps the objection's block without swallowing
// it, paying every member strictly more than the objection did. The classical
// variant also protects the poached outsiders' original payoffs.
struct CounterObjection {
  Outcome counter;
  Coalition block;  // the U, a block of counter
  bool classical = false;

  friend bool operator==(const CounterObjection&, const CounterObjection&) = default;
};

struct ObjectionCheck {
  bool ok = false;
  std::string reason;  // names the first failed clause; empty when ok
};

// Throws std::invalid_argument when the base outcome is not Pareto optimal
// (outcome-domination reading).
ObjectionCheck is_strong_objection(const Ccp& g, const Outcome& base, const Outcome& objecting,
                                   const Coalition& block, int size_guard = kDefaultSizeGuard);

// All strong objections against the base, outcome-stream then block order.
std::vector<StrongObjection> find_strong_objections(const Ccp& g, const Outcome& base,
                                                    int size_guard = kDefaultSizeGuard);

std::vector<CounterObjection> find_strong_counter_objections(const Ccp& g,
                                                             const StrongObjection& obj,
                                                             bool classical,
                                                             int size_guard = kDefaultSizeGuard);

// Pareto optimal outcomes against which every strong objection admits a
// counter-objection (classical counters when flagged).
std::vector<Outcome> weak_bargaining_set(const Ccp& g, bool classical = false,
                                         int size_guard = kDefaultSizeGuard);

enum class ChainStatus { Ok, Discrepancy };

struct ChainStep {
  Outcome adopted;  // the rebuilt outcome the chain moved to
  Coalition block;  // the objection block fixed by this step

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

// Objection-chain search for a weak-bargaining-set member: repeatedly adopt a
// justified objection, rebuilt so all previously fixed blocks keep their
// payoffs and everyone else drops to singletons. The final outcome is
// verified against weak_bargaining_set; any mismatch between that procedure
// and the definitions is reported as a discrepancy, never patched over.
struct ChainResult {
  ChainStatus status = ChainStatus::Discrepancy;
  std::optional<Outcome> outcome;  // set when Ok
  std::vector<ChainStep> steps;
  std::string note;  // discrepancy detail
};

// Throws std::invalid_argument when start is not Pareto optimal.
ChainResult wb_chain_construct(const Ccp& g, const Outcome& start,
                               int size_guard = kDefaultSizeGuard);

}  // namespace ccl
