#pragma once

#include "ccl/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccl {

using Agent = int;
using Mask = std::uint32_t;  // bit i = i-th agent in the problem's sorted order

constexpr int kDefaultSizeGuard = 8;
constexpr int kSizeGuardCeiling = 16;

// Thrown when an enumeration would exceed the configured agent limit.
struct GuardExceeded : std::runtime_error {
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Carries either a value or the full list of validation problems.
template <class T>
struct Validated {
  std::optional<T> value;
  std::vector<std::string> errors;

  bool ok() const { return errors.empty() && value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

// Nonempty set of agents, members strictly ascending.
struct Coalition {
  std::vector<Agent> members;

  Coalition() = default;
  explicit Coalition(std::vector<Agent> m) : members(std::move(m)) {}
  Coalition(std::initializer_list<Agent> m) : members(m) {}

  int size() const { return static_cast<int>(members.size()); }
  bool contains(Agent a) const;
  bool ascending() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition& a, const Coalition& b) {
    return a.members <=> b.members;
  }
};

std::string to_string(const Coalition& c);

// Payoff vector for one coalition; amounts align with coalition.members.
struct PayoffVector {
  Coalition coalition;
  std::vector<Money> amounts;

  std::optional<Money> amount_for(Agent a) const;
  bool nonnegative() const;

  friend bool operator==(const PayoffVector&, const PayoffVector&) = default;
};

enum class DefaultRule { MinusE, Strict };

// One explicitly listed coalition of a raw (not yet validated) instance.
struct RawCoalitionEntry {
  std::vector<Agent> members;
  std::vector<std::vector<Money>> payoffs;
};

struct RawInstance {
  std::vector<Agent> agents;
  std::vector<RawCoalitionEntry> coalitions;
  DefaultRule default_rule = DefaultRule::MinusE;
};

// Validated contract choice problem. Every nonempty coalition has a feasible
// set: singletons are pinned to {0}, unlisted coalitions follow the default
// rule. The full table is materialized at validation time, so lookups are
// cheap and the object is immutable afterwards.
class Ccp {
 public:
  static Validated<Ccp> validate(const RawInstance& raw,
                                 int size_guard = kDefaultSizeGuard);

  const std::vector<Agent>& agents() const { return agents_; }
  int n() const { return static_cast<int>(agents_.size()); }
  DefaultRule default_rule() const { return default_rule_; }

  int pos(Agent a) const;  // -1 when the agent is unknown
  Agent agent_at(int p) const { return agents_[p]; }
  Mask full_mask() const { return n() == 32 ? ~Mask{0} : (Mask{1} << n()) - 1; }
  std::optional<Mask> mask_of(const Coalition& c) const;
  Coalition coalition_of(Mask m) const;

  const std::vector<PayoffVector>& feasible(Mask m) const;
  const std::vector<PayoffVector>& feasible(const Coalition& c) const;
  bool listed(Mask m) const { return listed_.count(m) > 0; }
  std::vector<Mask> listed_masks() const;  // ascending

  friend bool operator==(const Ccp& a, const Ccp& b) {
    return a.agents_ == b.agents_ && a.default_rule_ == b.default_rule_ &&
           a.table_ == b.table_ && a.listed_ == b.listed_;
  }

 private:
  std::vector<Agent> agents_;
  DefaultRule default_rule_ = DefaultRule::MinusE;
  std::map<Mask, std::vector<PayoffVector>> table_;  // complete
  std::set<Mask> listed_;
};

// Partition of the agent set into disjoint blocks, sorted by first member.
struct CoalitionStructure {
  std::vector<Coalition> blocks;

  friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;
  friend auto operator<=>(const CoalitionStructure& a, const CoalitionStructure& b) {
    return a.blocks <=> b.blocks;
  }
};

std::string to_string(const CoalitionStructure& f);

// A coalition structure together with a nonnegative payoff, feasible blockwise.
// Payoffs are stored by agent position of the owning Ccp.
struct Outcome {
  CoalitionStructure structure;
  std::vector<Money> payoff;

  const Money& payoff_at(int pos) const { return payoff[pos]; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend auto operator<=>(const Outcome& a, const Outcome& b) {
    if (auto c = a.structure <=> b.structure; c != 0) return c;
    return a.payoff <=> b.payoff;
  }
};

std::string to_string(const Ccp& g, const Outcome& o);

// Checks partition-ness, payoff totality, nonnegativity and blockwise
// feasibility; reports every violated condition.
Validated<Outcome> validate_outcome(const Ccp& g,
                                    const std::vector<Coalition>& blocks,
                                    const std::map<Agent, Money>& payoff);

// All agents alone at zero; valid for every problem.
Outcome zero_outcome(const Ccp& g);

// Restriction of a total payoff map to a coalition, in member order.
Validated<PayoffVector> restrict(const std::map<Agent, Money>& payoff,
                                 const Coalition& c);

}  // namespace ccl
