#include "ccl/stability.hpp"

#include <algorithm>

namespace ccl {

namespace {

Money payoff_of(const Ccp& g, const Outcome& o, Agent a) {
  return o.payoff[g.pos(a)];
}

}  // namespace

std::optional<BlockWitness> blocks(const Ccp& g, const Coalition& s, const Outcome& o) {
  for (const auto& x : g.feasible(s)) {
    bool all_strict = true;
    for (size_t i = 0; i < s.members.size() && all_strict; ++i)
      all_strict = x.amounts[i] > payoff_of(g, o, s.members[i]);
    if (all_strict) return BlockWitness{s, x, BlockKind::Strong, s};
  }
  return std::nullopt;
}

std::optional<BlockWitness> weakly_blocks(const Ccp& g, const Coalition& t, const Outcome& o) {
  for (const auto& x : g.feasible(t)) {
    bool no_loss = true;
    Coalition active;
    for (size_t i = 0; i < t.members.size() && no_loss; ++i) {
      Money cur = payoff_of(g, o, t.members[i]);
      if (x.amounts[i] < cur)
        no_loss = false;
      else if (x.amounts[i] > cur)
        active.members.push_back(t.members[i]);
    }
    if (no_loss && !active.members.empty())
      return BlockWitness{t, x, BlockKind::Weak, active};
  }
  return std::nullopt;
}

std::optional<BlockWitness> find_block(const Ccp& g, const Outcome& o) {
  for (const auto& s : subsets(Coalition{g.agents()}))
    if (auto w = blocks(g, s, o)) return w;
  return std::nullopt;
}

std::optional<BlockWitness> find_weak_block(const Ccp& g, const Outcome& o) {
  for (const auto& t : subsets(Coalition{g.agents()}))
    if (auto w = weakly_blocks(g, t, o)) return w;
  return std::nullopt;
}

std::vector<Outcome> core(const Ccp& g, int size_guard) {
  std::vector<Outcome> out;
  for_each_outcome(g, [&](const Outcome& o) {
    if (!find_block(g, o)) out.push_back(o);
  }, size_guard);
  return out;
}

std::vector<Outcome> strict_core(const Ccp& g, int size_guard) {
  std::vector<Outcome> out;
  for_each_outcome(g, [&](const Outcome& o) {
    if (!find_weak_block(g, o)) out.push_back(o);
  }, size_guard);
  return out;
}

bool pareto_optimal(const Ccp& g, const Outcome& o, ParetoMode mode, int size_guard) {
  if (mode == ParetoMode::Literal)
    return !weakly_blocks(g, Coalition{g.agents()}, o).has_value();
  bool dominated = false;
  for_each_outcome(g, [&](const Outcome& other) {
    if (dominated) return;
    bool ge = true, strict = false;
    for (int i = 0; i < g.n() && ge; ++i) {
      if (other.payoff[i] < o.payoff[i]) ge = false;
      if (other.payoff[i] > o.payoff[i]) strict = true;
    }
    dominated = ge && strict;
  }, size_guard);
  return !dominated;
}

bool weakly_pareto_optimal(const Ccp& g, const Outcome& o, ParetoMode mode, int size_guard) {
  if (mode == ParetoMode::Literal)
    return !blocks(g, Coalition{g.agents()}, o).has_value();
  bool dominated = false;
  for_each_outcome(g, [&](const Outcome& other) {
    if (dominated) return;
    bool all_strict = true;
    for (int i = 0; i < g.n() && all_strict; ++i)
      all_strict = other.payoff[i] > o.payoff[i];
    dominated = all_strict;
  }, size_guard);
  return !dominated;
}

std::vector<Outcome> pareto_set(const Ccp& g, ParetoMode mode, int size_guard) {
  std::vector<Outcome> out;
  for_each_outcome(g, [&](const Outcome& o) {
    if (pareto_optimal(g, o, mode, size_guard)) out.push_back(o);
  }, size_guard);
  return out;
}

std::optional<UnilateralBlockWitness> unilateral_blocks(const Ccp& g, Agent a,
                                                        const Outcome& o,
                                                        DeviationVariant variant) {
  for (const auto& t : o.structure.blocks) {
    if (variant == DeviationVariant::StrictJoin && t.contains(a)) continue;
    // Candidate deviating sets: subsets of T plus the deviator.
    Coalition ground = t;
    if (!t.contains(a)) {
      ground.members.push_back(a);
      std::sort(ground.members.begin(), ground.members.end());
    }
    for (const auto& s : subsets(ground)) {
      if (variant == DeviationVariant::StrictJoin &&
          (!s.contains(a) || s.size() < 2))
        continue;
      if (auto w = blocks(g, s, o))
        return UnilateralBlockWitness{a, t, s, w->vector};
    }
  }
  return std::nullopt;
}

std::vector<Outcome> individually_stable_set(const Ccp& g, DeviationVariant variant,
                                             int size_guard) {
  std::vector<Outcome> out;
  for_each_outcome(g, [&](const Outcome& o) {
    for (Agent a : g.agents())
      if (unilateral_blocks(g, a, o, variant)) return;
    out.push_back(o);
  }, size_guard);
  return out;
}

}  // namespace ccl
