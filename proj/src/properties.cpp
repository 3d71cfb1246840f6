#include "ccl/properties.hpp"

#include "ccl/stability.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ccl {

namespace {

void check_scope_guard(const Ccp& g, const Coalition& scope, int size_guard) {
  if (size_guard < 1 || size_guard > kSizeGuardCeiling)
    throw GuardExceeded("property search: size guard " + std::to_string(size_guard) +
                        " outside 1.." + std::to_string(kSizeGuardCeiling));
  if (static_cast<int>(scope.size()) > size_guard ||
      g.n() > kSizeGuardCeiling)
    throw GuardExceeded("property search: scope of " + std::to_string(scope.size()) +
                        " agents exceeds the size guard " + std::to_string(size_guard));
}

Mask scope_mask_of(const Ccp& g, const Coalition& scope) {
  auto m = g.mask_of(scope);
  if (!m) throw std::invalid_argument("scope contains agents outside the instance");
  return *m;
}

// Per-agent maximum of x(a) over F(L), for every L inside the scope.
std::map<Mask, std::map<Agent, Money>> best_table(const Ccp& g, Mask scope_mask) {
  std::map<Mask, std::map<Agent, Money>> best;
  for_each_submask(scope_mask, [&](Mask l) {
    auto& slot = best[l];
    for (const auto& x : g.feasible(l))
      for (size_t i = 0; i < x.coalition.members.size(); ++i) {
        Agent a = x.coalition.members[i];
        auto it = slot.find(a);
        if (it == slot.end() || it->second < x.amounts[i]) slot[a] = x.amounts[i];
      }
  });
  return best;
}

bool nonneg(const PayoffVector& x) {
  return std::none_of(x.amounts.begin(), x.amounts.end(),
                      [](const Money& m) { return m.is_negative(); });
}

// Masks L within the scope through which the agent can beat the threshold.
std::vector<Mask> gain_masks(const Ccp& g,
                             const std::map<Mask, std::map<Agent, Money>>& best,
                             Mask scope_mask, Agent a, const Money& threshold) {
  std::vector<Mask> out;
  Mask bit = Mask{1} << g.pos(a);
  for (const auto& [l, slot] : best) {
    if (!(l & bit)) continue;
    auto it = slot.find(a);
    if (it != slot.end() && it->second > threshold) out.push_back(l);
  }
  (void)scope_mask;
  return out;
}

// Checks one tiering against the members' gain masks: tier-1 must have none,
// later tiers may only gain through earlier tiers.
bool tiers_valid(const Ccp& g, const OrderedPartition& tiers,
                 const std::vector<std::vector<Mask>>& gains,
                 const Coalition& top) {
  auto index_in_top = [&top](Agent a) {
    return static_cast<size_t>(
        std::lower_bound(top.members.begin(), top.members.end(), a) - top.members.begin());
  };
  Mask prefix = 0;
  for (size_t t = 0; t < tiers.size(); ++t) {
    for (Agent a : tiers[t].members) {
      const auto& ls = gains[index_in_top(a)];
      if (t == 0) {
        if (!ls.empty()) return false;
      } else {
        for (Mask l : ls)
          if (!(l & prefix)) return false;  // a is never in prefix, so l∩prefix = T∩prefix
      }
    }
    prefix |= *g.mask_of(tiers[t]);
  }
  return true;
}

Coalition subtract(const Coalition& from, const Coalition& minus) {
  Coalition out;
  for (Agent a : from.members)
    if (!minus.contains(a)) out.members.push_back(a);
  return out;
}

Outcome stage_outcome(const Ccp& g, const Coalition& top, const PayoffVector& x) {
  std::vector<Coalition> blocks{top};
  std::map<Agent, Money> pay;
  for (size_t i = 0; i < top.members.size(); ++i) pay[top.members[i]] = x.amounts[i];
  for (Agent a : g.agents())
    if (!top.contains(a)) {
      blocks.push_back(Coalition{a});
      pay[a] = Money(0);
    }
  auto v = validate_outcome(g, blocks, pay);
  if (!v.ok())
    throw std::logic_error("witness vector did not extend to an outcome");
  return *v;
}

}  // namespace

std::optional<WeakTopCoalitionWitness> find_weak_top_coalition(const Ccp& g,
                                                               const Coalition& scope,
                                                               int size_guard) {
  check_scope_guard(g, scope, size_guard);
  Mask scope_mask = scope_mask_of(g, scope);
  auto best = best_table(g, scope_mask);

  for (const auto& s : subsets(scope)) {
    for (const auto& x : g.feasible(s)) {
      if (!nonneg(x)) continue;
      std::vector<std::vector<Mask>> gains;
      gains.reserve(s.members.size());
      for (size_t i = 0; i < s.members.size(); ++i)
        gains.push_back(gain_masks(g, best, scope_mask, s.members[i], x.amounts[i]));

      std::optional<WeakTopCoalitionWitness> found;
      for_each_ordered_partition(s, [&](const OrderedPartition& tiers) {
        if (!tiers_valid(g, tiers, gains, s)) return true;
        found = WeakTopCoalitionWitness{scope, s, x, tiers};
        return false;
      }, size_guard);
      if (found) return found;
    }
  }
  return std::nullopt;
}

std::optional<TopCoalitionWitness> find_top_coalition(const Ccp& g, const Coalition& scope,
                                                      int size_guard) {
  check_scope_guard(g, scope, size_guard);
  Mask scope_mask = scope_mask_of(g, scope);
  auto best = best_table(g, scope_mask);

  for (const auto& s : subsets(scope))
    for (const auto& x : g.feasible(s)) {
      if (!nonneg(x)) continue;
      bool ok = true;
      for (size_t i = 0; i < s.members.size() && ok; ++i)
        ok = gain_masks(g, best, scope_mask, s.members[i], x.amounts[i]).empty();
      if (ok) return TopCoalitionWitness{scope, s, x};
    }
  return std::nullopt;
}

std::optional<WeakTopCycleWitness> find_weak_top_cycle(const Ccp& g, const Coalition& scope,
                                                       int size_guard) {
  check_scope_guard(g, scope, size_guard);
  Mask scope_mask = scope_mask_of(g, scope);
  auto best = best_table(g, scope_mask);

  for (const auto& s : subsets(scope)) {
    Mask s_mask = *g.mask_of(s);
    auto index_in = [&s](Agent a) {
      return static_cast<size_t>(
          std::lower_bound(s.members.begin(), s.members.end(), a) - s.members.begin());
    };
    for (const auto& x : g.feasible(s)) {
      if (!nonneg(x)) continue;

      // Condition (2): no gains through outsiders only.
      bool ok = true;
      for (size_t i = 0; i < s.members.size() && ok; ++i) {
        Agent a = s.members[i];
        Mask bit = Mask{1} << g.pos(a);
        for (const auto& [l, slot] : best) {
          if ((l & s_mask) != bit || l == bit) continue;  // need a alone from s, T nonempty
          auto it = slot.find(a);
          if (it != slot.end() && it->second > x.amounts[i]) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;

      // Condition (3): collect "a must outrank all of B" constraints from
      // unvetoed gains through coalitions that poach members of s.
      auto v_ext = [&](Agent c) {
        return (Mask{1} << g.pos(c)) & s_mask ? x.amounts[index_in(c)] : Money(0);
      };
      std::set<std::pair<size_t, Mask>> constraints;  // (gainer index, B mask over g)
      for (size_t i = 0; i < s.members.size(); ++i) {
        Agent a = s.members[i];
        Mask bit = Mask{1} << g.pos(a);
        for_each_submask(scope_mask & ~bit, [&](Mask t) {
          if (!(t & s_mask)) return;  // outsider-only T handled by condition (2)
          Mask l = t | bit;
          for (const auto& xp : g.feasible(l)) {
            if (!(*xp.amount_for(a) > x.amounts[i])) continue;
            bool vetoed = false;
            for (Agent c : g.coalition_of(t).members)
              if (v_ext(c) >= *xp.amount_for(c)) {
                vetoed = true;
                break;
              }
            if (!vetoed) constraints.insert({i, t & s_mask});
          }
        });
      }

      // Find the lexicographically first ranking obeying the constraints.
      int sz = static_cast<int>(s.members.size());
      std::vector<int> rank(sz);
      for (int i = 0; i < sz; ++i) rank[i] = i + 1;
      do {
        bool valid = true;
        for (const auto& [i, bmask] : constraints) {
          for (Agent b : g.coalition_of(bmask).members)
            if (rank[i] <= rank[index_in(b)]) {
              valid = false;
              break;
            }
          if (!valid) break;
        }
        if (valid) {
          WeakTopCycleWitness w{scope, s, x, {}};
          for (int i = 0; i < sz; ++i) w.rank[s.members[i]] = rank[i];
          return w;
        }
      } while (std::next_permutation(rank.begin(), rank.end()));
    }
  }
  return std::nullopt;
}

namespace {

template <typename W, typename Find>
PropertyReport<W> scan_scopes(const Ccp& g, Find find) {
  PropertyReport<W> report;
  for (const auto& scope : subsets(Coalition{g.agents()})) {
    if (auto w = find(scope))
      report.witnesses.emplace(*g.mask_of(scope), *w);
    else
      report.failing.push_back(scope);
  }
  report.satisfied = report.failing.empty();
  return report;
}

}  // namespace

PropertyReport<WeakTopCoalitionWitness> satisfies_weak_top_coalition_property(const Ccp& g,
                                                                              int size_guard) {
  return scan_scopes<WeakTopCoalitionWitness>(g, [&](const Coalition& scope) {
    return find_weak_top_coalition(g, scope, size_guard);
  });
}

PropertyReport<TopCoalitionWitness> satisfies_top_coalition_property(const Ccp& g,
                                                                     int size_guard) {
  return scan_scopes<TopCoalitionWitness>(g, [&](const Coalition& scope) {
    return find_top_coalition(g, scope, size_guard);
  });
}

PropertyReport<WeakTopCycleWitness> satisfies_weak_top_cycle_property(const Ccp& g,
                                                                      int size_guard) {
  return scan_scopes<WeakTopCycleWitness>(g, [&](const Coalition& scope) {
    return find_weak_top_cycle(g, scope, size_guard);
  });
}

Validated<Outcome> combine_outcomes(const Ccp& g,
                                    const std::vector<std::pair<Outcome, Coalition>>& pieces) {
  Validated<Outcome> out;
  std::vector<Coalition> blocks;
  std::map<Agent, Money> pay;
  std::set<Agent> seen;
  for (const auto& [o, block] : pieces) {
    if (std::count(o.structure.blocks.begin(), o.structure.blocks.end(), block) == 0)
      out.errors.push_back("combine: " + to_string(block) +
                           " is not a block of its donor outcome");
    for (Agent a : block.members) {
      if (!seen.insert(a).second)
        out.errors.push_back("combine: agent " + std::to_string(a) +
                             " appears in two selected blocks");
      if (g.pos(a) >= 0) pay[a] = o.payoff[g.pos(a)];
    }
    blocks.push_back(block);
  }
  for (Agent a : g.agents())
    if (!seen.count(a))
      out.errors.push_back("combine: agent " + std::to_string(a) + " is uncovered");
  if (!out.errors.empty()) return out;
  return validate_outcome(g, blocks, pay);
}

namespace {

template <typename FindWitness, typename Verify>
Construction construct_greedy(const Ccp& g, int size_guard, FindWitness find, Verify verify) {
  Construction c;
  Coalition remaining{g.agents()};
  std::vector<std::pair<Outcome, Coalition>> pieces;
  while (!remaining.members.empty()) {
    auto w = find(remaining);
    if (!w) {
      c.status = ConstructStatus::PropertyFailed;
      c.failed_scope = remaining;
      return c;
    }
    c.stages.push_back({remaining, w->top, w->vector});
    pieces.emplace_back(stage_outcome(g, w->top, w->vector), w->top);
    remaining = subtract(remaining, w->top);
  }
  auto combined = combine_outcomes(g, pieces);
  if (!combined.ok() || !verify(*combined)) {
    c.status = ConstructStatus::VerificationFailed;
    return c;
  }
  c.status = ConstructStatus::Ok;
  c.outcome = *combined;
  (void)size_guard;
  return c;
}

std::vector<TopCoalitionWitness> all_top_witnesses(const Ccp& g, const Coalition& scope,
                                                   int size_guard) {
  check_scope_guard(g, scope, size_guard);
  Mask scope_mask = scope_mask_of(g, scope);
  auto best = best_table(g, scope_mask);
  std::vector<TopCoalitionWitness> out;
  for (const auto& s : subsets(scope))
    for (const auto& x : g.feasible(s)) {
      if (!nonneg(x)) continue;
      bool ok = true;
      for (size_t i = 0; i < s.members.size() && ok; ++i)
        ok = gain_masks(g, best, scope_mask, s.members[i], x.amounts[i]).empty();
      if (ok) out.push_back(TopCoalitionWitness{scope, s, x});
    }
  return out;
}

}  // namespace

Construction construct_core_outcome(const Ccp& g, int size_guard) {
  return construct_greedy(
      g, size_guard,
      [&](const Coalition& scope) { return find_weak_top_coalition(g, scope, size_guard); },
      [&](const Outcome& o) { return !find_block(g, o).has_value(); });
}

Construction construct_is_outcome(const Ccp& g, int size_guard) {
  return construct_greedy(
      g, size_guard,
      [&](const Coalition& scope) { return find_weak_top_cycle(g, scope, size_guard); },
      [&](const Outcome& o) {
        for (Agent a : g.agents())
          if (unilateral_blocks(g, a, o)) return false;
        return true;
      });
}

Construction construct_strict_core_outcome(const Ccp& g, int size_guard) {
  Construction c;
  std::optional<Coalition> dead_scope;
  std::vector<std::pair<Outcome, Coalition>> pieces;

  std::function<bool(const Coalition&)> dfs = [&](const Coalition& remaining) {
    if (remaining.members.empty()) {
      auto combined = combine_outcomes(g, pieces);
      if (!combined.ok() || find_weak_block(g, *combined)) return false;
      c.outcome = *combined;
      return true;
    }
    auto ws = all_top_witnesses(g, remaining, size_guard);
    if (ws.empty() && !dead_scope) dead_scope = remaining;
    for (const auto& w : ws) {
      c.stages.push_back({remaining, w.top, w.vector});
      pieces.emplace_back(stage_outcome(g, w.top, w.vector), w.top);
      if (dfs(subtract(remaining, w.top))) return true;
      c.stages.pop_back();
      pieces.pop_back();
    }
    return false;
  };

  if (dfs(Coalition{g.agents()})) {
    c.status = ConstructStatus::Ok;
    return c;
  }
  c.stages.clear();
  if (dead_scope) {
    c.status = ConstructStatus::PropertyFailed;
    c.failed_scope = dead_scope;
  } else {
    c.status = ConstructStatus::VerificationFailed;
  }
  return c;
}

}  // namespace ccl
