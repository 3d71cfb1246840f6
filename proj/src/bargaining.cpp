#include "ccl/bargaining.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ccl {

namespace {

bool strictly_better_on(const Ccp& g, const Outcome& better, const Outcome& than,
                        const Coalition& members) {
  return std::all_of(members.members.begin(), members.members.end(), [&](Agent a) {
    return better.payoff[g.pos(a)] > than.payoff[g.pos(a)];
  });
}

// Objection clauses 2 and 3 (clause 1, block ∈ structure, is the caller's
// lookup loop). Returns the first failed clause.
std::string objection_defect(const Ccp& g, const Outcome& base, const Outcome& objecting,
                             const Coalition& block) {
  if (!strictly_better_on(g, objecting, base, block))
    return "no strict gain for every member of the block";
  for (const auto& s : subsets(block))
    if (blocks(g, s, objecting))
      return "subset " + to_string(s) + " blocks the objecting outcome";
  return {};
}

struct Overlap {
  Coalition u_minus_t, t_minus_u, both;
};

Overlap split(const Coalition& u, const Coalition& t) {
  Overlap o;
  for (Agent a : u.members) (t.contains(a) ? o.both : o.u_minus_t).members.push_back(a);
  for (Agent a : t.members)
    if (!u.contains(a)) o.t_minus_u.members.push_back(a);
  return o;
}

bool is_counter(const Ccp& g, const StrongObjection& obj, const Outcome& counter,
                const Coalition& u, bool classical) {
  auto ov = split(u, obj.block);
  if (ov.u_minus_t.members.empty() || ov.t_minus_u.members.empty() || ov.both.members.empty())
    return false;
  if (!strictly_better_on(g, counter, obj.objecting, u)) return false;
  if (classical)
    for (Agent a : ov.u_minus_t.members)
      if (counter.payoff[g.pos(a)] < obj.base.payoff[g.pos(a)]) return false;
  return true;
}

bool admits_counter(const Ccp& g, const StrongObjection& obj, bool classical, int size_guard) {
  bool found = false;
  for_each_outcome(g, [&](const Outcome& o) {
    if (found) return;
    for (const auto& u : o.structure.blocks)
      if (is_counter(g, obj, o, u, classical)) {
        found = true;
        return;
      }
  }, size_guard);
  return found;
}

// Objections against `base` in stream order; stops early when `visit` returns
// false. Does not require base to be Pareto optimal: the chain procedure
// walks through intermediate outcomes whose optimality is only settled by the
// final verification.
void scan_objections(const Ccp& g, const Outcome& base, int size_guard,
                     const std::function<bool(const StrongObjection&)>& visit) {
  bool stop = false;
  for_each_outcome(g, [&](const Outcome& o) {
    if (stop) return;
    for (const auto& t : o.structure.blocks) {
      if (!objection_defect(g, base, o, t).empty()) continue;
      if (!visit(StrongObjection{base, o, t})) {
        stop = true;
        return;
      }
    }
  }, size_guard);
}

}  // namespace

ObjectionCheck is_strong_objection(const Ccp& g, const Outcome& base, const Outcome& objecting,
                                   const Coalition& block, int size_guard) {
  if (!pareto_optimal(g, base, ParetoMode::OutcomeDomination, size_guard))
    throw std::invalid_argument("objection base must be Pareto optimal");
  ObjectionCheck out;
  if (std::count(objecting.structure.blocks.begin(), objecting.structure.blocks.end(), block) ==
      0) {
    out.reason = "the block is not part of the objecting structure";
    return out;
  }
  out.reason = objection_defect(g, base, objecting, block);
  out.ok = out.reason.empty();
  return out;
}

std::vector<StrongObjection> find_strong_objections(const Ccp& g, const Outcome& base,
                                                    int size_guard) {
  if (!pareto_optimal(g, base, ParetoMode::OutcomeDomination, size_guard))
    throw std::invalid_argument("objection base must be Pareto optimal");
  std::vector<StrongObjection> out;
  scan_objections(g, base, size_guard, [&](const StrongObjection& obj) {
    out.push_back(obj);
    return true;
  });
  return out;
}

std::vector<CounterObjection> find_strong_counter_objections(const Ccp& g,
                                                             const StrongObjection& obj,
                                                             bool classical, int size_guard) {
  std::vector<CounterObjection> out;
  for_each_outcome(g, [&](const Outcome& o) {
    for (const auto& u : o.structure.blocks)
      if (is_counter(g, obj, o, u, classical)) out.push_back(CounterObjection{o, u, classical});
  }, size_guard);
  return out;
}

std::vector<Outcome> weak_bargaining_set(const Ccp& g, bool classical, int size_guard) {
  std::vector<Outcome> out;
  for (const auto& base : pareto_set(g, ParetoMode::OutcomeDomination, size_guard)) {
    bool justified = false;
    scan_objections(g, base, size_guard, [&](const StrongObjection& obj) {
      if (!admits_counter(g, obj, classical, size_guard)) {
        justified = true;
        return false;
      }
      return true;
    });
    if (!justified) out.push_back(base);
  }
  return out;
}

ChainResult wb_chain_construct(const Ccp& g, const Outcome& start, int size_guard) {
  if (!pareto_optimal(g, start, ParetoMode::OutcomeDomination, size_guard))
    throw std::invalid_argument("chain start must be Pareto optimal");

  ChainResult res;
  Outcome current = start;
  std::vector<Coalition> fixed;
  std::set<Agent> taken;

  for (int round = 0; round <= g.n(); ++round) {
    std::vector<StrongObjection> justified;
    scan_objections(g, current, size_guard, [&](const StrongObjection& obj) {
      if (!admits_counter(g, obj, false, size_guard)) justified.push_back(obj);
      return true;
    });

    if (justified.empty()) {
      auto wb = weak_bargaining_set(g, false, size_guard);
      if (std::count(wb.begin(), wb.end(), current) == 1) {
        res.status = ChainStatus::Ok;
        res.outcome = current;
      } else {
        res.note = "chain stalled at an outcome outside the weak bargaining set";
      }
      return res;
    }

    bool adopted = false;
    for (const auto& obj : justified) {
      if (std::any_of(obj.block.members.begin(), obj.block.members.end(),
                      [&](Agent a) { return taken.count(a) > 0; }))
        continue;  // the proof's disjointness claim failed for this candidate

      std::vector<Coalition> blocks_v = fixed;
      blocks_v.push_back(obj.block);
      std::map<Agent, Money> pay;
      for (const auto& b : fixed)
        for (Agent a : b.members) pay[a] = current.payoff[g.pos(a)];
      for (Agent a : obj.block.members) pay[a] = obj.objecting.payoff[g.pos(a)];
      for (Agent a : g.agents())
        if (!pay.count(a)) {
          blocks_v.push_back(Coalition{a});
          pay[a] = Money(0);
        }
      auto rebuilt = validate_outcome(g, blocks_v, pay);
      if (!rebuilt.ok() || !objection_defect(g, current, *rebuilt, obj.block).empty())
        continue;  // rebuilding broke an objection clause: try the next one

      res.steps.push_back(ChainStep{*rebuilt, obj.block});
      fixed.push_back(obj.block);
      for (Agent a : obj.block.members) taken.insert(a);
      current = *rebuilt;
      adopted = true;
      break;
    }
    if (!adopted) {
      res.note = "no justified objection could be adopted around the fixed blocks";
      return res;
    }
  }
  res.note = "chain failed to settle within the agent count";
  return res;
}

}  // namespace ccl
