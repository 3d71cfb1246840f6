#include "ccl/instances.hpp"

#include "ccl/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace ccl {

Validated<UtilityProfile> UtilityProfile::make(
    const std::vector<Agent>& agents,
    const std::map<Agent, std::map<Agent, Money>>& u) {
  Validated<UtilityProfile> out;
  auto err = [&out](const std::string& e) { out.errors.push_back(e); };

  if (agents.empty()) err("utilities: no agents");
  for (size_t i = 1; i < agents.size(); ++i)
    if (agents[i - 1] >= agents[i]) {
      err("utilities: agent ids must be strictly ascending");
      break;
    }
  if (!out.errors.empty()) return out;

  UtilityProfile p;
  p.agents_ = agents;
  int n = p.n();
  p.u_.assign(n, std::vector<Money>(n, Money(0)));
  auto pos = [&agents](Agent a) {
    auto it = std::lower_bound(agents.begin(), agents.end(), a);
    return (it != agents.end() && *it == a) ? static_cast<int>(it - agents.begin()) : -1;
  };

  for (const auto& [a, row] : u) {
    if (pos(a) < 0) {
      err("utilities: unknown agent " + std::to_string(a));
      continue;
    }
    for (const auto& [b, m] : row) {
      if (pos(b) < 0) {
        err("utilities: unknown agent " + std::to_string(b) + " in row " + std::to_string(a));
        continue;
      }
      if (a == b && !m.is_zero()) {
        err("utilities: nonzero diagonal at agent " + std::to_string(a));
        continue;
      }
      p.u_[pos(a)][pos(b)] = m;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      auto ra = u.find(agents[i]);
      if (ra == u.end() || !ra->second.count(agents[j]))
        err("utilities: missing entry u[" + std::to_string(agents[i]) + "][" +
            std::to_string(agents[j]) + "]");
    }
  if (!out.errors.empty()) return out;
  out.value = std::move(p);
  return out;
}

Money UtilityProfile::value(Agent a, Agent b) const {
  auto pos = [this](Agent x) {
    auto it = std::lower_bound(agents_.begin(), agents_.end(), x);
    if (it == agents_.end() || *it != x)
      throw std::logic_error("utility lookup for unknown agent");
    return static_cast<int>(it - agents_.begin());
  };
  return u_[pos(a)][pos(b)];
}

bool UtilityProfile::strict() const {
  for (int i = 0; i < n(); ++i) {
    std::vector<Money> row = u_[i];
    std::sort(row.begin(), row.end());
    for (size_t j = 1; j < row.size(); ++j)
      if (row[j - 1] == row[j]) return false;
  }
  return true;
}

UtilityProfile UtilityProfile::with_forced(
    const std::function<std::optional<Money>(Agent, Agent)>& f) const {
  UtilityProfile p = *this;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (auto m = f(agents_[i], agents_[j])) p.u_[i][j] = *m;
  return p;
}

std::vector<PayoffVector> cycle_payoffs(const UtilityProfile& u, const Coalition& s) {
  std::vector<PayoffVector> out;
  for (const auto& cyc : full_cycles(s)) {
    PayoffVector v{s, {}};
    v.amounts.reserve(s.members.size());
    for (size_t i = 0; i < s.members.size(); ++i)
      v.amounts.push_back(u.value(s.members[i], cyc.image[i]));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

namespace {

PayoffVector sentinel(const Coalition& c) {
  return PayoffVector{c, std::vector<Money>(c.members.size(), Money(-1))};
}

Validated<Ccp> build_from_selection(const UtilityProfile& u, const Selection& pick,
                                    int size_guard) {
  Validated<Ccp> out;
  RawInstance raw;
  raw.agents = u.agents();
  raw.default_rule = DefaultRule::MinusE;
  if (u.n() > size_guard) {
    out.errors.push_back("generator: " + std::to_string(u.n()) +
                         " agents exceed the size guard of " + std::to_string(size_guard));
    return out;
  }

  Coalition all{u.agents()};
  for (const auto& s : subsets(all)) {
    if (s.size() == 1) continue;
    std::vector<PayoffVector> candidates = cycle_payoffs(u, s);
    candidates.push_back(sentinel(s));
    std::vector<PayoffVector> chosen = pick(s, candidates);
    if (chosen.empty()) {
      out.errors.push_back("selection: empty feasible set for coalition " + to_string(s));
      continue;
    }
    RawCoalitionEntry e;
    e.members = s.members;
    for (auto& v : chosen) e.payoffs.push_back(v.amounts);
    raw.coalitions.push_back(std::move(e));
  }
  if (!out.errors.empty()) return out;
  return Ccp::validate(raw, size_guard);
}

}  // namespace

Validated<Ccp> generalized_matching(const UtilityProfile& u, const Selection& pick,
                                    int size_guard) {
  return build_from_selection(u, pick, size_guard);
}

Validated<Ccp> shapley_scarf(const UtilityProfile& u, int size_guard) {
  return build_from_selection(
      u,
      [](const Coalition&, const std::vector<PayoffVector>& cand) {
        return std::vector<PayoffVector>(cand.begin(), cand.end() - 1);  // drop sentinel
      },
      size_guard);
}

namespace {

Selection cutoff_selection(int max_cycle_size) {
  return [max_cycle_size](const Coalition& s, const std::vector<PayoffVector>& cand) {
    if (s.size() > max_cycle_size) return std::vector<PayoffVector>{cand.back()};
    return std::vector<PayoffVector>(cand.begin(), cand.end() - 1);
  };
}

}  // namespace

Validated<Ccp> roommate(const UtilityProfile& u, int size_guard) {
  return build_from_selection(u, cutoff_selection(2), size_guard);
}

Validated<Ccp> marriage(const std::vector<Agent>& men, const std::vector<Agent>& women,
                        const std::map<Agent, std::map<Agent, Money>>& u,
                        int size_guard) {
  Validated<Ccp> out;
  std::vector<Agent> all = men;
  all.insert(all.end(), women.begin(), women.end());
  std::sort(all.begin(), all.end());
  for (size_t i = 1; i < all.size(); ++i)
    if (all[i - 1] == all[i]) {
      out.errors.push_back("marriage: agent " + std::to_string(all[i]) +
                           " is listed on both sides");
      return out;
    }
  auto side = [&men](Agent a) {
    return std::find(men.begin(), men.end(), a) != men.end();
  };

  // Fill in forced entries before profile validation so same-sex utilities
  // may be omitted from the input.
  std::map<Agent, std::map<Agent, Money>> filled = u;
  for (Agent a : all)
    for (Agent b : all) {
      if (a == b)
        filled[a][b] = Money(0);
      else if (side(a) == side(b))
        filled[a][b] = Money(-1);
    }
  auto prof = UtilityProfile::make(all, filled);
  if (!prof.ok()) {
    out.errors = prof.errors;
    return out;
  }
  return roommate(*prof, size_guard);
}

Validated<Ccp> man_woman_child(const UtilityProfile& u, int size_guard) {
  return build_from_selection(u, cutoff_selection(3), size_guard);
}

namespace {

std::map<Agent, std::map<Agent, Money>> example1_table() {
  // Four agents with cyclic tastes: everyone ranks agent 4 last, agent 4
  // likes 1 best, agents 1..3 each like their successor best.
  return {
      {1, {{2, 3}, {3, 2}, {4, 1}}},
      {2, {{3, 3}, {1, 2}, {4, 1}}},
      {3, {{1, 3}, {2, 2}, {4, 1}}},
      {4, {{1, 3}, {2, 2}, {3, 1}}},
  };
}

std::map<Agent, std::map<Agent, Money>> example2_table() {
  // Three agents in a cycle; each likes their successor best.
  return {
      {1, {{2, 2}, {3, 1}}},
      {2, {{3, 2}, {1, 1}}},
      {3, {{1, 2}, {2, 1}}},
  };
}

}  // namespace

UtilityProfile builtin_utilities(const std::string& name) {
  if (name == "example1" || name == "gstar")
    return *UtilityProfile::make({1, 2, 3, 4}, example1_table());
  if (name == "example2") return *UtilityProfile::make({1, 2, 3}, example2_table());
  throw std::invalid_argument("unknown builtin: " + name);
}

Ccp builtin(const std::string& name) {
  if (name == "example1") return *roommate(builtin_utilities("example1"));
  if (name == "example2") return *roommate(builtin_utilities("example2"));
  if (name == "gstar") return *man_woman_child(builtin_utilities("gstar"));
  throw std::invalid_argument("unknown builtin: " + name);
}

std::vector<std::string> builtin_names() { return {"example1", "example2", "gstar"}; }

SuperAdditivityReport is_super_additive(const Ccp& g) {
  SuperAdditivityReport rep;
  Mask full = g.full_mask();
  for (Mask s = 1; s <= full && s != 0; ++s) {
    for (Mask t = 1; t <= full && t != 0; ++t) {
      if (s & t) continue;
      Coalition cs = g.coalition_of(s), ct = g.coalition_of(t);
      Coalition cu = g.coalition_of(s | t);
      const auto& fu = g.feasible(s | t);
      for (const auto& x : g.feasible(s)) {
        for (const auto& y : g.feasible(t)) {
          PayoffVector z{cu, {}};
          for (Agent a : cu.members) {
            auto vx = x.amount_for(a);
            z.amounts.push_back(vx ? *vx : *y.amount_for(a));
          }
          if (std::find(fu.begin(), fu.end(), z) == fu.end()) {
            rep.super_additive = false;
            rep.counterexample = SuperAdditivityCounterexample{cs, ct, x, y, z};
            return rep;
          }
        }
      }
    }
  }
  rep.super_additive = true;
  return rep;
}

Validated<TtcResult> top_trading_cycles(const UtilityProfile& u, int size_guard) {
  Validated<TtcResult> out;
  if (u.n() > size_guard) {
    out.errors.push_back("ttc: " + std::to_string(u.n()) +
                         " agents exceed the size guard of " + std::to_string(size_guard));
    return out;
  }
  if (!u.strict()) {
    out.errors.push_back("ttc: preferences are not strict (some row has ties)");
    return out;
  }

  TtcResult res;
  std::vector<Agent> remaining = u.agents();
  std::map<Agent, Money> payoff;
  std::vector<Coalition> blocks;

  while (!remaining.empty()) {
    // Everyone points at the owner of their most-preferred remaining object.
    std::map<Agent, Agent> points;
    for (Agent a : remaining) {
      Agent best = a;
      Money best_v = u.value(a, a);
      for (Agent b : remaining)
        if (u.value(a, b) > best_v) {
          best = b;
          best_v = u.value(a, b);
        }
      points[a] = best;
    }
    // Walk from the lowest remaining id until a repeat: that is a cycle.
    std::vector<Agent> walk;
    std::map<Agent, int> seen;
    Agent cur = remaining.front();
    while (!seen.count(cur)) {
      seen[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      cur = points[cur];
    }
    std::vector<Agent> cyc(walk.begin() + seen[cur], walk.end());

    Coalition block{std::vector<Agent>(cyc.begin(), cyc.end())};
    std::sort(block.members.begin(), block.members.end());
    TtcRound round{block, {}};
    for (Agent a : block.members) round.pointed_to.push_back(points[a]);
    res.rounds.push_back(round);
    for (Agent a : block.members) payoff[a] = u.value(a, points[a]);
    blocks.push_back(block);

    std::vector<Agent> next;
    for (Agent a : remaining)
      if (!block.contains(a)) next.push_back(a);
    remaining = std::move(next);
  }

  auto market = shapley_scarf(u, size_guard);
  if (!market.ok()) {
    out.errors = market.errors;
    return out;
  }
  auto o = validate_outcome(*market, blocks, payoff);
  if (!o.ok()) {
    out.errors = o.errors;
    return out;
  }
  res.outcome = *o;
  out.value = std::move(res);
  return out;
}

Ccp random_ccp(std::uint64_t seed, int n_agents, int max_vectors,
               std::pair<int, int> value_range, int size_guard) {
  if (n_agents < 1 || n_agents > size_guard)
    throw GuardExceeded("random_ccp: agent count outside 1.." + std::to_string(size_guard));
  if (max_vectors < 1) throw std::invalid_argument("random_ccp: max_vectors < 1");
  if (value_range.first < 0 || value_range.second < value_range.first)
    throw std::invalid_argument("random_ccp: bad value range");

  // mt19937_64 output is pinned by the standard; bounded draws use plain
  // modulo so the stream is identical everywhere.
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  RawInstance raw;
  for (int i = 1; i <= n_agents; ++i) raw.agents.push_back(i);
  raw.default_rule = DefaultRule::MinusE;

  Mask full = (Mask{1} << n_agents) - 1;
  for (Mask m = 1; m <= full; ++m) {
    if (std::popcount(m) < 2) continue;
    RawCoalitionEntry e;
    for (int p = 0; p < n_agents; ++p)
      if (m & (Mask{1} << p)) e.members.push_back(p + 1);
    int count = draw(1, max_vectors);
    for (int k = 0; k < count; ++k) {
      std::vector<Money> row;
      for (size_t j = 0; j < e.members.size(); ++j)
        row.push_back(Money(draw(value_range.first, value_range.second)));
      e.payoffs.push_back(std::move(row));
    }
    if (draw(0, 1) == 1)
      e.payoffs.push_back(std::vector<Money>(e.members.size(), Money(-1)));
    raw.coalitions.push_back(std::move(e));
  }
  auto v = Ccp::validate(raw, size_guard);
  if (!v.ok()) throw std::logic_error("random_ccp: generated instance failed validation");
  return *v;
}

}  // namespace ccl
