#include "ccl/model.hpp"

#include <algorithm>
#include <sstream>

namespace ccl {

bool Coalition::contains(Agent a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

bool Coalition::ascending() const {
  for (size_t i = 1; i < members.size(); ++i)
    if (members[i - 1] >= members[i]) return false;
  return true;
}

std::string to_string(const Coalition& c) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < c.members.size(); ++i)
    os << (i ? "," : "") << c.members[i];
  os << '}';
  return os.str();
}

std::optional<Money> PayoffVector::amount_for(Agent a) const {
  auto it = std::lower_bound(coalition.members.begin(), coalition.members.end(), a);
  if (it == coalition.members.end() || *it != a) return std::nullopt;
  return amounts[it - coalition.members.begin()];
}

bool PayoffVector::nonnegative() const {
  for (const auto& m : amounts)
    if (m.is_negative()) return false;
  return true;
}

std::string to_string(const CoalitionStructure& f) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < f.blocks.size(); ++i)
    os << (i ? "," : "") << to_string(f.blocks[i]);
  os << '}';
  return os.str();
}

std::string to_string(const Ccp& g, const Outcome& o) {
  std::ostringstream os;
  os << '(' << to_string(o.structure) << ", (";
  for (int p = 0; p < g.n(); ++p) os << (p ? "," : "") << o.payoff[p].str();
  os << "))";
  return os.str();
}

int Ccp::pos(Agent a) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), a);
  if (it == agents_.end() || *it != a) return -1;
  return static_cast<int>(it - agents_.begin());
}

std::optional<Mask> Ccp::mask_of(const Coalition& c) const {
  Mask m = 0;
  for (Agent a : c.members) {
    int p = pos(a);
    if (p < 0) return std::nullopt;
    m |= Mask{1} << p;
  }
  return m;
}

Coalition Ccp::coalition_of(Mask m) const {
  Coalition c;
  for (int p = 0; p < n(); ++p)
    if (m & (Mask{1} << p)) c.members.push_back(agents_[p]);
  return c;
}

const std::vector<PayoffVector>& Ccp::feasible(Mask m) const {
  auto it = table_.find(m);
  if (it == table_.end())
    throw std::logic_error("feasible: not a coalition of this problem");
  return it->second;
}

const std::vector<PayoffVector>& Ccp::feasible(const Coalition& c) const {
  auto m = mask_of(c);
  if (!m) throw std::logic_error("feasible: unknown agent in " + to_string(c));
  return feasible(*m);
}

std::vector<Mask> Ccp::listed_masks() const {
  return {listed_.begin(), listed_.end()};
}

namespace {

PayoffVector minus_e(const Coalition& c) {
  PayoffVector v;
  v.coalition = c;
  v.amounts.assign(c.members.size(), Money(-1));
  return v;
}

}  // namespace

Validated<Ccp> Ccp::validate(const RawInstance& raw, int size_guard) {
  Validated<Ccp> out;
  auto err = [&out](const std::string& e) { out.errors.push_back(e); };

  if (size_guard < 1 || size_guard > kSizeGuardCeiling)
    err("size guard must be between 1 and " + std::to_string(kSizeGuardCeiling));
  if (raw.agents.empty()) err("agents: list is empty");
  for (size_t i = 1; i < raw.agents.size(); ++i)
    if (raw.agents[i - 1] >= raw.agents[i]) {
      err("agents: ids must be strictly ascending");
      break;
    }
  for (Agent a : raw.agents)
    if (a < 0) {
      err("agents: ids must be non-negative");
      break;
    }
  if (!out.errors.empty()) return out;
  if (static_cast<int>(raw.agents.size()) > size_guard) {
    err("agents: count " + std::to_string(raw.agents.size()) +
        " exceeds the size guard of " + std::to_string(size_guard));
    return out;
  }

  Ccp g;
  g.agents_ = raw.agents;
  g.default_rule_ = raw.default_rule;

  for (const auto& entry : raw.coalitions) {
    Coalition c(entry.members);
    std::string tag = "coalition " + to_string(c);
    if (c.members.empty()) {
      err("coalition {}: empty member list");
      continue;
    }
    if (!c.ascending()) {
      err(tag + ": members must be strictly ascending");
      continue;
    }
    auto m = g.mask_of(c);
    if (!m) {
      err(tag + ": unknown agent id");
      continue;
    }
    if (g.table_.count(*m)) {
      err(tag + ": duplicate entry");
      continue;
    }
    if (entry.payoffs.empty()) {
      err(tag + ": empty payoff set");
      continue;
    }
    std::vector<PayoffVector> vecs;
    bool bad = false;
    for (const auto& row : entry.payoffs) {
      if (row.size() != entry.members.size()) {
        err(tag + ": payoff vector of wrong arity");
        bad = true;
        break;
      }
      PayoffVector v{c, row};
      if (std::find(vecs.begin(), vecs.end(), v) == vecs.end())
        vecs.push_back(std::move(v));  // set semantics: exact duplicates collapse
    }
    if (bad) continue;
    if (c.size() == 1 &&
        !(vecs.size() == 1 && vecs[0].amounts[0] == Money(0))) {
      err(tag + ": singleton payoff set must be exactly [[0]]");
      continue;
    }
    g.table_.emplace(*m, std::move(vecs));
    g.listed_.insert(*m);
  }
  if (!out.errors.empty()) return out;

  // Materialize the rest of the table.
  Mask full = g.full_mask();
  for (Mask m = 1; m <= full && m != 0; ++m) {
    if (g.table_.count(m)) continue;
    Coalition c = g.coalition_of(m);
    if (c.size() == 1) {
      g.table_.emplace(m, std::vector<PayoffVector>{PayoffVector{c, {Money(0)}}});
    } else if (g.default_rule_ == DefaultRule::Strict) {
      err("coalition " + to_string(c) + ": missing (default rule is strict)");
    } else {
      g.table_.emplace(m, std::vector<PayoffVector>{minus_e(c)});
    }
  }
  if (!out.errors.empty()) return out;

  out.value = std::move(g);
  return out;
}

Validated<Outcome> validate_outcome(const Ccp& g,
                                    const std::vector<Coalition>& blocks,
                                    const std::map<Agent, Money>& payoff) {
  Validated<Outcome> out;
  auto err = [&out](const std::string& e) { out.errors.push_back(e); };

  std::vector<Coalition> sorted = blocks;
  Mask seen = 0;
  bool structure_ok = true;
  for (const auto& b : sorted) {
    std::string tag = "block " + to_string(b);
    if (b.members.empty() || !b.ascending()) {
      err(tag + ": not a valid coalition");
      structure_ok = false;
      continue;
    }
    auto m = g.mask_of(b);
    if (!m) {
      err(tag + ": unknown agent id");
      structure_ok = false;
      continue;
    }
    if (seen & *m) {
      err(tag + ": overlaps another block");
      structure_ok = false;
    }
    seen |= *m;
  }
  if (structure_ok && seen != g.full_mask())
    err("blocks do not cover agents " + to_string(g.coalition_of(g.full_mask() & ~seen)));

  std::vector<Money> by_pos(g.n(), Money(0));
  for (const auto& [a, m] : payoff) {
    if (g.pos(a) < 0)
      err("payoff: unknown agent " + std::to_string(a));
    else
      by_pos[g.pos(a)] = m;
  }
  for (Agent a : g.agents())
    if (!payoff.count(a)) err("payoff: missing agent " + std::to_string(a));
  for (Agent a : g.agents()) {
    auto it = payoff.find(a);
    if (it != payoff.end() && it->second.is_negative())
      err("payoff: agent " + std::to_string(a) + " is negative (" +
          it->second.str() + ")");
  }

  if (structure_ok && seen == g.full_mask()) {
    for (const auto& b : sorted) {
      bool total = true;
      PayoffVector r{b, {}};
      for (Agent a : b.members) {
        auto it = payoff.find(a);
        if (it == payoff.end()) {
          total = false;
          break;
        }
        r.amounts.push_back(it->second);
      }
      if (!total) continue;  // already reported as missing
      const auto& fs = g.feasible(b);
      if (std::find(fs.begin(), fs.end(), r) == fs.end())
        err("block " + to_string(b) + ": restriction is not feasible");
    }
  }

  if (!out.errors.empty()) return out;
  std::sort(sorted.begin(), sorted.end());
  out.value = Outcome{CoalitionStructure{std::move(sorted)}, std::move(by_pos)};
  return out;
}

Outcome zero_outcome(const Ccp& g) {
  Outcome o;
  for (Agent a : g.agents()) o.structure.blocks.push_back(Coalition{{a}});
  o.payoff.assign(g.n(), Money(0));
  return o;
}

Validated<PayoffVector> restrict(const std::map<Agent, Money>& payoff,
                                 const Coalition& c) {
  Validated<PayoffVector> out;
  PayoffVector v{c, {}};
  for (Agent a : c.members) {
    auto it = payoff.find(a);
    if (it == payoff.end()) {
      out.errors.push_back("missing agent " + std::to_string(a));
      continue;
    }
    v.amounts.push_back(it->second);
  }
  if (!out.errors.empty()) return out;
  out.value = std::move(v);
  return out;
}

}  // namespace ccl
