#include "ccl/io.hpp"

#include <algorithm>
#include <set>

namespace ccl {

namespace {

std::optional<Money> amount_from_json(const Json& j) {
  if (j.is_number_integer()) return Money(j.get<long long>());
  if (j.is_string()) return Money::parse(j.get<std::string>());
  return std::nullopt;  // floats are rejected: amounts must be exact
}

bool agent_from_json(const Json& j, Agent& out) {
  if (!j.is_number_integer()) return false;
  long long v = j.get<long long>();
  if (v < 0 || v > 1'000'000) return false;
  out = static_cast<Agent>(v);
  return true;
}

std::optional<std::vector<Agent>> agent_list(const Json& j) {
  if (!j.is_array()) return std::nullopt;
  std::vector<Agent> out;
  for (const auto& e : j) {
    Agent a;
    if (!agent_from_json(e, a)) return std::nullopt;
    out.push_back(a);
  }
  return out;
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& errors) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) errors.push_back(where + ": unknown field \"" + key + "\"");
}

std::optional<Agent> agent_key(const std::string& key) {
  try {
    size_t used = 0;
    long long v = std::stoll(key, &used);
    if (used != key.size() || v < 0 || v > 1'000'000) return std::nullopt;
    return static_cast<Agent>(v);
  } catch (...) {
    return std::nullopt;
  }
}

// Reads the "utilities" table of a generator spec; the agent set is every id
// appearing as a key on either level.
bool read_utilities(const Json& j, std::vector<std::string>& errors,
                    std::map<Agent, std::map<Agent, Money>>& u, std::vector<Agent>& agents) {
  if (!j.contains("utilities") || !j["utilities"].is_object()) {
    errors.push_back("generator spec: missing \"utilities\" table");
    return false;
  }
  std::set<Agent> ids;
  for (const auto& [key, row] : j["utilities"].items()) {
    auto a = agent_key(key);
    if (!a) {
      errors.push_back("utilities: bad agent id \"" + key + "\"");
      continue;
    }
    ids.insert(*a);
    if (!row.is_object()) {
      errors.push_back("utilities[" + key + "]: must be an object");
      continue;
    }
    for (const auto& [bkey, cell] : row.items()) {
      auto b = agent_key(bkey);
      if (!b) {
        errors.push_back("utilities[" + key + "]: bad agent id \"" + bkey + "\"");
        continue;
      }
      if (auto m = amount_from_json(cell)) {
        u[*a][*b] = *m;
        ids.insert(*b);
      } else {
        errors.push_back("utilities[" + key + "][" + bkey + "]: bad amount");
      }
    }
  }
  agents.assign(ids.begin(), ids.end());
  return errors.empty();
}

}  // namespace

Validated<RawInstance> parse_instance(const std::string& text) {
  Validated<RawInstance> out;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    out.errors.push_back(std::string("invalid JSON: ") + e.what());
    return out;
  }
  if (!j.is_object()) {
    out.errors.push_back("instance must be a JSON object");
    return out;
  }
  check_keys(j, {"agents", "coalitions", "default"}, "instance", out.errors);

  RawInstance raw;
  if (!j.contains("agents")) {
    out.errors.push_back("instance: missing \"agents\"");
  } else if (auto agents = agent_list(j["agents"])) {
    raw.agents = *agents;
  } else {
    out.errors.push_back("instance: \"agents\" must be a list of small non-negative integers");
  }

  if (j.contains("default")) {
    if (j["default"] == "minus-e")
      raw.default_rule = DefaultRule::MinusE;
    else if (j["default"] == "strict")
      raw.default_rule = DefaultRule::Strict;
    else
      out.errors.push_back("instance: \"default\" must be \"minus-e\" or \"strict\"");
  }

  if (j.contains("coalitions")) {
    if (!j["coalitions"].is_array()) {
      out.errors.push_back("instance: \"coalitions\" must be a list");
    } else {
      int idx = 0;
      for (const auto& entry : j["coalitions"]) {
        std::string tag = "coalitions[" + std::to_string(idx++) + "]";
        if (!entry.is_object()) {
          out.errors.push_back(tag + ": must be an object");
          continue;
        }
        check_keys(entry, {"members", "payoffs"}, tag, out.errors);
        RawCoalitionEntry ce;
        if (auto members = entry.contains("members") ? agent_list(entry["members"]) : std::nullopt) {
          ce.members = *members;
        } else {
          out.errors.push_back(tag + ": missing or malformed \"members\"");
          continue;
        }
        if (!entry.contains("payoffs") || !entry["payoffs"].is_array()) {
          out.errors.push_back(tag + ": missing or malformed \"payoffs\"");
          continue;
        }
        bool bad = false;
        for (const auto& row : entry["payoffs"]) {
          std::vector<Money> amounts;
          if (row.is_array())
            for (const auto& cell : row) {
              if (auto m = amount_from_json(cell)) {
                amounts.push_back(*m);
              } else {
                bad = true;
                break;
              }
            }
          else
            bad = true;
          if (bad) break;
          ce.payoffs.push_back(std::move(amounts));
        }
        if (bad) {
          out.errors.push_back(tag +
                               ": payoff amounts must be integers, decimal strings, or \"p/q\"");
          continue;
        }
        raw.coalitions.push_back(std::move(ce));
      }
    }
  }

  if (!out.errors.empty()) return out;
  out.value = std::move(raw);
  return out;
}

Json instance_to_json(const Ccp& g) {
  Json j;
  j["agents"] = Json::array();
  for (Agent a : g.agents()) j["agents"].push_back(a);
  j["coalitions"] = Json::array();
  for (Mask m : g.listed_masks()) {
    Json entry;
    entry["members"] = coalition_to_json(g.coalition_of(m));
    entry["payoffs"] = Json::array();
    for (const auto& x : g.feasible(m)) {
      Json row = Json::array();
      for (const auto& amount : x.amounts) row.push_back(money_to_json(amount));
      entry["payoffs"].push_back(std::move(row));
    }
    j["coalitions"].push_back(std::move(entry));
  }
  j["default"] = g.default_rule() == DefaultRule::MinusE ? "minus-e" : "strict";
  return j;
}

Validated<Ccp> parse_generator_spec(const std::string& text, int size_guard) {
  Validated<Ccp> out;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    out.errors.push_back(std::string("invalid JSON: ") + e.what());
    return out;
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    out.errors.push_back("generator spec: missing \"type\"");
    return out;
  }
  std::string type = j["type"].get<std::string>();

  if (type == "shapley-scarf" || type == "roommate" || type == "man-woman-child") {
    std::map<Agent, std::map<Agent, Money>> u;
    std::vector<Agent> agents;
    if (!read_utilities(j, out.errors, u, agents)) return out;
    auto prof = UtilityProfile::make(agents, u);
    if (!prof.ok()) {
      out.errors = prof.errors;
      return out;
    }
    auto g = type == "shapley-scarf"  ? shapley_scarf(*prof, size_guard)
             : type == "roommate"     ? roommate(*prof, size_guard)
                                      : man_woman_child(*prof, size_guard);
    if (!g.ok()) {
      out.errors = g.errors;
      return out;
    }
    out.value = *g;
    return out;
  }

  if (type == "marriage") {
    std::map<Agent, std::map<Agent, Money>> u;
    std::vector<Agent> agents;
    if (!read_utilities(j, out.errors, u, agents)) return out;
    auto men = j.contains("men") ? agent_list(j["men"]) : std::nullopt;
    auto women = j.contains("women") ? agent_list(j["women"]) : std::nullopt;
    if (!men || !women) {
      out.errors.push_back("marriage spec: \"men\" and \"women\" lists required");
      return out;
    }
    auto g = marriage(*men, *women, u, size_guard);
    if (!g.ok()) {
      out.errors = g.errors;
      return out;
    }
    out.value = *g;
    return out;
  }

  if (type == "random") {
    if (!j.contains("seed") || !j["seed"].is_number_unsigned()) {
      out.errors.push_back("random spec: non-negative \"seed\" required");
      return out;
    }
    if (!j.contains("nAgents") || !j["nAgents"].is_number_integer()) {
      out.errors.push_back("random spec: integer \"nAgents\" required");
      return out;
    }
    int max_vectors = 2;
    if (j.contains("maxVectors")) {
      if (!j["maxVectors"].is_number_integer() || j["maxVectors"].get<int>() < 1) {
        out.errors.push_back("random spec: \"maxVectors\" must be a positive integer");
        return out;
      }
      max_vectors = j["maxVectors"].get<int>();
    }
    std::pair<int, int> range{0, 3};
    if (j.contains("valueRange")) {
      const auto& vr = j["valueRange"];
      if (!vr.is_array() || vr.size() != 2 || !vr[0].is_number_integer() ||
          !vr[1].is_number_integer()) {
        out.errors.push_back("random spec: \"valueRange\" must be [lo, hi]");
        return out;
      }
      range = {vr[0].get<int>(), vr[1].get<int>()};
    }
    try {
      out.value = random_ccp(j["seed"].get<std::uint64_t>(), j["nAgents"].get<int>(), max_vectors,
                             range, size_guard);
    } catch (const GuardExceeded&) {
      throw;
    } catch (const std::exception& e) {
      out.errors.push_back(std::string("random spec: ") + e.what());
    }
    return out;
  }

  out.errors.push_back("generator spec: unknown type \"" + type + "\"");
  return out;
}

Validated<UtilityProfile> parse_utility_spec(const std::string& text) {
  Validated<UtilityProfile> out;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    out.errors.push_back(std::string("invalid JSON: ") + e.what());
    return out;
  }
  if (!j.is_object()) {
    out.errors.push_back("generator spec: must be a JSON object");
    return out;
  }
  std::map<Agent, std::map<Agent, Money>> u;
  std::vector<Agent> agents;
  if (!read_utilities(j, out.errors, u, agents)) return out;
  auto prof = UtilityProfile::make(agents, u);
  if (!prof.ok()) {
    out.errors = prof.errors;
    return out;
  }
  out.value = *prof;
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string instance_digest(const Ccp& g) {
  std::uint64_t h = fnv1a64(instance_to_json(g).dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

Json money_to_json(const Money& m) {
  if (m.is_integer()) return Json(m.num());
  return Json(m.str());
}

Json coalition_to_json(const Coalition& c) {
  Json j = Json::array();
  for (Agent a : c.members) j.push_back(a);
  return j;
}

namespace {

Json vector_to_json(const PayoffVector& x) {
  Json j = Json::array();
  for (const auto& m : x.amounts) j.push_back(money_to_json(m));
  return j;
}

}  // namespace

Json outcome_to_json(const Ccp& g, const Outcome& o) {
  Json j;
  j["structure"] = Json::array();
  for (const auto& b : o.structure.blocks) j["structure"].push_back(coalition_to_json(b));
  j["payoff"] = Json::array();
  for (int i = 0; i < g.n(); ++i) j["payoff"].push_back(money_to_json(o.payoff[i]));
  return j;
}

Json block_witness_to_json(const BlockWitness& w) {
  Json j;
  j["coalition"] = coalition_to_json(w.coalition);
  j["vector"] = vector_to_json(w.vector);
  j["kind"] = w.kind == BlockKind::Strong ? "strong" : "weak";
  if (w.kind == BlockKind::Weak) j["active"] = coalition_to_json(w.active);
  return j;
}

Json unilateral_witness_to_json(const UnilateralBlockWitness& w) {
  Json j;
  j["agent"] = w.agent;
  j["host"] = coalition_to_json(w.host);
  j["deviatingSet"] = coalition_to_json(w.deviating_set);
  j["vector"] = vector_to_json(w.vector);
  return j;
}

Json weak_top_coalition_to_json(const WeakTopCoalitionWitness& w) {
  Json j;
  j["scope"] = coalition_to_json(w.scope);
  j["top"] = coalition_to_json(w.top);
  j["vector"] = vector_to_json(w.vector);
  j["tiers"] = Json::array();
  for (const auto& t : w.tiers) j["tiers"].push_back(coalition_to_json(t));
  return j;
}

Json top_coalition_to_json(const TopCoalitionWitness& w) {
  Json j;
  j["scope"] = coalition_to_json(w.scope);
  j["top"] = coalition_to_json(w.top);
  j["vector"] = vector_to_json(w.vector);
  return j;
}

Json weak_top_cycle_to_json(const WeakTopCycleWitness& w) {
  Json j;
  j["scope"] = coalition_to_json(w.scope);
  j["top"] = coalition_to_json(w.top);
  j["vector"] = vector_to_json(w.vector);
  j["rank"] = Json::object();
  for (const auto& [a, r] : w.rank) j["rank"][std::to_string(a)] = r;
  return j;
}

Json construction_to_json(const Ccp& g, const Construction& c) {
  Json j;
  j["status"] = c.status == ConstructStatus::Ok               ? "ok"
                : c.status == ConstructStatus::PropertyFailed ? "property-failed"
                                                              : "verification-failed";
  j["outcome"] = c.outcome ? outcome_to_json(g, *c.outcome) : Json(nullptr);
  j["failedScope"] = c.failed_scope ? coalition_to_json(*c.failed_scope) : Json(nullptr);
  j["stages"] = Json::array();
  for (const auto& s : c.stages) {
    Json stage;
    stage["scope"] = coalition_to_json(s.scope);
    stage["top"] = coalition_to_json(s.top);
    stage["vector"] = vector_to_json(s.vector);
    j["stages"].push_back(std::move(stage));
  }
  return j;
}

Json chain_to_json(const Ccp& g, const ChainResult& r) {
  Json j;
  j["status"] = r.status == ChainStatus::Ok ? "ok" : "discrepancy";
  j["outcome"] = r.outcome ? outcome_to_json(g, *r.outcome) : Json(nullptr);
  j["steps"] = Json::array();
  for (const auto& s : r.steps) {
    Json step;
    step["adopted"] = outcome_to_json(g, s.adopted);
    step["block"] = coalition_to_json(s.block);
    j["steps"].push_back(std::move(step));
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json super_additivity_to_json(const SuperAdditivityReport& r) {
  Json j;
  j["superAdditive"] = r.super_additive;
  if (r.counterexample) {
    Json ce;
    ce["s"] = coalition_to_json(r.counterexample->s);
    ce["t"] = coalition_to_json(r.counterexample->t);
    ce["x"] = vector_to_json(r.counterexample->x);
    ce["y"] = vector_to_json(r.counterexample->y);
    ce["z"] = vector_to_json(r.counterexample->z);
    j["counterexample"] = std::move(ce);
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

Json ttc_to_json(const Ccp& g, const TtcResult& r) {
  Json j;
  j["outcome"] = outcome_to_json(g, r.outcome);
  j["rounds"] = Json::array();
  for (const auto& round : r.rounds) {
    Json jr;
    jr["cycle"] = coalition_to_json(round.cycle);
    jr["pointedTo"] = Json::array();
    for (Agent a : round.pointed_to) jr["pointedTo"].push_back(a);
    j["rounds"].push_back(std::move(jr));
  }
  return j;
}

}  // namespace ccl
