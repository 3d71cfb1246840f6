#pragma once

#include "ccl/bargaining.hpp"
#include "ccl/instances.hpp"
#include "ccl/model.hpp"
#include "ccl/properties.hpp"
#include "ccl/stability.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace ccl {

using Json = nlohmann::ordered_json;

// Instance file: {"agents": [...], "coalitions": [{"members": [...],
// "payoffs": [[...], ...]}, ...], "default": "minus-e"|"strict"}. Amounts are
// integers, exact decimal strings, or "p/q" strings.
Validated<RawInstance> parse_instance(const std::string& text);

// Inverse of parse_instance on validated problems: explicitly listed
// coalitions only, amounts as integers where possible, strings otherwise.
Json instance_to_json(const Ccp& g);

// Generator file: {"type": "shapley-scarf"|"roommate"|"marriage"|
// "man-woman-child"|"random", "utilities": {"1": {"2": 3, ...}, ...},
// "men"/"women" for marriage, "seed"/"nAgents"/"maxVectors"/"valueRange" for
// random}.
Validated<Ccp> parse_generator_spec(const std::string& text, int size_guard = kDefaultSizeGuard);

// Utility table of a generator spec, for analyses that work on preferences
// directly (top trading cycles). The table must be total.
Validated<UtilityProfile> parse_utility_spec(const std::string& text);

std::uint64_t fnv1a64(const std::string& bytes);

// Content hash of the canonical instance serialization, rendered as
// "fnv1a64:<16 hex digits>".
std::string instance_digest(const Ccp& g);

Json money_to_json(const Money& m);
Json coalition_to_json(const Coalition& c);
Json outcome_to_json(const Ccp& g, const Outcome& o);
Json block_witness_to_json(const BlockWitness& w);
Json unilateral_witness_to_json(const UnilateralBlockWitness& w);
Json weak_top_coalition_to_json(const WeakTopCoalitionWitness& w);
Json top_coalition_to_json(const TopCoalitionWitness& w);
Json weak_top_cycle_to_json(const WeakTopCycleWitness& w);
Json construction_to_json(const Ccp& g, const Construction& c);
Json chain_to_json(const Ccp& g, const ChainResult& r);
Json super_additivity_to_json(const SuperAdditivityReport& r);
Json ttc_to_json(const Ccp& g, const TtcResult& r);

template <typename W, typename F>
Json property_report_to_json(const PropertyReport<W>& rep, F witness_to_json) {
  Json out;
  out["satisfied"] = rep.satisfied;
  out["witnesses"] = Json::array();
  for (const auto& [mask, w] : rep.witnesses) out["witnesses"].push_back(witness_to_json(w));
  out["failing"] = Json::array();
  for (const auto& scope : rep.failing) out["failing"].push_back(coalition_to_json(scope));
  return out;
}

}  // namespace ccl
