#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccl/bargaining.hpp"
#include "ccl/cli.hpp"
#include "ccl/combinatorics.hpp"
#include "ccl/instances.hpp"
#include "ccl/io.hpp"
#include "ccl/model.hpp"
#include "ccl/properties.hpp"
#include "ccl/stability.hpp"

namespace py = pybind11;
using namespace ccl;

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "\n";
    out += l;
  }
  return out;
}

template <typename T>
T unwrap(Validated<T> v) {
  if (!v.ok()) throw py::value_error(join(v.errors));
  return *std::move(v.value);
}

std::string outcome_list_json(const Ccp& g, const std::vector<Outcome>& list) {
  Json out = Json::array();
  for (const auto& o : list) out.push_back(outcome_to_json(g, o));
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact solvers for finite contract choice problems";

  py::class_<Ccp>(m, "Instance")
      .def_property_readonly("agents", &Ccp::agents)
      .def_property_readonly("n", &Ccp::n)
      .def("digest", [](const Ccp& g) { return instance_digest(g); })
      .def("to_json", [](const Ccp& g) { return instance_to_json(g).dump(); })
      .def("__eq__", [](const Ccp& a, const Ccp& b) { return a == b; })
      .def("__repr__", [](const Ccp& g) {
        return "<Instance of " + std::to_string(g.n()) + " agents, " + instance_digest(g) + ">";
      });

  m.def("builtin", &builtin, py::arg("name"));
  m.def("builtin_names", &builtin_names);
  m.def(
      "parse_instance",
      [](const std::string& text, int max_agents) {
        auto raw = parse_instance(text);
        if (!raw.ok()) throw py::value_error(join(raw.errors));
        return unwrap(Ccp::validate(*raw, max_agents));
      },
      py::arg("text"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "parse_generator_spec",
      [](const std::string& text, int max_agents) {
        return unwrap(parse_generator_spec(text, max_agents));
      },
      py::arg("text"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "random_instance",
      [](std::uint64_t seed, int n_agents, int max_vectors, std::pair<int, int> value_range,
         int max_agents) { return random_ccp(seed, n_agents, max_vectors, value_range, max_agents); },
      py::arg("seed"), py::arg("n_agents"), py::arg("max_vectors") = 2,
      py::arg("value_range") = std::pair<int, int>{0, 3},
      py::arg("max_agents") = kDefaultSizeGuard);

  // analyses hand JSON strings to the wrapper package
  m.def(
      "outcomes_json",
      [](const Ccp& g, int guard) { return outcome_list_json(g, outcomes(g, guard)); },
      py::arg("g"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "core_json", [](const Ccp& g, int guard) { return outcome_list_json(g, core(g, guard)); },
      py::arg("g"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "strict_core_json",
      [](const Ccp& g, int guard) { return outcome_list_json(g, strict_core(g, guard)); },
      py::arg("g"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "pareto_json",
      [](const Ccp& g, const std::string& mode, int guard) {
        if (mode != "outcome-domination" && mode != "literal")
          throw py::value_error("mode must be outcome-domination or literal");
        return outcome_list_json(
            g, pareto_set(g, mode == "literal" ? ParetoMode::Literal : ParetoMode::OutcomeDomination,
                          guard));
      },
      py::arg("g"), py::arg("mode") = "outcome-domination",
      py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "individually_stable_json",
      [](const Ccp& g, const std::string& variant, int guard) {
        if (variant != "literal" && variant != "strict-join")
          throw py::value_error("variant must be literal or strict-join");
        return outcome_list_json(
            g, individually_stable_set(
                   g, variant == "strict-join" ? DeviationVariant::StrictJoin
                                               : DeviationVariant::Literal,
                   guard));
      },
      py::arg("g"), py::arg("variant") = "literal", py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "weak_bargaining_json",
      [](const Ccp& g, bool classical, int guard) {
        return outcome_list_json(g, weak_bargaining_set(g, classical, guard));
      },
      py::arg("g"), py::arg("classical") = false, py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "properties_json",
      [](const Ccp& g, const std::string& which, int guard) {
        if (which == "weak-top-coalition")
          return property_report_to_json(satisfies_weak_top_coalition_property(g, guard),
                                         weak_top_coalition_to_json)
              .dump();
        if (which == "top-coalition")
          return property_report_to_json(satisfies_top_coalition_property(g, guard),
                                         top_coalition_to_json)
              .dump();
        if (which == "weak-top-cycle")
          return property_report_to_json(satisfies_weak_top_cycle_property(g, guard),
                                         weak_top_cycle_to_json)
              .dump();
        throw py::value_error(
            "property must be weak-top-coalition, top-coalition or weak-top-cycle");
      },
      py::arg("g"), py::arg("which"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "construct_json",
      [](const Ccp& g, int theorem, int guard) {
        if (theorem == 4) {
          auto po = pareto_set(g, ParetoMode::OutcomeDomination, guard);
          if (po.empty()) throw py::value_error("no Pareto optimal outcome to start from");
          auto r = chain_to_json(g, wb_chain_construct(g, po.front(), guard));
          r["start"] = outcome_to_json(g, po.front());
          return r.dump();
        }
        if (theorem < 1 || theorem > 4) throw py::value_error("theorem must be 1, 2, 3 or 4");
        auto c = theorem == 1   ? construct_core_outcome(g, guard)
                 : theorem == 2 ? construct_strict_core_outcome(g, guard)
                                : construct_is_outcome(g, guard);
        return construction_to_json(g, c).dump();
      },
      py::arg("g"), py::arg("theorem"), py::arg("max_agents") = kDefaultSizeGuard);
  m.def(
      "super_additive_json",
      [](const Ccp& g) { return super_additivity_to_json(is_super_additive(g)).dump(); },
      py::arg("g"));
  m.def(
      "ttc_json",
      [](const std::string& builtin_name, const std::string& spec_text, int guard) {
        UtilityProfile u = !builtin_name.empty() ? builtin_utilities(builtin_name)
                                                 : unwrap(parse_utility_spec(spec_text));
        auto market = unwrap(shapley_scarf(u, guard));
        auto r = unwrap(top_trading_cycles(u, guard));
        return ttc_to_json(market, r).dump();
      },
      py::arg("builtin") = "", py::arg("spec") = "", py::arg("max_agents") = kDefaultSizeGuard);

  // the full command-line surface, for driving everything through one call
  m.def("run_cli", [](const std::vector<std::string>& args) {
    CliResult r = dispatch(args);
    return py::make_tuple(r.exit_code, r.out, r.err);
  });

  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);
}
