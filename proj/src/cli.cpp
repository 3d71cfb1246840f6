#include "ccl/cli.hpp"

#include "ccl/bargaining.hpp"
#include "ccl/combinatorics.hpp"
#include "ccl/instances.hpp"
#include "ccl/io.hpp"
#include "ccl/model.hpp"
#include "ccl/properties.hpp"
#include "ccl/stability.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace ccl {

namespace {

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{1, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "\n";
    out += l;
  }
  return out;
}

// Guard violations arrive as validation errors from several layers; they get
// the dedicated exit code either way.
CliError classify(const std::vector<std::string>& errors) {
  std::string text = join(errors);
  bool guard = text.find("size guard") != std::string::npos;
  return CliError{guard ? 2 : 1, text};
}

// Instance sources shared by every analysis command.
struct Source {
  std::string builtin_name;
  std::string instance_file;
  std::string spec_file;
  int max_agents = kDefaultSizeGuard;

  Ccp load() const {
    if (!builtin_name.empty()) {
      try {
        return builtin(builtin_name);
      } catch (const std::invalid_argument& e) {
        throw CliError{1, e.what()};
      }
    }
    if (!instance_file.empty()) {
      auto raw = parse_instance(read_file(instance_file));
      if (!raw.ok()) throw CliError{1, join(raw.errors)};
      auto g = Ccp::validate(*raw, max_agents);
      if (!g.ok()) throw classify(g.errors);
      return *g;
    }
    if (!spec_file.empty()) {
      auto g = parse_generator_spec(read_file(spec_file), max_agents);
      if (!g.ok()) throw classify(g.errors);
      return *g;
    }
    throw CliError{1, "one of --builtin, --instance or --spec is required"};
  }

  UtilityProfile load_utilities() const {
    if (!builtin_name.empty()) {
      try {
        return builtin_utilities(builtin_name);
      } catch (const std::invalid_argument& e) {
        throw CliError{1, e.what()};
      }
    }
    if (!spec_file.empty()) {
      auto u = parse_utility_spec(read_file(spec_file));
      if (!u.ok()) throw classify(u.errors);
      return *u;
    }
    throw CliError{1, "one of --builtin or --spec is required"};
  }
};

void add_source(CLI::App* cmd, Source& src, bool with_instance = true) {
  auto* b = cmd->add_option("--builtin", src.builtin_name, "named built-in instance");
  auto* s = cmd->add_option("--spec", src.spec_file, "generator spec file");
  b->excludes(s);
  if (with_instance) {
    auto* i = cmd->add_option("--instance", src.instance_file, "instance file");
    i->excludes(b)->excludes(s);
  }
  cmd->add_option("--max-agents", src.max_agents, "size guard")
      ->check(CLI::Range(1, kSizeGuardCeiling));
}

Json envelope(const std::string& command, Json digest, Json result, Json counts,
              long long elapsed_ms) {
  Json r;
  r["command"] = command;
  r["instanceDigest"] = std::move(digest);
  r["result"] = std::move(result);
  r["stats"] = Json::object();
  r["stats"]["counts"] = std::move(counts);
  r["stats"]["elapsedMs"] = elapsed_ms;
  return r;
}

Json outcome_list_result(const Ccp& g, const std::vector<Outcome>& list) {
  Json result;
  result["outcomes"] = Json::array();
  for (const auto& o : list) result["outcomes"].push_back(outcome_to_json(g, o));
  result["count"] = list.size();
  return result;
}

std::string outcome_table(const Ccp& g, const std::vector<Outcome>& list) {
  std::string t = "count: " + std::to_string(list.size()) + "\n";
  for (const auto& o : list) t += to_string(g, o) + "\n";
  return t;
}

// One analysis command: loads the instance, runs fn, wraps the report.
// fn fills result/counts and may add table lines.
struct Run {
  Json result;
  Json counts = Json::object();
  std::string table;
  int exit_code = 0;
};

class Driver {
 public:
  std::string format = "json";
  CliResult res;

  void execute(const std::string& command, const Source& src,
               const std::function<Run(const Ccp&)>& fn) {
    Ccp g = src.load();
    auto t0 = std::chrono::steady_clock::now();
    Run run = fn(g);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    run.counts["agents"] = g.n();
    finish(command, instance_digest(g), std::move(run), ms);
  }

  void finish(const std::string& command, Json digest, Run run, long long ms) {
    res.exit_code = run.exit_code;
    if (format == "table") {
      std::string head = "command: " + command + "\n";
      if (digest.is_string()) head += "digest: " + digest.get<std::string>() + "\n";
      res.out = head + run.table;
    } else {
      res.out = envelope(command, std::move(digest), std::move(run.result),
                         std::move(run.counts), ms)
                    .dump(2) +
                "\n";
    }
  }
};

}  // namespace

CliResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"contract choice problem toolkit"};
  app.require_subcommand(1);

  Driver drv;
  Source src;
  bool classical = false;
  std::string mode = "outcome-domination";
  std::string is_variant = "literal";
  bool prop_weak = false, prop_top = false, prop_cycle = false;
  int theorem = 0;

  auto add_common = [&](CLI::App* cmd, bool with_instance = true) {
    add_source(cmd, src, with_instance);
    cmd->add_option("--format", drv.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    return cmd;
  };

  std::function<void()> action;

  auto* validate = add_common(app.add_subcommand("validate", "check an instance"));
  validate->callback([&] {
    action = [&] {
      // reports problems in the result instead of failing out
      try {
        Ccp g = src.load();
        Run run;
        run.result["valid"] = true;
        run.result["errors"] = Json::array();
        run.counts["agents"] = g.n();
        run.counts["listedCoalitions"] = g.listed_masks().size();
        run.table = "valid: yes\n";
        drv.finish("validate", instance_digest(g), std::move(run), 0);
      } catch (const CliError& e) {
        Run run;
        run.result["valid"] = false;
        run.result["errors"] = Json::array();
        std::istringstream ss(e.message);
        std::string one;
        while (std::getline(ss, one)) run.result["errors"].push_back(one);
        run.exit_code = e.code;
        run.table = "valid: no\n" + e.message + "\n";
        drv.finish("validate", nullptr, std::move(run), 0);
      }
    };
  });

  auto outcome_command = [&](const std::string& name, const std::string& help,
                             std::function<std::vector<Outcome>(const Ccp&)> list) {
    auto* cmd = add_common(app.add_subcommand(name, help));
    cmd->callback([&, name, list] {
      action = [&, name, list] {
        drv.execute(name, src, [&](const Ccp& g) {
          Run run;
          auto outs = list(g);
          run.result = outcome_list_result(g, outs);
          run.counts["outcomes"] = outs.size();
          run.table = outcome_table(g, outs);
          return run;
        });
      };
    });
    return cmd;
  };

  outcome_command("outcomes", "enumerate every outcome",
                  [&](const Ccp& g) { return outcomes(g, src.max_agents); });
  outcome_command("core", "outcomes no coalition blocks",
                  [&](const Ccp& g) { return core(g, src.max_agents); });
  outcome_command("strict-core", "outcomes no coalition weakly blocks",
                  [&](const Ccp& g) { return strict_core(g, src.max_agents); });
  auto* pareto = outcome_command("pareto", "Pareto optimal outcomes", [&](const Ccp& g) {
    return pareto_set(g,
                      mode == "literal" ? ParetoMode::Literal : ParetoMode::OutcomeDomination,
                      src.max_agents);
  });
  pareto->add_option("--mode", mode, "outcome-domination or literal")
      ->check(CLI::IsMember({"outcome-domination", "literal"}));
  auto* is_cmd = outcome_command("is", "individually stable outcomes", [&](const Ccp& g) {
    return individually_stable_set(
        g, is_variant == "strict-join" ? DeviationVariant::StrictJoin : DeviationVariant::Literal,
        src.max_agents);
  });
  is_cmd->add_option("--is-variant", is_variant, "literal or strict-join")
      ->check(CLI::IsMember({"literal", "strict-join"}));
  auto* wb = outcome_command("wb", "weak bargaining set", [&](const Ccp& g) {
    return weak_bargaining_set(g, classical, src.max_agents);
  });
  wb->add_flag("--classical", classical, "classical counter-objections");

  auto* props = add_common(app.add_subcommand("properties", "structural property checks"));
  props->add_flag("--weak-top-coalition", prop_weak);
  props->add_flag("--top-coalition", prop_top);
  props->add_flag("--weak-top-cycle", prop_cycle);
  props->callback([&] {
    action = [&] {
      if (prop_weak + prop_top + prop_cycle != 1)
        throw CliError{1, "pick exactly one of --weak-top-coalition, --top-coalition, "
                          "--weak-top-cycle"};
      drv.execute("properties", src, [&](const Ccp& g) {
        Run run;
        if (prop_weak) {
          auto rep = satisfies_weak_top_coalition_property(g, src.max_agents);
          run.result = property_report_to_json(rep, weak_top_coalition_to_json);
          run.result["property"] = "weak-top-coalition";
        } else if (prop_top) {
          auto rep = satisfies_top_coalition_property(g, src.max_agents);
          run.result = property_report_to_json(rep, top_coalition_to_json);
          run.result["property"] = "top-coalition";
        } else {
          auto rep = satisfies_weak_top_cycle_property(g, src.max_agents);
          run.result = property_report_to_json(rep, weak_top_cycle_to_json);
          run.result["property"] = "weak-top-cycle";
        }
        run.counts["witnesses"] = run.result["witnesses"].size();
        run.counts["failing"] = run.result["failing"].size();
        run.table = std::string("property: ") + run.result["property"].get<std::string>() +
                    "\nsatisfied: " + (run.result["satisfied"].get<bool>() ? "yes" : "no") + "\n";
        for (const auto& scope : run.result["failing"])
          run.table += "failing scope: " + scope.dump() + "\n";
        return run;
      });
    };
  });

  auto* construct = add_common(app.add_subcommand("construct", "build stable outcomes"));
  construct->add_option("--theorem", theorem, "1 core, 2 strict core, 3 stability, 4 bargaining")
      ->required()
      ->check(CLI::Range(1, 4));
  construct->callback([&] {
    action = [&] {
      drv.execute("construct", src, [&](const Ccp& g) {
        Run run;
        if (theorem == 4) {
          auto po = pareto_set(g, ParetoMode::OutcomeDomination, src.max_agents);
          if (po.empty()) throw CliError{1, "no Pareto optimal outcome to start from"};
          auto chain = wb_chain_construct(g, po.front(), src.max_agents);
          run.result = chain_to_json(g, chain);
          run.result["start"] = outcome_to_json(g, po.front());
          run.counts["steps"] = chain.steps.size();
          if (chain.status == ChainStatus::Discrepancy) run.exit_code = 3;
          run.table = "status: " + run.result["status"].get<std::string>() + "\n";
          if (chain.outcome) run.table += to_string(g, *chain.outcome) + "\n";
          if (!chain.note.empty()) run.table += "note: " + chain.note + "\n";
        } else {
          auto c = theorem == 1   ? construct_core_outcome(g, src.max_agents)
                   : theorem == 2 ? construct_strict_core_outcome(g, src.max_agents)
                                  : construct_is_outcome(g, src.max_agents);
          run.result = construction_to_json(g, c);
          run.counts["stages"] = c.stages.size();
          if (c.status == ConstructStatus::VerificationFailed) run.exit_code = 3;
          run.table = "status: " + run.result["status"].get<std::string>() + "\n";
          if (c.outcome) run.table += to_string(g, *c.outcome) + "\n";
          if (c.failed_scope) run.table += "failed scope: " + to_string(*c.failed_scope) + "\n";
        }
        return run;
      });
    };
  });

  auto* generate = add_common(app.add_subcommand("generate", "materialize a generator spec"),
                              /*with_instance=*/false);
  generate->callback([&] {
    action = [&] {
      drv.execute("generate", src, [&](const Ccp& g) {
        Run run;
        run.result["instance"] = instance_to_json(g);
        run.counts["listedCoalitions"] = g.listed_masks().size();
        run.table = run.result["instance"].dump(2) + "\n";
        return run;
      });
    };
  });

  auto* ttc = add_common(app.add_subcommand("ttc", "top trading cycles"),
                         /*with_instance=*/false);
  ttc->callback([&] {
    action = [&] {
      UtilityProfile u = src.load_utilities();
      auto market = shapley_scarf(u, src.max_agents);
      if (!market.ok()) throw CliError{1, join(market.errors)};
      auto t0 = std::chrono::steady_clock::now();
      auto r = top_trading_cycles(u, src.max_agents);
      if (!r.ok()) throw CliError{1, join(r.errors)};
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      Run run;
      run.result = ttc_to_json(*market, *r);
      run.counts["agents"] = market->n();
      run.counts["rounds"] = r->rounds.size();
      run.table = to_string(*market, r->outcome) + "\n";
      for (const auto& round : r->rounds) run.table += "cycle: " + to_string(round.cycle) + "\n";
      drv.finish("ttc", instance_digest(*market), std::move(run), ms);
    };
  });

  auto* super = add_common(app.add_subcommand("super-additive", "check super-additivity"));
  super->callback([&] {
    action = [&] {
      drv.execute("super-additive", src, [&](const Ccp& g) {
        Run run;
        auto rep = is_super_additive(g);
        run.result = super_additivity_to_json(rep);
        run.counts["listedCoalitions"] = g.listed_masks().size();
        run.table = std::string("superAdditive: ") + (rep.super_additive ? "yes" : "no") + "\n";
        if (rep.counterexample)
          run.table += "counterexample: S=" + to_string(rep.counterexample->s) +
                       " T=" + to_string(rep.counterexample->t) + "\n";
        return run;
      });
    };
  });

  CliResult res;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = 1;
    return res;
  }

  try {
    if (action) action();
    return drv.res;
  } catch (const CliError& e) {
    res.err = e.message + "\n";
    res.exit_code = e.code;
    return res;
  } catch (const GuardExceeded& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = 2;
    return res;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  CliResult res = dispatch(args);
  if (!res.out.empty()) std::cout << res.out;
  if (!res.err.empty()) std::cerr << res.err;
  return res.exit_code;
}

}  // namespace ccl
