"""Exact solvers for finite contract choice problems.

Instances are finite coalition-payoff tables; analyses enumerate outcomes
exactly (rational arithmetic, deterministic order). The heavy lifting lives in
the compiled extension; this wrapper turns its JSON payloads into dicts.
"""

import json

from . import _core
from ._core import (
    GuardExceeded,
    Instance,
    builtin,
    builtin_names,
    parse_generator_spec,
    parse_instance,
    random_instance,
    run_cli,
)

__all__ = [
    "GuardExceeded",
    "Instance",
    "builtin",
    "builtin_names",
    "parse_generator_spec",
    "parse_instance",
    "random_instance",
    "run_cli",
    "run",
    "outcomes",
    "core",
    "strict_core",
    "pareto",
    "individually_stable",
    "weak_bargaining",
    "properties",
    "construct",
    "super_additive",
    "ttc",
]


def run(*args):
    """Run a CLI command in-process and return the parsed report."""
    code, out, err = run_cli(list(args))
    if not out:
        raise RuntimeError(err.strip() or f"command failed with exit code {code}")
    report = json.loads(out)
    report["exitCode"] = code
    return report


def outcomes(g, max_agents=8):
    return json.loads(_core.outcomes_json(g, max_agents))


def core(g, max_agents=8):
    return json.loads(_core.core_json(g, max_agents))


def strict_core(g, max_agents=8):
    return json.loads(_core.strict_core_json(g, max_agents))


def pareto(g, mode="outcome-domination", max_agents=8):
    return json.loads(_core.pareto_json(g, mode, max_agents))


def individually_stable(g, variant="literal", max_agents=8):
    return json.loads(_core.individually_stable_json(g, variant, max_agents))


def weak_bargaining(g, classical=False, max_agents=8):
    return json.loads(_core.weak_bargaining_json(g, classical, max_agents))


def properties(g, which, max_agents=8):
    return json.loads(_core.properties_json(g, which, max_agents))


def construct(g, theorem, max_agents=8):
    return json.loads(_core.construct_json(g, theorem, max_agents))


def super_additive(g):
    return json.loads(_core.super_additive_json(g))


def ttc(builtin="", spec="", max_agents=8):
    return json.loads(_core.ttc_json(builtin, spec, max_agents))
