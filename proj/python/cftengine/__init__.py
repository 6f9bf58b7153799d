"""Finite models of class field theory and higher-rank valuations."""

import json

from ._cftengine import (
    InputError,
    LaurentElement,
    LaurentField,
    WindowOverflow,
    ZeroInverse,
    ZeroValuation,
    catalog_names,
    group_order,
    rlo_compare,
    run_scenario,
)

__all__ = [
    "InputError",
    "LaurentElement",
    "LaurentField",
    "WindowOverflow",
    "ZeroInverse",
    "ZeroValuation",
    "catalog_names",
    "group_order",
    "rlo_compare",
    "run",
    "run_scenario",
]


def run(kind, scenario, seed=0, certify=False):
    """Run a scenario (dict or JSON text) and return (report dict, passed)."""
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    report, passed = run_scenario(kind, text, seed, certify)
    return json.loads(report), passed
