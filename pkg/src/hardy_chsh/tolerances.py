"""Tolerance tiers used by the checks and the ``verify`` suite.

``HARDY_CHSH_TOL`` overrides the defaults. It accepts either a single float,
which replaces every tier, or a comma separated map such as
``algebraic=1e-13,chained=1e-11``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "HARDY_CHSH_TOL"

#: marginal probability below which conditioning is refused
NULL_EVENT = 1e-12
#: allowed deviation of a measurement vector from unit norm
UNIT_NORM = 1e-12
#: below this norm a constraint direction is treated as zero
DIRECTION = 1e-12


@dataclass(frozen=True)
class Tolerances:
    algebraic: float = 1e-12
    chained: float = 1e-10
    optimizer: float = 1e-9

    def scaled(self, value: float) -> "Tolerances":
        return Tolerances(value, value, value)

    def with_overrides(self, overrides: dict[str, float]) -> "Tolerances":
        names = {f.name for f in fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise ValueError(f"unknown tolerance tier(s): {sorted(unknown)}")
        return replace(self, **overrides)


def parse_overrides(text: str) -> dict[str, float] | float:
    text = text.strip()
    if "=" not in text:
        return float(text)
    out: dict[str, float] = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        out[key.strip()] = float(value)
    return out


def resolve(spec: str | None = None, base: Tolerances | None = None) -> Tolerances:
    """Return the tolerance tiers after applying ``spec`` or the environment variable."""
    base = base or Tolerances()
    if spec is None:
        spec = os.environ.get(ENV_VAR)
    if not spec:
        return base
    parsed = parse_overrides(spec)
    if isinstance(parsed, float):
        return base.scaled(parsed)
    return base.with_overrides(parsed)
