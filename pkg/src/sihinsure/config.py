"""Flat ``key = value`` scenario files.

One assignment per line; ``#`` starts a comment; blank lines are ignored.
Keys not given fall back to the shipped disease-free scenario. ``scheme``
defaults to ``sequential`` here, which is the scheme that reproduces the
reference pricing and sensitivity figures.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Iterable, Mapping

from .continuous import basic_reproduction_number
from .errors import ParseError, ValidationError
from .model import EpidemicParams, PolicyParams, Scenario, SihState, default_scenarios

CONFIG_DEFAULT_SCHEME = "sequential"

# Config key -> (scenario part, attribute).
KEYS = {
    "lambda": ("epidemic", "lam"),
    "alpha1": ("epidemic", "alpha1"),
    "alpha2": ("epidemic", "alpha2"),
    "beta": ("epidemic", "beta"),
    "gamma": ("epidemic", "gamma"),
    "mu1": ("epidemic", "mu1"),
    "mu2": ("epidemic", "mu2"),
    "S0": ("initial", "S"),
    "I0": ("initial", "I"),
    "H0": ("initial", "H"),
    "D0": ("initial", "D"),
    "Dstar0": ("initial", "Dstar"),
    "T": ("policy", "horizon"),
    "dt": ("policy", "dt"),
    "interest_i": ("policy", "interest"),
    "omega": ("policy", "omega"),
    "phi": ("policy", "phi"),
    "benefit_H": ("policy", "benefit_h"),
    "benefit_D": ("policy", "benefit_d"),
    "benefit_Dstar": ("policy", "benefit_dstar"),
    "scheme": (None, "scheme"),
}


def _convert(key: str, raw: str, line: int | None):
    if key == "scheme":
        return raw
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"{key}: expected a number, got {raw!r}", line) from None
    if key == "T":
        if not (math.isfinite(value) and value.is_integer()):
            raise ValidationError(f"T must be a whole number of months, got {raw!r}")
        return int(value)
    return value


def _parse_lines(text: str) -> dict[str, tuple[str, int]]:
    found: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key or not raw:
            raise ParseError(f"expected 'key = value', got {line.strip()!r}", lineno)
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in found:
            raise ParseError(f"duplicate key {key!r} (first set on line {found[key][1]})", lineno)
        found[key] = (raw, lineno)
    return found


def parse_overrides(pairs: Iterable[str]) -> dict[str, str]:
    """Split ``KEY=VALUE`` strings from the command line."""
    out = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not raw:
            raise ParseError(f"override must look like KEY=VALUE, got {pair!r}")
        if key not in KEYS:
            raise ParseError(f"unknown override key {key!r}")
        out[key] = raw
    return out


def parse_config(text: str, overrides: Mapping[str, str] | None = None) -> Scenario:
    """Build a validated Scenario from config text plus optional raw overrides."""
    values: dict[str, object] = {}
    for key, (raw, lineno) in _parse_lines(text).items():
        values[key] = _convert(key, raw, lineno)
    for key, raw in (overrides or {}).items():
        if key not in KEYS:
            raise ParseError(f"unknown override key {key!r}")
        values[key] = _convert(key, raw, None)

    base = default_scenarios()[0]
    parts = {
        "epidemic": base.epidemic.__dict__.copy(),
        "policy": base.policy.__dict__.copy(),
        "initial": base.initial._asdict(),
    }
    scheme = CONFIG_DEFAULT_SCHEME
    for key, value in values.items():
        part, attr = KEYS[key]
        if part is None:
            scheme = value
        else:
            parts[part][attr] = value
    sc = Scenario(
        EpidemicParams(**parts["epidemic"]),
        PolicyParams(**parts["policy"]),
        SihState(**parts["initial"]),
        scheme,
    )
    name = "endemic" if basic_reproduction_number(sc.epidemic) > 1 else "disease-free"
    return replace(sc, name=name)


def format_config(sc: Scenario) -> str:
    """Config text that parses back to an equal Scenario."""
    parts = {"epidemic": sc.epidemic, "policy": sc.policy, "initial": sc.initial}
    lines = []
    for key, (part, attr) in KEYS.items():
        if part is None:
            lines.append(f"{key} = {sc.scheme}")
        else:
            lines.append(f"{key} = {getattr(parts[part], attr)!r}")
    return "\n".join(lines) + "\n"
