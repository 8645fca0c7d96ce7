"""Finite-perturbation sensitivity (elasticity) indices.

For a quantity Q and parameter p the index is estimated as

    mean over psi in Psi, psi != 0, of  [Q(p*(1+psi)) - Q(p)] / (Q(p) * psi)

The zero perturbation carries no information (0/0) and is skipped, both in the
sum and in the count.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .actuarial import price
from .continuous import basic_reproduction_number
from .errors import InvalidPerturbation, ValidationError, ZeroBaseline
from .model import EpidemicParams, Scenario

DEFAULT_PSIS = (-0.10, -0.05, 0.0, 0.05, 0.10)

QUANTITIES = ("R0", "P_gross", "Gamma", "Pi_end")

# Parameter id -> (scenario part, attribute name).
PARAMETERS = {
    "lambda": ("epidemic", "lam"),
    "alpha1": ("epidemic", "alpha1"),
    "alpha2": ("epidemic", "alpha2"),
    "beta": ("epidemic", "beta"),
    "gamma": ("epidemic", "gamma"),
    "mu1": ("epidemic", "mu1"),
    "mu2": ("epidemic", "mu2"),
    "interest_i": ("policy", "interest"),
    "omega": ("policy", "omega"),
    "phi": ("policy", "phi"),
    "benefit_H": ("policy", "benefit_h"),
    "benefit_D": ("policy", "benefit_d"),
    "benefit_Dstar": ("policy", "benefit_dstar"),
}


def _check_parameter(param: str) -> None:
    if param not in PARAMETERS:
        raise KeyError(f"unknown parameter {param!r}; expected one of {list(PARAMETERS)}")


def perturb(sc: Scenario, param: str, psi: float) -> Scenario:
    """Copy of ``sc`` with one parameter multiplied by (1 + psi)."""
    _check_parameter(param)
    part, attr = PARAMETERS[param]
    block = getattr(sc, part)
    new_block = replace(block, **{attr: getattr(block, attr) * (1.0 + psi)})
    try:
        return replace(sc, **{part: new_block})
    except ValidationError as exc:
        raise InvalidPerturbation(f"{param} scaled by {1 + psi:g}: {exc}") from exc


def evaluate_quantities(sc: Scenario) -> dict[str, float]:
    """All four quantities plus the month of deepest loss (key ``t_min``)."""
    report = price(sc)
    return {
        "R0": basic_reproduction_number(sc.epidemic),
        "P_gross": report.p_gross,
        "Gamma": report.gamma_capital,
        "Pi_end": report.pi_end,
        "t_min": report.t_min,
    }


def evaluate_quantity(sc: Scenario, q: str) -> float:
    if q == "R0":
        return basic_reproduction_number(sc.epidemic)
    if q not in QUANTITIES:
        raise KeyError(f"unknown quantity {q!r}; expected one of {QUANTITIES}")
    return evaluate_quantities(sc)[q]


def _nonzero(psis: Iterable[float]) -> list[float]:
    psis = [float(x) for x in psis if x != 0]
    if not psis:
        raise ValueError("perturbation set needs at least one nonzero entry")
    return psis


def _index(base: float, perturbed: Sequence[float], psis: Sequence[float], label: str) -> float:
    if base == 0:
        raise ZeroBaseline(f"{label} is zero at the baseline; relative change undefined")
    return sum((q - base) / base / psi for q, psi in zip(perturbed, psis)) / len(psis)


def sensitivity_index(sc: Scenario, q: str, param: str, psis: Iterable[float] = DEFAULT_PSIS) -> float:
    psis = _nonzero(psis)
    base = evaluate_quantity(sc, q)
    perturbed = [evaluate_quantity(perturb(sc, param, psi), q) for psi in psis]
    return _index(base, perturbed, psis, q)


def analytic_r0_sensitivities(p: EpidemicParams) -> dict[str, float]:
    """Exact elasticities of R0 = beta*lambda / (mu1*(alpha2 + gamma + mu2))."""
    out = {name: 0.0 for name in PARAMETERS}
    c = p.infected_outflow
    out.update(
        {
            "lambda": 1.0,
            "beta": 1.0,
            "mu1": -1.0,
            "alpha2": -p.alpha2 / c,
            "gamma": -p.gamma / c,
            "mu2": -p.mu2 / c,
        }
    )
    return out


@dataclass
class SensitivityTable:
    scenario: str
    psis: tuple[float, ...]
    entries: dict[tuple[str, str], float] = field(default_factory=dict)
    # Parameters whose perturbations moved the month of deepest loss.
    t_min_shifts: set[str] = field(default_factory=set)

    def __getitem__(self, key: tuple[str, str]) -> float:
        return self.entries[key]

    def rows(self) -> list[tuple[str, list[float]]]:
        return [(p, [self.entries[(q, p)] for q in QUANTITIES]) for p in PARAMETERS]


def sensitivity_table(sc: Scenario, psis: Iterable[float] = DEFAULT_PSIS) -> SensitivityTable:
    """Every (quantity, parameter) index, re-running simulation and pricing per perturbation."""
    psis = tuple(float(x) for x in psis)
    nonzero = _nonzero(psis)
    base = evaluate_quantities(sc)
    table = SensitivityTable(scenario=sc.name, psis=psis)
    for param in PARAMETERS:
        runs = [evaluate_quantities(perturb(sc, param, psi)) for psi in nonzero]
        for q in QUANTITIES:
            table.entries[(q, param)] = _index(base[q], [r[q] for r in runs], nonzero, q)
        if any(r["t_min"] != base["t_min"] for r in runs):
            table.t_min_shifts.add(param)
    return table
