"""Parameter and state types, the SIH vector field and the shipped scenarios.

Time is measured in months throughout. The epidemic block is

    dS/dt = lambda - beta*S*I + alpha1*H + alpha2*I - mu1*S
    dI/dt = beta*S*I - (alpha2 + gamma + mu2)*I
    dH/dt = gamma*I - (alpha1 + mu2)*H

and two cumulative death counters ride along with it:

    dD/dt     = mu1*S            (natural deaths, susceptibles only)
    dDstar/dt = mu2*(I + H)      (deaths caused by the disease)

Hospitalised individuals are quarantined, so only I transmits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import NamedTuple

import numpy as np

from .errors import ValidationError

SCHEMES = ("euler", "sequential")

# Tolerance on 1/dt being a whole number of steps per month.
_STEP_COUNT_TOL = 1e-9


@dataclass(frozen=True)
class EpidemicParams:
    """The seven model rates. ``lam`` is the birth rate (individuals/month)."""

    lam: float
    alpha1: float
    alpha2: float
    beta: float
    gamma: float
    mu1: float
    mu2: float

    @property
    def infected_outflow(self) -> float:
        """alpha2 + gamma + mu2, the total exit rate from I."""
        return self.alpha2 + self.gamma + self.mu2

    @property
    def hospital_outflow(self) -> float:
        """alpha1 + mu2, the total exit rate from H."""
        return self.alpha1 + self.mu2

    def validate(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"{f.name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class PolicyParams:
    """Insurance horizon, step size and financial constants.

    ``horizon`` is T in months; ``interest`` the monthly rate i; ``omega`` and
    ``phi`` the operational-cost and profit surcharges on the net premium;
    ``benefit_h`` is paid per hospitalised head per month, ``benefit_d`` and
    ``benefit_dstar`` once per natural and disease death.
    """

    horizon: int
    dt: float
    interest: float
    omega: float
    phi: float
    benefit_h: float
    benefit_d: float
    benefit_dstar: float

    @property
    def discount(self) -> float:
        """v = 1/(1 + i)."""
        return 1.0 / (1.0 + self.interest)

    @property
    def steps_per_month(self) -> int:
        return int(round(1.0 / self.dt))

    @property
    def n_steps(self) -> int:
        return self.horizon * self.steps_per_month

    def validate(self) -> None:
        if isinstance(self.horizon, bool) or int(self.horizon) != self.horizon or self.horizon < 1:
            raise ValidationError(f"horizon T must be a positive integer, got {self.horizon!r}")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValidationError(f"dt must be positive, got {self.dt!r}")
        per_month = 1.0 / self.dt
        if per_month < 1 - _STEP_COUNT_TOL or abs(per_month - round(per_month)) > _STEP_COUNT_TOL * per_month:
            raise ValidationError(f"1/dt must be a natural number, got dt={self.dt!r}")
        if not (math.isfinite(self.interest) and self.interest > -1):
            raise ValidationError(f"interest_i must exceed -1, got {self.interest!r}")
        for name in ("omega", "phi", "benefit_h", "benefit_d", "benefit_dstar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError(f"{name} must be nonnegative, got {value!r}")


class SihState(NamedTuple):
    S: float
    I: float
    H: float
    D: float = 0.0
    Dstar: float = 0.0

    @property
    def population(self) -> float:
        return self.S + self.I + self.H


@dataclass(frozen=True)
class Trajectory:
    """States on the grid t_n = n*dt, stored as an (n_steps + 1, 5) array.

    Columns are S, I, H, D, Dstar. Integer month t sits at row
    ``t * steps_per_month``.
    """

    dt: float
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 5:
            raise ValueError(f"trajectory values must have shape (n, 5), got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.shape[0]

    def state(self, n: int) -> SihState:
        return SihState(*(float(x) for x in self.values[n]))

    @property
    def steps_per_month(self) -> int:
        return int(round(1.0 / self.dt))

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self)) * self.dt

    def monthly(self) -> np.ndarray:
        """Rows at integer months 0, 1, 2, ..."""
        return self.values[:: self.steps_per_month]

    def at_month(self, t: int) -> SihState:
        return self.state(t * self.steps_per_month)

    S = property(lambda self: self.values[:, 0])
    I = property(lambda self: self.values[:, 1])
    H = property(lambda self: self.values[:, 2])
    D = property(lambda self: self.values[:, 3])
    Dstar = property(lambda self: self.values[:, 4])


@dataclass(frozen=True)
class Scenario:
    """A full model run: rates, policy terms, initial state and stepping scheme.

    ``scheme`` selects how one step is taken. ``"euler"`` is the plain forward
    Euler map (all right-hand sides from the old state). ``"sequential"``
    advances the components in the order S, I, H, D, Dstar, each update reading
    the components already advanced in the same step.
    """

    epidemic: EpidemicParams
    policy: PolicyParams
    initial: SihState
    scheme: str = "euler"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        self.epidemic.validate()
        self.policy.validate()
        for label, value in zip(SihState._fields, self.initial):
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError(f"initial {label} must be nonnegative, got {value!r}")
        if self.scheme not in SCHEMES:
            raise ValidationError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")


def vector_field(p: EpidemicParams, s: SihState) -> tuple[float, float, float, float, float]:
    """Time derivatives (dS, dI, dH, dD, dDstar) in individuals/month."""
    S, I, H = s[0], s[1], s[2]
    infection = p.beta * S * I
    return (
        p.lam - infection + p.alpha1 * H + p.alpha2 * I - p.mu1 * S,
        infection - p.infected_outflow * I,
        p.gamma * I - p.hospital_outflow * H,
        p.mu1 * S,
        p.mu2 * I + p.mu2 * H,
    )


DISEASE_FREE_BETA = 0.00100
ENDEMIC_BETA = 0.00300


def _base_epidemic(beta: float) -> EpidemicParams:
    return EpidemicParams(
        lam=4.21492, alpha1=0.05, alpha2=0.05, beta=beta, gamma=0.66, mu1=0.00745, mu2=0.01829
    )


DEFAULT_POLICY = PolicyParams(
    horizon=500,
    dt=0.05,
    interest=0.00233,
    omega=0.1,
    phi=0.05,
    benefit_h=2000.0,
    benefit_d=40000.0,
    benefit_dstar=50000.0,
)

DEFAULT_INITIAL = SihState(S=2999.0, I=1.0, H=0.0, D=0.0, Dstar=0.0)


def default_scenarios(scheme: str = "euler") -> tuple[Scenario, Scenario]:
    """The disease-free (beta = 0.001) and endemic (beta = 0.003) scenarios.

    Both share every other rate, the 500-month horizon at dt = 0.05 and the
    initial population of 2999 susceptibles plus one infected.
    """
    return (
        Scenario(_base_epidemic(DISEASE_FREE_BETA), DEFAULT_POLICY, DEFAULT_INITIAL, scheme, "disease-free"),
        Scenario(_base_epidemic(ENDEMIC_BETA), DEFAULT_POLICY, DEFAULT_INITIAL, scheme, "endemic"),
    )
