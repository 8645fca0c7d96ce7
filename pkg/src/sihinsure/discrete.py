"""Local stability of the forward Euler map x -> x + dt * f(x).

The map has the same equilibria as the flow. Its Jacobian is I + dt*J, so
every statement here is about that matrix. The analysis describes the plain
``"euler"`` scheme; the ``"sequential"`` scheme is a different map.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .continuous import (
    Verdict,
    det3,
    basic_reproduction_number,
    characteristic_coefficients,
    check_coefficients,
    endemic_equilibrium,
    jacobian,
    R0_BAND,
)
from .model import EpidemicParams

# Half-width of the band around |z| = 1 treated as "on the unit circle".
UNIT_CIRCLE_TOL = 1e-10

THRESHOLD_NOTE = (
    "dt threshold is min{2/mu1, 2/((alpha2+gamma+mu2)(1-R0)), 2/(alpha1+mu2)}; "
    "the last term follows from the eigenvalue 1-(alpha1+mu2)dt"
)


class Method(enum.Enum):
    SCHUR_COHN = "schur-cohn"
    ROOT_CHECK = "root-check"


@dataclass(frozen=True)
class SchurCohn:
    """Jury/Schur-Cohn quantities for r^3 + a1 r^2 + a2 r + a3.

    All three roots lie inside the unit circle iff every field is positive.
    """

    cond_plus: float
    cond_minus: float
    cond_inner: float

    @property
    def satisfied(self) -> bool:
        return self.cond_plus > 0 and self.cond_minus > 0 and self.cond_inner > 0


@dataclass(frozen=True)
class EndemicDiscreteStability:
    a1: float
    a2: float
    a3: float
    schur_cohn: SchurCohn
    verdict: Verdict
    method: Method
    roots: Optional[tuple[complex, complex, complex]] = None


@dataclass(frozen=True)
class DfeDiscreteStability:
    eigenvalues: tuple[float, float, float]
    threshold: float
    verdict: Verdict
    note: str = THRESHOLD_NOTE


@dataclass(frozen=True)
class DiscreteStabilityReport:
    dt: float
    dfe: DfeDiscreteStability
    ee: Optional[EndemicDiscreteStability]

    @property
    def dfe_eigenvalues(self):
        return self.dfe.eigenvalues

    @property
    def dfe_dt_threshold(self) -> float:
        return self.dfe.threshold

    @property
    def dfe_verdict(self) -> Verdict:
        return self.dfe.verdict

    @property
    def ee_coefficients(self):
        return None if self.ee is None else (self.ee.a1, self.ee.a2, self.ee.a3)

    @property
    def ee_verdict(self) -> Optional[Verdict]:
        return None if self.ee is None else self.ee.verdict


def discrete_jacobian(p: EpidemicParams, dt: float, S: float, I: float, H: float) -> np.ndarray:
    return np.eye(3) + dt * jacobian(p, S, I, H)


def _modulus_verdict(moduli) -> Verdict:
    if any(abs(m - 1.0) <= UNIT_CIRCLE_TOL for m in moduli):
        return Verdict.NON_HYPERBOLIC
    if all(m < 1.0 for m in moduli):
        return Verdict.STABLE
    return Verdict.UNSTABLE


def dfe_dt_threshold(p: EpidemicParams) -> float:
    """Largest step keeping every DFE eigenvalue of the map inside the unit circle.

    Only meaningful for R0 < 1; the R0 term is dropped otherwise.
    """
    r0 = basic_reproduction_number(p)
    bounds = [2.0 / p.mu1, 2.0 / p.hospital_outflow]
    if r0 < 1:
        bounds.append(2.0 / (p.infected_outflow * (1.0 - r0)))
    return min(bounds)


def classify_dfe_discrete(p: EpidemicParams, dt: float) -> DfeDiscreteStability:
    r0 = basic_reproduction_number(p)
    eigenvalues = (
        1.0 - p.mu1 * dt,
        1.0 - p.infected_outflow * (1.0 - r0) * dt,
        1.0 - p.hospital_outflow * dt,
    )
    if abs(r0 - 1.0) <= R0_BAND:
        verdict = Verdict.NON_HYPERBOLIC
    else:
        verdict = _modulus_verdict([abs(r) for r in eigenvalues])
    return DfeDiscreteStability(eigenvalues, dfe_dt_threshold(p), verdict)


def euler_endemic_coefficients(p: EpidemicParams, dt: float) -> tuple[float, float, float]:
    """Closed-form characteristic coefficients of the map's Jacobian at the endemic state."""
    bI = p.beta * endemic_equilibrium(p).I
    first = bI + p.alpha1 + p.mu1 + p.mu2
    second = bI * (p.alpha1 + p.gamma + 2.0 * p.mu2) + p.mu1 * (p.alpha1 + p.mu2)
    third = bI * p.mu2 * (p.alpha1 + p.gamma + p.mu2)
    A1 = first * dt - 3.0
    A2 = second * dt**2 - 2.0 * first * dt + 3.0
    A3 = third * dt**3 - second * dt**2 + first * dt - 1.0
    return (A1, A2, A3)


def cubic_roots(a1: float, a2: float, a3: float) -> tuple[complex, complex, complex]:
    """Roots of r^3 + a1 r^2 + a2 r + a3 by Cardano / the trigonometric form."""
    shift = a1 / 3.0
    p = a2 - a1 * shift
    q = 2.0 * shift**3 - shift * a2 + a3
    if p == 0.0 and q == 0.0:
        return (complex(-shift),) * 3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc < 0:
        # Three distinct real roots; p < 0 here.
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * q / (p * m)))
        theta = math.acos(arg) / 3.0
        return tuple(complex(m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift) for k in range(3))
    # Pick the sign that avoids cancellation inside the cube root.
    w = -q / 2.0 - math.copysign(math.sqrt(disc), q)
    u = math.copysign(abs(w) ** (1.0 / 3.0), w)
    v = -p / (3.0 * u) if u != 0.0 else 0.0
    real = -(u + v) / 2.0 - shift
    imag = math.sqrt(3.0) / 2.0 * (u - v)
    return (complex(u + v - shift), complex(real, imag), complex(real, -imag))


def classify_ee_discrete(p: EpidemicParams, dt: float) -> Optional[EndemicDiscreteStability]:
    """Schur-Cohn test at the endemic equilibrium; None unless R0 > 1.

    When the Schur-Cohn conditions fail (or cancel to a wrong sign near the
    unit circle), the cubic's roots decide.
    ``cond_plus`` and ``cond_minus`` are evaluated as det(-dt*J) and det(2I + dt*J),
    which equal 1 + A1 + A2 + A3 and 1 - A1 + A2 - A3 without their cancellation.
    """
    if basic_reproduction_number(p) <= 1.0 + R0_BAND:
        return None
    ee = endemic_equilibrium(p)
    J = jacobian(p, *ee.as_tuple())
    A = euler_endemic_coefficients(p, dt)
    check_coefficients(A, characteristic_coefficients(np.eye(3) + dt * J), "Schur-Cohn")
    A1, A2, A3 = A
    sc = SchurCohn(
        cond_plus=-(dt**3) * det3(J),
        cond_minus=det3(2.0 * np.eye(3) + dt * J),
        cond_inner=(1.0 - A3 * A3) - abs(A2 - A1 * A3),
    )
    if sc.cond_minus > 0 and sc.cond_inner > 0:
        return EndemicDiscreteStability(A1, A2, A3, sc, Verdict.STABLE, Method.SCHUR_COHN)
    # Roots of the map's cubic are 1 + dt*r for the flow's roots r. Solving the
    # flow's cubic avoids the cancellation in A1..A3 when dt is small.
    roots = tuple(1.0 + dt * r for r in cubic_roots(*characteristic_coefficients(J)))
    verdict = _modulus_verdict([abs(r) for r in roots])
    return EndemicDiscreteStability(A1, A2, A3, sc, verdict, Method.ROOT_CHECK, roots)


def analyze_discrete(p: EpidemicParams, dt: float) -> DiscreteStabilityReport:
    return DiscreteStabilityReport(dt, classify_dfe_discrete(p, dt), classify_ee_discrete(p, dt))
