"""Threshold and local-stability analysis of the continuous SIH model."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import InternalInconsistency
from .model import EpidemicParams

# Relative band around R0 = 1 inside which the DFE is tagged non-hyperbolic.
R0_BAND = 1e-12
COEFF_RTOL = 1e-9


class EquilibriumKind(enum.Enum):
    DISEASE_FREE = "disease-free"
    ENDEMIC = "endemic"


class Verdict(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    NON_HYPERBOLIC = "non-hyperbolic"


@dataclass(frozen=True)
class EquilibriumPoint:
    S: float
    I: float
    H: float
    kind: EquilibriumKind

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.S, self.I, self.H)


@dataclass(frozen=True)
class NextGenDecomposition:
    """New-infection (F) and transition (V) matrices over the (I, H) block."""

    F: np.ndarray
    V: np.ndarray
    FVinv: np.ndarray

    @property
    def spectral_radius(self) -> float:
        return float(max(abs(np.linalg.eigvals(self.FVinv))))


class DfeStability(NamedTuple):
    eigenvalues: tuple[float, float, float]
    verdict: Verdict


@dataclass(frozen=True)
class RouthHurwitz:
    """Characteristic coefficients r^3 + a1 r^2 + a2 r + a3 at the endemic state."""

    a1: float
    a2: float
    a3: float
    verdict: Verdict

    @property
    def margin(self) -> float:
        """a1*a2 - a3; positive together with a1, a3 > 0 means stable."""
        return self.a1 * self.a2 - self.a3


@dataclass(frozen=True)
class ContinuousStabilityReport:
    r0: float
    dfe: EquilibriumPoint
    dfe_eigenvalues: tuple[float, float, float]
    dfe_verdict: Verdict
    ee: Optional[EquilibriumPoint]
    ee_stability: Optional[RouthHurwitz]

    @property
    def rh_coefficients(self) -> Optional[tuple[float, float, float]]:
        if self.ee_stability is None:
            return None
        rh = self.ee_stability
        return (rh.a1, rh.a2, rh.a3)

    @property
    def rh_product_margin(self) -> Optional[float]:
        return None if self.ee_stability is None else self.ee_stability.margin

    @property
    def ee_verdict(self) -> Optional[Verdict]:
        return None if self.ee_stability is None else self.ee_stability.verdict


def basic_reproduction_number(p: EpidemicParams) -> float:
    return p.beta * p.lam / (p.mu1 * p.infected_outflow)


def next_generation(p: EpidemicParams) -> NextGenDecomposition:
    F = np.array([[p.beta * p.lam / p.mu1, 0.0], [0.0, 0.0]])
    V = np.array([[p.infected_outflow, 0.0], [-p.gamma, p.hospital_outflow]])
    # V is lower triangular, so invert it by hand.
    Vinv = np.array(
        [
            [1.0 / V[0, 0], 0.0],
            [p.gamma / (V[0, 0] * V[1, 1]), 1.0 / V[1, 1]],
        ]
    )
    return NextGenDecomposition(F=F, V=V, FVinv=F @ Vinv)


def disease_free_equilibrium(p: EpidemicParams) -> EquilibriumPoint:
    return EquilibriumPoint(p.lam / p.mu1, 0.0, 0.0, EquilibriumKind.DISEASE_FREE)


def endemic_equilibrium(p: EpidemicParams) -> Optional[EquilibriumPoint]:
    """Endemic steady state, or None when R0 < 1."""
    r0 = basic_reproduction_number(p)
    if r0 < 1:
        return None
    excess = 1.0 - 1.0 / r0
    scale = p.lam / (p.mu2 * (p.alpha1 + p.gamma + p.mu2))
    return EquilibriumPoint(
        S=p.infected_outflow / p.beta,
        I=scale * p.hospital_outflow * excess,
        H=scale * p.gamma * excess,
        kind=EquilibriumKind.ENDEMIC,
    )


def jacobian(p: EpidemicParams, S: float, I: float, H: float) -> np.ndarray:
    return np.array(
        [
            [-p.beta * I - p.mu1, -p.beta * S + p.alpha2, p.alpha1],
            [p.beta * I, p.beta * S - p.infected_outflow, 0.0],
            [0.0, p.gamma, -p.hospital_outflow],
        ]
    )


def characteristic_coefficients(J: np.ndarray) -> tuple[float, float, float]:
    """(c1, c2, c3) with det(rI - J) = r^3 + c1 r^2 + c2 r + c3, for 3x3 J."""
    c1 = -(J[0, 0] + J[1, 1] + J[2, 2])
    c2 = (
        J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        + J[0, 0] * J[2, 2] - J[0, 2] * J[2, 0]
        + J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1]
    )
    c3 = -det3(J)
    return (float(c1), float(c2), float(c3))


def det3(J: np.ndarray) -> float:
    return float(
        J[0, 0] * (J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1])
        - J[0, 1] * (J[1, 0] * J[2, 2] - J[1, 2] * J[2, 0])
        + J[0, 2] * (J[1, 0] * J[2, 1] - J[1, 1] * J[2, 0])
    )


def check_coefficients(
    claimed: tuple[float, ...], reference: tuple[float, ...], what: str, rtol: float = COEFF_RTOL
) -> None:
    """Raise InternalInconsistency unless the two coefficient triples agree.

    The comparison is relative to the largest coefficient magnitude, so a
    coefficient that happens to be near zero is not held to a relative bound
    it cannot meet in floating point.
    """
    scale = max(max(abs(c) for c in reference), 1e-300)
    for k, (a, b) in enumerate(zip(claimed, reference), start=1):
        if abs(a - b) > rtol * scale:
            raise InternalInconsistency(
                f"{what}: coefficient {k} is {a!r} by formula but {b!r} from the Jacobian"
            )


def classify_dfe(p: EpidemicParams) -> DfeStability:
    r0 = basic_reproduction_number(p)
    eigenvalues = (-p.mu1, -p.hospital_outflow, p.infected_outflow * (r0 - 1.0))
    if abs(r0 - 1.0) <= R0_BAND:
        verdict = Verdict.NON_HYPERBOLIC
    elif r0 < 1:
        verdict = Verdict.STABLE
    else:
        verdict = Verdict.UNSTABLE
    return DfeStability(eigenvalues, verdict)


def routh_hurwitz_coefficients(p: EpidemicParams) -> tuple[float, float, float]:
    """Closed-form (A1, A2, A3) at the endemic equilibrium, written in s = R0 - 1."""
    b, lam, a1, g, m1, m2 = p.beta, p.lam, p.alpha1, p.gamma, p.mu1, p.mu2
    s = basic_reproduction_number(p) - 1.0
    bl = b * lam
    denom = m2 * (a1 + g + m2) * (s + 1.0)
    A1 = (
        ((a1 * a1 + (g + m1) * a1 + bl + m1 * g) * s + (a1 + m1) * (a1 + g)) * m2
        + (s + 1.0) * m2 * m2 * (m2 + g + 2.0 * a1 + m1)
        + a1 * bl * s
    ) / denom
    A2 = (
        (a1 + m2)
        * (
            (s + 1.0) * m1 * m2 * m2
            + (((a1 + g) * m1 + 2.0 * bl) * s + (a1 + g) * m1) * m2
            + s * bl * (a1 + g)
        )
        / denom
    )
    A3 = bl * (a1 + m2) * s / (s + 1.0)
    return (A1, A2, A3)


def classify_ee(p: EpidemicParams) -> Optional[RouthHurwitz]:
    """Routh-Hurwitz test at the endemic equilibrium; None unless R0 > 1.

    The closed-form coefficients are cross-checked against the characteristic
    polynomial of the Jacobian evaluated at the equilibrium.
    """
    r0 = basic_reproduction_number(p)
    if r0 <= 1.0 + R0_BAND:
        return None
    ee = endemic_equilibrium(p)
    A = routh_hurwitz_coefficients(p)
    check_coefficients(A, characteristic_coefficients(jacobian(p, *ee.as_tuple())), "Routh-Hurwitz")
    A1, A2, A3 = A
    margin = A1 * A2 - A3
    if A1 > 0 and A3 > 0 and margin > 0:
        verdict = Verdict.STABLE
    elif A3 == 0 or margin == 0:
        verdict = Verdict.NON_HYPERBOLIC
    else:
        verdict = Verdict.UNSTABLE
    return RouthHurwitz(A1, A2, A3, verdict)


def analyze_continuous(p: EpidemicParams) -> ContinuousStabilityReport:
    dfe = classify_dfe(p)
    return ContinuousStabilityReport(
        r0=basic_reproduction_number(p),
        dfe=disease_free_equilibrium(p),
        dfe_eigenvalues=dfe.eigenvalues,
        dfe_verdict=dfe.verdict,
        ee=endemic_equilibrium(p),
        ee_stability=classify_ee(p),
    )
