"""Premium, profit and start-up capital for the epidemic-linked health cover.

Cash-flow timing on the monthly grid, with v = 1/(1 + i):

* premiums are collected at the start of month t+1 (time t, t = 0..T-1) from
  every susceptible or infected individual; the hospitalised pay nothing;
* at the end of month t (time t, t = 1..T) the insurer pays ``benefit_h`` per
  hospitalised head and a lump sum per death recorded during (t-1, t].

All amounts are present values at time 0. Sums run in increasing t in plain
double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateBase, GridMismatch
from .model import PolicyParams, Scenario, Trajectory
from .simulator import simulate


@dataclass(frozen=True)
class CapitalSummary:
    pi_min: float
    t_min: int
    gamma_capital: float
    asset_series: np.ndarray
    pi_end: float
    profit_pct: Optional[float]

    @property
    def capital_needed(self) -> bool:
        return self.pi_min < 0


@dataclass(frozen=True)
class PricingReport:
    p_net: float
    p_gross: float
    premium_base: float
    total_benefit_pv: float
    profit_series: np.ndarray
    pi_min: float
    t_min: int
    gamma_capital: float
    asset_series: np.ndarray
    pi_end: float
    profit_pct: Optional[float]

    @property
    def capital_needed(self) -> bool:
        return self.pi_min < 0


def _monthly(traj: Trajectory, pol: PolicyParams) -> np.ndarray:
    k = traj.steps_per_month
    if abs(k * traj.dt - 1.0) > 1e-9 or len(traj) != pol.horizon * k + 1:
        raise GridMismatch(
            f"trajectory has {len(traj)} states at dt={traj.dt}, "
            f"expected {pol.horizon}*{k}+1 for horizon T={pol.horizon}"
        )
    return traj.monthly()


def _discount_factors(pol: PolicyParams) -> np.ndarray:
    return pol.discount ** np.arange(pol.horizon + 1)


def _partial_bases(months: np.ndarray, pol: PolicyParams) -> np.ndarray:
    """Entry t is sum_{tau<t} v^tau (S + I)(tau), for t = 0..T."""
    vt = _discount_factors(pol)
    payers = months[:-1, 0] + months[:-1, 1]
    return np.concatenate(([0.0], np.cumsum(vt[:-1] * payers)))


def _cumulative_benefits(months: np.ndarray, pol: PolicyParams) -> np.ndarray:
    """Entry t is the present value of all benefits paid through the end of month t."""
    vt = _discount_factors(pol)
    monthly = (
        pol.benefit_h * months[1:, 2]
        + pol.benefit_d * np.diff(months[:, 3])
        + pol.benefit_dstar * np.diff(months[:, 4])
    )
    return np.concatenate(([0.0], np.cumsum(vt[1:] * monthly)))


def premium_base(traj: Trajectory, pol: PolicyParams) -> float:
    """Discounted head count of premium payers, sum_{t=0}^{T-1} v^t (S + I)."""
    return float(_partial_bases(_monthly(traj, pol), pol)[-1])


def total_benefit_pv(traj: Trajectory, pol: PolicyParams, through_month: int | None = None) -> float:
    """Present value of benefits paid through the end of ``through_month`` (default T)."""
    t = pol.horizon if through_month is None else through_month
    if not 0 <= t <= pol.horizon:
        raise ValueError(f"through_month must lie in 0..{pol.horizon}, got {t}")
    return float(_cumulative_benefits(_monthly(traj, pol), pol)[t])


def net_premium(traj: Trajectory, pol: PolicyParams) -> float:
    """Equivalence-principle premium: benefit PV over the premium base."""
    base = premium_base(traj, pol)
    if base == 0:
        raise DegenerateBase("no susceptible or infected individuals ever pay a premium")
    return total_benefit_pv(traj, pol) / base


def gross_premium(p_net: float, pol: PolicyParams) -> float:
    return (1.0 + pol.omega + pol.phi) * p_net


def profit_series(traj: Trajectory, pol: PolicyParams, p_net: float) -> np.ndarray:
    """Present value of cumulative profit at the end of each month 0..T.

    Gross premium collected minus the operational-cost share minus benefits
    paid; month 0 is zero by definition.
    """
    months = _monthly(traj, pol)
    bases = _partial_bases(months, pol)
    gross = gross_premium(p_net, pol) * bases
    cost = pol.omega * p_net * bases
    return gross - cost - _cumulative_benefits(months, pol)


def capital_and_percentage(profits: np.ndarray, pol: PolicyParams) -> CapitalSummary:
    """Deepest loss, when it happens, the start-up capital and the profit ratio.

    The capital is -pi_min * v**t_min. Because ``profits`` are already present
    values, the asset series Gamma + profit dips to pi_min * (1 - v**t_min) at
    t_min rather than to zero whenever i > 0.
    """
    profits = np.asarray(profits, dtype=float)
    if profits.shape != (pol.horizon + 1,):
        raise GridMismatch(f"expected {pol.horizon + 1} monthly profits, got {profits.shape}")
    t_min = int(np.argmin(profits))  # first index on ties
    pi_min = float(profits[t_min])
    gamma = -pi_min * pol.discount**t_min if pi_min < 0 else 0.0
    pi_end = float(profits[-1])
    pct = pi_end / gamma * 100.0 if gamma > 0 else None
    return CapitalSummary(pi_min, t_min, gamma, gamma + profits, pi_end, pct)


def price_trajectory(traj: Trajectory, pol: PolicyParams) -> PricingReport:
    p_net = net_premium(traj, pol)
    profits = profit_series(traj, pol, p_net)
    cap = capital_and_percentage(profits, pol)
    return PricingReport(
        p_net=p_net,
        p_gross=gross_premium(p_net, pol),
        premium_base=premium_base(traj, pol),
        total_benefit_pv=total_benefit_pv(traj, pol),
        profit_series=profits,
        pi_min=cap.pi_min,
        t_min=cap.t_min,
        gamma_capital=cap.gamma_capital,
        asset_series=cap.asset_series,
        pi_end=cap.pi_end,
        profit_pct=cap.profit_pct,
    )


def price(sc: Scenario) -> PricingReport:
    """Simulate the scenario and price the cover on the resulting trajectory."""
    return price_trajectory(simulate(sc), sc.policy)
