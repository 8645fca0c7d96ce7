"""Fixed-step integration of the five-equation system on the grid t_n = n*dt."""

from __future__ import annotations

import numpy as np

from .errors import NegativeStateProduced
from .model import EpidemicParams, Scenario, SihState, Trajectory, vector_field


def _euler(p: EpidemicParams, x, dt: float):
    d = vector_field(p, x)
    return (x[0] + dt * d[0], x[1] + dt * d[1], x[2] + dt * d[2], x[3] + dt * d[3], x[4] + dt * d[4])


def _sequential(p: EpidemicParams, x, dt: float):
    S, I, H, D, Ds = x
    S = S + dt * (p.lam - p.beta * S * I + p.alpha1 * H + p.alpha2 * I - p.mu1 * S)
    I = I + dt * (p.beta * S * I - p.infected_outflow * I)
    H = H + dt * (p.gamma * I - p.hospital_outflow * H)
    D = D + dt * p.mu1 * S
    Ds = Ds + dt * (p.mu2 * I + p.mu2 * H)
    return (S, I, H, D, Ds)


def _rk4(p: EpidemicParams, x, dt: float):
    k1 = vector_field(p, x)
    k2 = vector_field(p, [a + 0.5 * dt * b for a, b in zip(x, k1)])
    k3 = vector_field(p, [a + 0.5 * dt * b for a, b in zip(x, k2)])
    k4 = vector_field(p, [a + dt * b for a, b in zip(x, k3)])
    return tuple(a + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4) for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4))


_STEPPERS = {"euler": _euler, "sequential": _sequential}


def _check(x, step: int) -> None:
    if x[0] < 0 or x[1] < 0 or x[2] < 0:
        raise NegativeStateProduced(
            f"step {step} produced a negative compartment (S, I, H) = ({x[0]!r}, {x[1]!r}, {x[2]!r}); "
            "reduce dt",
            step=step,
        )


def euler_step(p: EpidemicParams, s: SihState, dt: float) -> SihState:
    """s + dt * vector_field(p, s) for all five components."""
    x = _euler(p, s, dt)
    _check(x, 1)
    return SihState(*x)


def sequential_step(p: EpidemicParams, s: SihState, dt: float) -> SihState:
    """One Euler sweep in the order S, I, H, D, Dstar using freshly updated values."""
    x = _sequential(p, s, dt)
    _check(x, 1)
    return SihState(*x)


def _integrate(step, p: EpidemicParams, initial: SihState, dt: float, n_steps: int) -> Trajectory:
    rows = [tuple(float(v) for v in initial)]
    x = rows[0]
    for n in range(1, n_steps + 1):
        x = step(p, x, dt)
        _check(x, n)
        rows.append(x)
    return Trajectory(dt, np.array(rows))


def simulate(sc: Scenario, dt: float | None = None) -> Trajectory:
    """Integrate the scenario over its horizon with the scenario's scheme.

    ``dt`` overrides the policy step size (used for step-halving studies).
    Raises NegativeStateProduced with the offending step index.
    """
    dt = sc.policy.dt if dt is None else dt
    n_steps = sc.policy.horizon * int(round(1.0 / dt))
    return _integrate(_STEPPERS[sc.scheme], sc.epidemic, sc.initial, dt, n_steps)


def reference_simulate(sc: Scenario, dt: float | None = None) -> Trajectory:
    """Classical fourth-order Runge-Kutta on the same grid; a numerical oracle."""
    dt = sc.policy.dt if dt is None else dt
    n_steps = sc.policy.horizon * int(round(1.0 / dt))
    return _integrate(_rk4, sc.epidemic, sc.initial, dt, n_steps)
