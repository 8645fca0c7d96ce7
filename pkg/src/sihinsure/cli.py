"""Command-line entry point: ``sihinsure <command> [options]``.

Commands read one scenario (``--config`` plus ``--set`` overrides) and write
their files under ``--out``. ``report`` runs the shipped disease-free and
endemic incidence rates on top of the configured scenario.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from . import __version__
from .actuarial import PricingReport, price
from .config import parse_config, parse_overrides
from .continuous import ContinuousStabilityReport, Verdict, analyze_continuous
from .discrete import DiscreteStabilityReport, analyze_discrete
from .errors import SihError
from .model import DISEASE_FREE_BETA, ENDEMIC_BETA, Scenario
from .sensitivity import DEFAULT_PSIS, QUANTITIES, SensitivityTable, sensitivity_table
from .simulator import simulate

EXIT_IO = 5

TRAJECTORY_HEADER = "t,S,I,H,D,Dstar"
FINANCIAL_HEADER = "month,profit_pv,asset_pv"
SENSITIVITY_HEADER = "parameter," + ",".join(QUANTITIES)

MU1_NOTE = (
    "note: the R0/mu1 cell is the mean of -1/(1+psi) over the nonzero psi "
    "(-1.00630 for the default set); the reference table lists -1.00224, "
    "which neither this estimator nor the exact elasticity (-1) reproduces."
)


def _g(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------- text output


def _verdict_phrase(v: Verdict) -> str:
    return {
        Verdict.STABLE: "locally asymptotically stable",
        Verdict.UNSTABLE: "unstable",
        Verdict.NON_HYPERBOLIC: "non-hyperbolic",
    }[v]


def analysis_summary(cont: ContinuousStabilityReport) -> str:
    dfe = f"DFE {_verdict_phrase(cont.dfe_verdict)}"
    if cont.ee_verdict is None:
        ee = "no endemic equilibrium"
    else:
        ee = f"EE {_verdict_phrase(cont.ee_verdict)}"
    return f"R0 = {cont.r0:.5f}, {dfe}, {ee}"


def _analysis_json(sc: Scenario, cont: ContinuousStabilityReport, disc: DiscreteStabilityReport) -> dict:
    def point(p):
        return None if p is None else {"S": p.S, "I": p.I, "H": p.H}

    def verdict(v):
        return None if v is None else v.value

    out = {
        "scenario": sc.name,
        "continuous": {
            "r0": cont.r0,
            "dfe": point(cont.dfe),
            "dfe_eigenvalues": list(cont.dfe_eigenvalues),
            "dfe_verdict": verdict(cont.dfe_verdict),
            "ee": point(cont.ee),
            "routh_hurwitz": None if cont.rh_coefficients is None else list(cont.rh_coefficients),
            "ee_verdict": verdict(cont.ee_verdict),
        },
        "discrete": {
            "dt": disc.dt,
            "dfe_eigenvalues": list(disc.dfe_eigenvalues),
            "dfe_dt_threshold": disc.dfe_dt_threshold,
            "dfe_verdict": verdict(disc.dfe_verdict),
            "dfe_note": disc.dfe.note,
            "schur_cohn_coefficients": None if disc.ee_coefficients is None else list(disc.ee_coefficients),
            "ee_verdict": verdict(disc.ee_verdict),
            "ee_method": None if disc.ee is None else disc.ee.method.value,
        },
    }
    if disc.ee is not None:
        sc_q = disc.ee.schur_cohn
        out["discrete"]["schur_cohn"] = {
            "cond_plus": sc_q.cond_plus,
            "cond_minus": sc_q.cond_minus,
            "cond_inner": sc_q.cond_inner,
        }
    return out


def _money(x: float) -> str:
    return f"{x:,.0f}"


def _pct(x) -> str:
    return "n/a" if x is None else f"{x:.5f}%"


def table4(scenarios: list[Scenario], reports: list[PricingReport]) -> str:
    conts = [analyze_continuous(sc.epidemic) for sc in scenarios]

    def limit(c, attr):
        point = c.ee if c.ee is not None else c.dfe
        return f"{getattr(point, attr):.0f}"

    rows = [
        ("beta", [f"{sc.epidemic.beta:.5f}" for sc in scenarios]),
        ("R0", [f"{c.r0:.5f}" for c in conts]),
        ("S_inf", [limit(c, "S") for c in conts]),
        ("I_inf", [limit(c, "I") for c in conts]),
        ("H_inf", [limit(c, "H") for c in conts]),
        ("P_gross", [_money(r.p_gross) for r in reports]),
        ("Pi_min", [_money(r.pi_min) for r in reports]),
        ("t_min", [str(r.t_min) for r in reports]),
        ("Gamma", [_money(r.gamma_capital) for r in reports]),
        ("Pi_end", [_money(r.pi_end) for r in reports]),
        ("pi", [_pct(r.profit_pct) for r in reports]),
    ]
    width = max(16, *(len(v) + 2 for _, vals in rows for v in vals))
    lines = [f"{'quantity':<10}" + "".join(f"{sc.name:>{width}}" for sc in scenarios)]
    lines += [f"{label:<10}" + "".join(f"{v:>{width}}" for v in vals) for label, vals in rows]
    return "\n".join(lines)


def sensitivity_text(table: SensitivityTable) -> str:
    lines = [f"sensitivity indices, {table.scenario} scenario"]
    lines.append(f"{'parameter':<14}" + "".join(f"{q:>11}" for q in QUANTITIES))
    for param, values in table.rows():
        flag = "  *" if param in table.t_min_shifts else ""
        cells = "".join(f"{round(v, 5) + 0.0:>11.5f}" for v in values)  # + 0.0 drops the sign of zero
        lines.append(f"{param:<14}" + cells + flag)
    lines.append("* t_min moved under at least one perturbation; the Gamma cell spans a kink")
    return "\n".join(lines)


# ---------------------------------------------------------------- files


def write_trajectory(path: Path, traj) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(TRAJECTORY_HEADER + "\n")
        for t, row in zip(traj.times, traj.values):
            fh.write(",".join(_g(x) for x in (t, *row)) + "\n")


def write_financial(path: Path, report: PricingReport) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(FINANCIAL_HEADER + "\n")
        for month, (profit, asset) in enumerate(zip(report.profit_series, report.asset_series)):
            fh.write(f"{month},{_g(profit)},{_g(asset)}\n")


def write_sensitivity(path: Path, table: SensitivityTable) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(SENSITIVITY_HEADER + "\n")
        for param, values in table.rows():
            fh.write(param + "," + ",".join(_g(v) for v in values) + "\n")


def _pricing_json(report: PricingReport) -> dict:
    return {
        "p_net": report.p_net,
        "p_gross": report.p_gross,
        "premium_base": report.premium_base,
        "total_benefit_pv": report.total_benefit_pv,
        "pi_min": report.pi_min,
        "t_min": report.t_min,
        "gamma": report.gamma_capital,
        "pi_end": report.pi_end,
        "profit_pct": report.profit_pct,
        "capital_needed": report.capital_needed,
    }


def _write_json(path: Path, data: dict) -> None:
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- commands


def cmd_analyze(sc: Scenario, args) -> None:
    cont = analyze_continuous(sc.epidemic)
    disc = analyze_discrete(sc.epidemic, sc.policy.dt)
    print(analysis_summary(cont))
    ee_disc = "n/a" if disc.ee_verdict is None else _verdict_phrase(disc.ee_verdict)
    print(
        f"Euler map at dt = {disc.dt:g}: DFE {_verdict_phrase(disc.dfe_verdict)} "
        f"(dt threshold {disc.dfe_dt_threshold:.5g}), EE {ee_disc}"
    )
    _write_json(args.out / "analysis.json", _analysis_json(sc, cont, disc))


def cmd_simulate(sc: Scenario, args) -> None:
    traj = simulate(sc)
    write_trajectory(args.out / "trajectory.csv", traj)
    final = traj.state(len(traj) - 1)
    print(
        f"{len(traj)} states, t = 0..{sc.policy.horizon}; final S = {final.S:.4f}, "
        f"I = {final.I:.6g}, H = {final.H:.6g}"
    )


def cmd_price(sc: Scenario, args) -> None:
    report = price(sc)
    write_financial(args.out / "financial.csv", report)
    _write_json(args.out / "pricing.json", _pricing_json(report))
    print(table4([sc], [report]))


def cmd_sensitivity(sc: Scenario, args) -> None:
    table = sensitivity_table(sc, args.psi)
    write_sensitivity(args.out / "sensitivity.csv", table)
    print(sensitivity_text(table))
    print(MU1_NOTE)


def _report_one(sc: Scenario, psis) -> tuple[PricingReport, SensitivityTable]:
    return price(sc), sensitivity_table(sc, psis)


def cmd_report(sc: Scenario, args) -> None:
    scenarios = [
        replace(sc, epidemic=replace(sc.epidemic, beta=DISEASE_FREE_BETA), name="disease-free"),
        replace(sc, epidemic=replace(sc.epidemic, beta=ENDEMIC_BETA), name="endemic"),
    ]
    psis = [args.psi] * len(scenarios)
    with ProcessPoolExecutor(max_workers=len(scenarios)) as pool:
        results = list(pool.map(_report_one, scenarios, psis))
    reports = [r for r, _ in results]
    print(f"scheme: {sc.scheme}, dt = {sc.policy.dt:g}, T = {sc.policy.horizon}")
    print(table4(scenarios, reports))
    for scen, (report, table) in zip(scenarios, results):
        print()
        print(sensitivity_text(table))
        write_financial(args.out / f"financial_{scen.name}.csv", report)
        write_sensitivity(args.out / f"sensitivity_{scen.name}.csv", table)
    print()
    print(MU1_NOTE)


COMMANDS = {
    "analyze": (cmd_analyze, "equilibria and stability of the flow and of the Euler map"),
    "simulate": (cmd_simulate, "integrate and write trajectory.csv"),
    "price": (cmd_price, "premium, profit and capital; writes financial.csv and pricing.json"),
    "sensitivity": (cmd_sensitivity, "4x13 sensitivity table; writes sensitivity.csv"),
    "report": (cmd_report, "both shipped scenarios side by side plus their sensitivity tables"),
}


def _psi_list(text: str) -> tuple[float, ...]:
    try:
        psis = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not any(psis):
        raise argparse.ArgumentTypeError("need at least one nonzero perturbation")
    return psis


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="scenario file (key = value lines)")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory (default: .)")
    common.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override one config key; repeatable",
    )
    common.add_argument("--psi", type=_psi_list, default=DEFAULT_PSIS, metavar="LIST",
                        help="comma-separated perturbation fractions (default: -0.1,-0.05,0,0.05,0.1)")
    common.add_argument("--dt", help="override the step size")

    parser = argparse.ArgumentParser(prog="sihinsure", description="SIH epidemic model and health-insurance pricing.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def load_scenario(args) -> Scenario:
    text = args.config.read_text(encoding="utf-8") if args.config is not None else ""
    overrides = parse_overrides(args.overrides)
    if args.dt is not None:
        overrides["dt"] = args.dt
    return parse_config(text, overrides)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = load_scenario(args)
        args.out.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.command][0](sc, args)
    except SihError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
