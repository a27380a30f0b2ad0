"""Command-line interface: solve one scenario, sweep an axis, or verify.

Exit codes: 0 success, 1 infeasible scenario / failed verification,
2 configuration error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, ScenarioParams, parse_params
from .model import CircuitAccounting, InfeasibleError, PaKind, Strategy
from .oracle import random_feasible_scenarios, verify
from .solver import SolverConfig, solve
from .sweep import Axis, AxisKind, SweepSpec, emit_csv, run_sweep

__all__ = ["main", "cli_main"]

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_CONFIG = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdrelay",
        description="Energy-optimal scheduling for full-duplex two-way "
                    "relay links.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", default="defaults", metavar="PATH",
                       help="configuration file, or 'defaults'")
        p.add_argument("--strategy", choices=[s.value for s in Strategy],
                       help="override the configured strategy")
        p.add_argument("--pa", choices=[k.value for k in PaKind],
                       help="override the configured PA model")
        p.add_argument("--accounting",
                       choices=[m.value for m in CircuitAccounting],
                       help="override the circuit accounting mode")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized checks")

    p_solve = sub.add_parser("solve", help="solve one scenario")
    add_common(p_solve)
    p_solve.add_argument("--oracle", action="store_true",
                         help="run the brute-force oracle on the result")

    p_sweep = sub.add_parser("sweep", help="sweep an axis, emit CSV on stdout")
    add_common(p_sweep)
    p_sweep.add_argument("--axis", required=True,
                         choices=[a.value for a in AxisKind])
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--step", type=float, required=True)
    p_sweep.add_argument("--axis2", choices=[a.value for a in AxisKind])
    p_sweep.add_argument("--from2", dest="start2", type=float)
    p_sweep.add_argument("--to2", dest="stop2", type=float)
    p_sweep.add_argument("--step2", type=float)

    p_verify = sub.add_parser(
        "verify", help="run oracle and property checks on random scenarios")
    add_common(p_verify)
    p_verify.add_argument("--scenarios", type=int, default=5,
                          help="feasible scenarios per strategy/PA pair")
    return parser


def _load_params(args: argparse.Namespace) -> ScenarioParams:
    if args.config == "defaults":
        params = ScenarioParams()
    else:
        text = Path(args.config).read_text(encoding="utf-8")
        params = parse_params(text)
    if args.strategy:
        params = replace(params, strategy=Strategy(args.strategy))
    if args.pa:
        params = replace(params, pa=PaKind(args.pa))
    if args.accounting:
        params = replace(params,
                         accounting=CircuitAccounting(args.accounting))
    return params


def _dbm(p_w: float) -> float:
    return 10.0 * math.log10(p_w * 1e3) if p_w > 0 else float("-inf")


def _run_solve(args: argparse.Namespace, out, err) -> int:
    params = _load_params(args)
    scenario = params.build()
    cfg = SolverConfig(oracle_check=args.oracle)
    schedule = solve(scenario, cfg)
    out.write(f"strategy        {params.strategy.value}  "
              f"(pa={params.pa.value}, accounting={params.accounting.value})\n")
    out.write(f"demand          {params.r_fl_mbps:.3f} + "
              f"{params.r_rl_mbps:.3f} Mbit/s over {params.frame_t_ms:.3f} ms\n")
    out.write(f"t1              {schedule.t1 * 1e3:.6f} ms\n")
    out.write(f"t2              {schedule.t2 * 1e3:.6f} ms\n")
    out.write(f"p_a             {schedule.p_a:.6g} W ({_dbm(schedule.p_a):.2f} dBm)\n")
    out.write(f"p_b             {schedule.p_b:.6g} W ({_dbm(schedule.p_b):.2f} dBm)\n")
    if scenario.strategy is Strategy.FD2TS:
        out.write(f"p_r (slot 1)    {schedule.p_r_fwd:.6g} W\n")
        out.write(f"p_r (slot 2)    {schedule.p_r_rev:.6g} W\n")
    else:
        out.write(f"p_r             {schedule.p_r_fwd:.6g} W\n")
    if schedule.active_case is not None:
        out.write(f"binding case    {schedule.active_case.value}\n")
    out.write(f"energy          {schedule.e_total:.9e} J per frame\n")
    out.write(f"efficiency      {schedule.ee:.9e} bit/J\n")
    report = schedule.oracle_report
    if report is not None:
        out.write(f"oracle          grid best {report.grid_best_energy:.9e} J, "
                  f"gap {report.relative_gap:+.3e}, "
                  f"convexity violations {report.convexity_violations}\n")
        for name, slack in report.active_constraints.items():
            out.write(f"  slack {name}   {slack:+.3e}\n")
        if not report.ok:
            err.write("oracle check FAILED\n")
            return EXIT_INFEASIBLE
    return EXIT_OK


def _axis_from_args(kind_value: str, start, stop, step) -> Axis:
    if start is None or stop is None or step is None:
        raise ConfigError("axis range needs --from/--to/--step values")
    return Axis.from_range(AxisKind(kind_value), start, stop, step)


def _run_sweep(args: argparse.Namespace, out, err) -> int:
    params = _load_params(args)
    axis1 = _axis_from_args(args.axis, args.start, args.stop, args.step)
    axis2 = None
    if args.axis2:
        axis2 = _axis_from_args(args.axis2, args.start2, args.stop2,
                                args.step2)
    strategies = ((Strategy(args.strategy),) if args.strategy
                  else (Strategy.FD1TS, Strategy.FD2TS, Strategy.HD2TS))
    spec = SweepSpec(base=params, axis1=axis1, axis2=axis2,
                     strategies=strategies,
                     pa_kinds=(params.pa,))
    rows = run_sweep(spec)
    emit_csv(rows, out)
    return EXIT_OK


def _run_verify(args: argparse.Namespace, out, err) -> int:
    params = _load_params(args)
    failures = 0
    pa_kinds = (PaKind(args.pa),) if args.pa else tuple(PaKind)
    strategies = ((Strategy(args.strategy),) if args.strategy
                  else tuple(Strategy))
    for strategy in strategies:
        for pa_kind in pa_kinds:
            scenarios = random_feasible_scenarios(
                args.seed, strategy, pa_kind, args.scenarios)
            for i, scenario in enumerate(scenarios):
                schedule = solve(scenario)
                report = verify(scenario, schedule)
                status = "ok" if report.ok else "FAIL"
                if not report.ok:
                    failures += 1
                out.write(
                    f"{strategy.value}/{pa_kind.value} #{i}: {status} "
                    f"gap={report.relative_gap:+.3e} "
                    f"convexity_violations={report.convexity_violations}\n")
    if failures:
        err.write(f"{failures} verification failure(s)\n")
        return EXIT_INFEASIBLE
    out.write("all verifications passed\n")
    return EXIT_OK


def cli_main(argv: list[str] | None = None, out=None, err=None) -> int:
    """Entry point; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports its own errors
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "solve":
            return _run_solve(args, out, err)
        if args.command == "sweep":
            return _run_sweep(args, out, err)
        return _run_verify(args, out, err)
    except ConfigError as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except InfeasibleError as exc:
        err.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE


def main() -> None:
    raise SystemExit(cli_main())
