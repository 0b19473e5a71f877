"""Command-line interface.

Three subcommands: ``solve`` runs one scenario end to end and writes the
report bundle, ``render`` redraws a layout view from a saved report, and
``bench`` sweeps a scenario directory across all three solvers and a
seed list into one CSV plus a comparison chart.

Exit codes: 0 success, 2 bad input or options, 3 infeasible piece,
4 output failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import (
    ConfigurationError,
    InfeasiblePieceError,
    PanelPlanError,
    ScenarioParseError,
    ScenarioValidationError,
)
from .nesting import PlacementStrategy, RotationMode, TransformPolicy
from .pipeline import (
    Algorithm,
    RunReport,
    Scenario,
    emit_report,
    load_report_json,
    load_scenario,
    run_pipeline,
    write_report_json,
    write_reports_csv,
)
from .render import render_bench_chart, render_convergence, render_layout

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="panelplan",
        description="Two-stage panel layout planning: grid overlay plus off-cut nesting.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one scenario and write its report bundle")
    solve.add_argument("--scenario", required=True, help="scenario JSON file")
    solve.add_argument(
        "--algo",
        choices=[a.value for a in Algorithm],
        help="override the scenario's solver",
    )
    solve.add_argument("--seed", type=int, help="override the solver seed")
    solve.add_argument(
        "--strategy",
        choices=[s.value for s in PlacementStrategy],
        help="override the placement strategy",
    )
    solve.add_argument(
        "--rotation",
        choices=[r.value for r in RotationMode],
        help="override the rotation policy",
    )
    solve.add_argument(
        "--flip",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="override whether mirrored placements are allowed",
    )
    solve.add_argument("--out", required=True, help="output directory")

    render = sub.add_parser("render", help="redraw a layout view from a saved report")
    render.add_argument("--report", required=True, help="report JSON file")
    render.add_argument(
        "--view", required=True, choices=["overlay", "nesting"], help="which drawing"
    )
    render.add_argument("--out", required=True, help="output SVG file")

    bench = sub.add_parser(
        "bench", help="run every scenario in a directory across solvers and seeds"
    )
    bench.add_argument("--scenarios", required=True, help="directory of scenario files")
    bench.add_argument(
        "--seeds",
        default="0",
        help="comma-separated seeds for the stochastic solvers (default: 0)",
    )
    bench.add_argument("--out", required=True, help="output CSV file")
    return parser


def _apply_overrides(scenario: Scenario, args: argparse.Namespace) -> Scenario:
    if args.algo is not None:
        scenario = replace(scenario, algorithm=Algorithm(args.algo))
    if args.seed is not None:
        scenario = scenario.with_seed(args.seed)
    if args.strategy is not None:
        scenario = replace(scenario, strategy=PlacementStrategy(args.strategy))
    policy = scenario.policy
    if args.rotation is not None:
        policy = TransformPolicy(
            rotation=RotationMode(args.rotation), allow_flip=policy.allow_flip
        )
    if args.flip is not None:
        policy = TransformPolicy(rotation=policy.rotation, allow_flip=args.flip)
    if policy is not scenario.policy:
        scenario = replace(scenario, policy=policy)
    return scenario


def _cmd_solve(args: argparse.Namespace) -> int:
    scenario = _apply_overrides(load_scenario(args.scenario), args)
    report = run_pipeline(scenario)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_report_json(report, out_dir / "report.json")
    emit_report(report, out_dir / "report.csv", fmt="csv")
    emit_report(report, out_dir / "report.txt", fmt="human")
    render_layout(report, "overlay", out_dir / "overlay.svg")
    render_layout(report, "nesting", out_dir / "nesting.svg")
    wrote_convergence = render_convergence(report, out_dir / "convergence.png")
    print(
        f"{report.scenario_name}: {report.total_panels} panels "
        f"({report.whole_panels} whole + {report.total_panels - report.whole_panels} nested), "
        f"material usage {report.material_usage * 100.0:.2f}%"
    )
    files = ["report.json", "report.csv", "report.txt", "overlay.svg", "nesting.svg"]
    if wrote_convergence:
        files.append("convergence.png")
    print(f"wrote {', '.join(files)} to {out_dir}")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    report = load_report_json(args.report)
    render_layout(report, args.view, args.out)
    print(f"wrote {args.view} view to {args.out}")
    return 0


def _parse_seeds(text: str) -> list[int]:
    try:
        seeds = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ConfigurationError(f"--seeds must be comma-separated integers, got {text!r}")
    if not seeds:
        raise ConfigurationError("--seeds must name at least one seed")
    return seeds


def _cmd_bench(args: argparse.Namespace) -> int:
    scenario_dir = Path(args.scenarios)
    files = sorted(scenario_dir.glob("*.json"))
    if not files:
        raise ConfigurationError(f"no scenario files (*.json) in {scenario_dir}")
    seeds = _parse_seeds(args.seeds)
    reports: list[RunReport] = []
    for path in files:
        scenario = load_scenario(path)
        for algorithm in Algorithm:
            runs = [None] if algorithm is Algorithm.GREEDY else seeds
            for seed in runs:
                variant = replace(scenario, algorithm=algorithm)
                if seed is not None:
                    variant = variant.with_seed(seed)
                report = run_pipeline(variant)
                reports.append(report)
                seed_note = "" if seed is None else f" seed {seed}"
                print(
                    f"{scenario.name} {algorithm.value}{seed_note}: "
                    f"{report.total_panels} panels, "
                    f"{report.material_usage * 100.0:.2f}% usage"
                )
    out_csv = Path(args.out)
    if out_csv.parent != Path(""):
        out_csv.parent.mkdir(parents=True, exist_ok=True)
    write_reports_csv(reports, out_csv)
    chart = out_csv.with_suffix(".png")
    render_bench_chart(reports, chart)
    print(f"wrote {out_csv} and {chart}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "render":
            return _cmd_render(args)
        return _cmd_bench(args)
    except (ScenarioParseError, ScenarioValidationError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasiblePieceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PanelPlanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
