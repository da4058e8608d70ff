"""Batch command-line front end.

Subcommands mirror the pipeline stages: ``fuzzy`` (uncertainty bands and
crisp rates), ``curve`` (component reliability curves), ``markov`` (state
probabilities of the unified model), ``simulate`` (Monte Carlo campaign),
``fit`` (interaction-rate estimation from an exposure table) and
``pipeline`` (all of the above in order, with a plain-text report).

Every command reads one JSON configuration document (built-in defaults when
``--config`` is omitted) and writes CSV files into the output directory.
Exit statuses: 0 success, 2 configuration error, 3 runtime/numerical error,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import ConfigError, RunConfig, default_config, load_config
from .csvout import write_csv
from .curves import (
    interaction_reliability_closed_form,
    software_reliability,
    weibull_reliability,
)
from .fitting import effective_rate, fit_scan
from .fuzzy import FuzzyIndex, alpha_cut, defuzzify, fuzzy_availability, fuzzy_unavailability
from .markov import (
    OPERATIONAL_STATES,
    STATES,
    StateDistribution,
    build_unified_model,
    transient_distribution,
)
from .simulate import ExposureTable, run_simulation

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_IO = 4

EXPOSURE_HEADER = ["interval", "X_i", "T_i"]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON configuration file")
    common.add_argument("--out", metavar="DIR", help="output directory (default from config)")
    common.add_argument("--seed", type=int, metavar="U64", help="override the simulation master seed")
    common.add_argument("--dry-run", action="store_true", help="validate configuration and exit")

    parser = argparse.ArgumentParser(
        prog="pmurel",
        description="Reliability analysis toolkit for phasor measurement units.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fuzzy", parents=[common], help="fuzzy rate bands and crisp rates")
    sub.add_parser("curve", parents=[common], help="component reliability curves")
    sub.add_parser("markov", parents=[common], help="transient state probabilities")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo failure/repair campaign")
    fit = sub.add_parser("fit", parents=[common], help="estimate interaction rates")
    fit.add_argument("--g", type=float, metavar="RATIO", help="single rate ratio to fit at")
    fit.add_argument(
        "--g-grid", type=float, nargs="+", metavar="RATIO", help="grid of rate ratios to scan"
    )
    fit.add_argument(
        "--exposure",
        metavar="PATH",
        help="exposure CSV to fit (default: <out>/exposure.csv)",
    )
    sub.add_parser("pipeline", parents=[common], help="run every stage in order")
    return parser


def _resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else default_config()
    if args.out:
        cfg = replace(cfg, output_dir=args.out)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {args.seed}")
        cfg = replace(cfg, simulation=replace(cfg.simulation, master_seed=args.seed))
    return cfg


def _write_band(out: Path, name: str, band: FuzzyIndex) -> None:
    write_csv(out / name, ["alpha", "lo", "hi"], band.rows())


def cmd_fuzzy(cfg: RunConfig, out: Path, args) -> int:
    fz = cfg.fuzzy
    failure, repair = fz.failure_number(), fz.repair_number()
    grid = fz.alpha_grid()
    failure_band = FuzzyIndex("failure-rate", tuple(alpha_cut(failure, a) for a in grid))
    repair_band = FuzzyIndex("repair-rate", tuple(alpha_cut(repair, a) for a in grid))
    out.mkdir(parents=True, exist_ok=True)
    _write_band(out, "failure_rate.csv", failure_band)
    _write_band(out, "repair_rate.csv", repair_band)
    _write_band(out, "availability.csv", fuzzy_availability(failure, repair, grid))
    _write_band(out, "unavailability.csv", fuzzy_unavailability(failure, repair, grid))
    write_csv(
        out / "crisp.csv",
        ["quantity", "value"],
        [("failure_rate", defuzzify(failure)), ("repair_rate", defuzzify(repair))],
    )
    return EXIT_OK


def cmd_curve(cfg: RunConfig, out: Path, args) -> int:
    cv = cfg.curves
    hw, sw, inter = cv.hardware_params(), cv.software_params(), cv.interaction_params()
    rows = []
    for t in cv.time_grid.values():
        r_hw = weibull_reliability(hw, t)
        r_sw = software_reliability(sw, t)
        r_int = interaction_reliability_closed_form(inter, t)
        rows.append((t, r_hw, r_sw, r_int, r_hw * r_sw * r_int))
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "curve.csv", ["t", "R_hw", "R_sw", "R_int", "R_pmu"], rows)
    return EXIT_OK


def cmd_markov(cfg: RunConfig, out: Path, args) -> int:
    gen = build_unified_model(cfg.markov.transitions)
    initial = StateDistribution.point_mass(gen.states, "UP")
    rows = []
    for t in cfg.markov.time_grid.values():
        dist = transient_distribution(gen, initial, t)
        r_int = min(1.0, sum(dist[s] for s in OPERATIONAL_STATES))
        rows.append((t, *(dist[s] for s in STATES), r_int))
    header = ["t"] + [f"Q_{s}" for s in STATES] + ["R_interaction"]
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "markov.csv", header, rows)
    return EXIT_OK


def _write_simulation(out: Path, summary) -> None:
    write_csv(
        out / "summary.csv",
        ["availability", "mean_failures", "availability_se", "mean_failures_se"],
        [(summary.availability, summary.mean_failures,
          summary.availability_se, summary.mean_failures_se)],
    )
    write_csv(out / "exposure.csv", EXPOSURE_HEADER, summary.exposure.rows())


def cmd_simulate(cfg: RunConfig, out: Path, args) -> int:
    summary = run_simulation(cfg.simulation.to_simulation_config())
    out.mkdir(parents=True, exist_ok=True)
    _write_simulation(out, summary)
    return EXIT_OK


def _read_exposure_csv(path: Path) -> ExposureTable:
    lines = path.read_text().splitlines()
    if not lines or lines[0].split(",") != EXPOSURE_HEADER:
        raise ValueError(
            f"{path} is not an exposure table; expected header "
            f"'{','.join(EXPOSURE_HEADER)}'"
        )
    counts, times = [], []
    for line in lines[1:]:
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise ValueError(f"malformed exposure row: {line!r}")
        counts.append(float(fields[1]))
        times.append(float(fields[2]))
    return ExposureTable(tuple(counts), tuple(times))


def _fit_rows(table: ExposureTable, ratios) -> list[tuple]:
    return [(r.g, r.lambda1, r.lambda2, r.sse) for r in fit_scan(table, ratios)]


def cmd_fit(cfg: RunConfig, out: Path, args) -> int:
    if getattr(args, "g", None) is not None and getattr(args, "g_grid", None) is not None:
        raise ConfigError("give either --g or --g-grid, not both")
    if getattr(args, "g", None) is not None:
        ratios = [args.g]
    elif getattr(args, "g_grid", None) is not None:
        ratios = list(args.g_grid)
    else:
        ratios = cfg.fit.ratios()
    exposure_path = Path(args.exposure) if getattr(args, "exposure", None) else out / "exposure.csv"
    table = _read_exposure_csv(exposure_path)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "fit.csv", ["G", "lambda1", "lambda2", "sse"], _fit_rows(table, ratios))
    return EXIT_OK


def cmd_pipeline(cfg: RunConfig, out: Path, args) -> int:
    report: list[str] = []
    report.append("PMU reliability pipeline report")
    report.append("===============================")
    report.append(f"time unit: {cfg.time_unit}")
    report.append("")

    def stage(name, fn):
        try:
            return fn()
        except (ConfigError, OSError, ValueError, ArithmeticError) as exc:
            raise type(exc)(f"pipeline stage '{name}' failed: {exc}") from exc

    # Stage 1: fuzzy bands and crisp rates.
    def run_fuzzy():
        cmd_fuzzy(cfg, out, args)
        fz = cfg.fuzzy
        failure, repair = fz.failure_number(), fz.repair_number()
        lam, mu = defuzzify(failure), defuzzify(repair)
        unit = cfg.time_unit[:-1] if cfg.time_unit.endswith("s") else cfg.time_unit
        report.append("[1] fuzzy rate selection (alpha-cut propagation, centroid defuzzification)")
        report.append(f"    crisp failure rate : {lam:.6g} per {unit}")
        report.append(f"    crisp repair rate  : {mu:.6g} per {unit}")
        report.append(
            f"    two-state availability mu/(lambda+mu) : {mu / (lam + mu):.6f}"
        )
        report.append("    files: failure_rate.csv repair_rate.csv availability.csv "
                      "unavailability.csv crisp.csv")
        return lam, mu

    lam, mu = stage("fuzzy", run_fuzzy)

    # Stage 2: Monte Carlo campaign at the defuzzified rates.
    def run_sim():
        sim_cfg = cfg.simulation.to_simulation_config(failure_rate=lam, repair_rate=mu)
        summary = run_simulation(sim_cfg)
        out.mkdir(parents=True, exist_ok=True)
        _write_simulation(out, summary)
        renewal = sim_cfg.mission_time / (1.0 / lam + 1.0 / mu)
        report.append("")
        report.append(
            f"[2] Monte Carlo campaign ({sim_cfg.n_replications} missions of "
            f"{sim_cfg.mission_time:g} {cfg.time_unit}, seed {sim_cfg.master_seed})"
        )
        report.append(
            f"    availability estimate : {summary.availability:.6f}"
            f" (se {summary.availability_se:.2g})"
        )
        report.append(
            f"    mean failures/mission : {summary.mean_failures:.4f}"
            f" (se {summary.mean_failures_se:.2g};"
            f" renewal-theory value {renewal:.4f})"
        )
        report.append("    files: summary.csv exposure.csv")
        return summary

    summary = stage("simulate", run_sim)

    # Stage 3: interaction-rate fit on the simulated exposure table.
    def run_fit():
        ratios = cfg.fit.ratios()
        results = fit_scan(summary.exposure, ratios)
        out.mkdir(parents=True, exist_ok=True)
        write_csv(out / "fit.csv", ["G", "lambda1", "lambda2", "sse"],
                  [(r.g, r.lambda1, r.lambda2, r.sse) for r in results])
        report.append("")
        report.append("[3] interaction-rate least squares on the exposure table")
        for r in results:
            report.append(
                f"    G={r.g:g}: lambda1={r.lambda1:.6g}, lambda2={r.lambda2:.6g},"
                f" sse={r.sse:.6g},"
                f" effective rate {effective_rate(r.lambda1, r.lambda2):.6g}"
            )
        report.append("    (the effective rate is the only identified quantity;"
                      " it is the same for every G)")
        report.append("    file: fit.csv")
        return results

    stage("fit", run_fit)

    # Stage 4: closed-form reliability curves.
    def run_curve():
        cmd_curve(cfg, out, args)
        cv = cfg.curves
        horizon = cv.time_grid.stop
        hw, sw, inter = cv.hardware_params(), cv.software_params(), cv.interaction_params()
        r_hw = weibull_reliability(hw, horizon)
        r_sw = software_reliability(sw, horizon)
        r_int = interaction_reliability_closed_form(inter, horizon)
        report.append("")
        report.append(f"[4] component reliability curves over [0, {horizon:g}]")
        report.append(
            f"    at the horizon: hardware {r_hw:.6g}, software {r_sw:.6g},"
            f" interaction {r_int:.6g}, product {r_hw * r_sw * r_int:.6g}"
        )
        report.append("    file: curve.csv")

    stage("curve", run_curve)

    (out / "report.txt").write_text("\n".join(report) + "\n")
    return EXIT_OK


_COMMANDS = {
    "fuzzy": cmd_fuzzy,
    "curve": cmd_curve,
    "markov": cmd_markov,
    "simulate": cmd_simulate,
    "fit": cmd_fit,
    "pipeline": cmd_pipeline,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        if args.dry_run:
            return EXIT_OK
        return _COMMANDS[args.command](cfg, Path(cfg.output_dir), args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        path = getattr(exc, "filename", None)
        detail = f"{exc.strerror}: {path}" if path else str(exc)
        print(f"i/o error: {detail}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
