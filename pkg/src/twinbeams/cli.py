"""Command-line entry point.

Subcommands:
  run       build the scenario's state and write a JSON criteria report
  sweep     vary one scenario parameter over a grid, write a CSV table
  sample    draw a homodyne sample batch from the scenario's state (CSV)
  estimate  estimate criteria with standard errors from a batch file

Exit codes: 0 success, 2 validation error, 3 physicality error.
Set TWINBEAMS_LOG=debug|info|warning to control log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import sampling, scenario
from .states import PhysicalityError

log = logging.getLogger("twinbeams")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PHYSICALITY = 3


def _parse_grid(text: str) -> list:
    """Grid syntax: 'start:stop:num' (inclusive linspace) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("grid range must be start:stop:num")
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        if num < 2:
            raise ValueError("grid range needs num >= 2")
        step = (stop - start) / (num - 1)
        return [start + i * step for i in range(num)]
    return [float(cell) for cell in text.split(",") if cell.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinbeams",
        description="Two-mode Gaussian states and quantum-correlation criteria.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_cmd = sub.add_parser("run", help="Run a scenario and write a JSON report")
    run_cmd.add_argument("--scenario", required=True, help="Scenario file path")
    run_cmd.add_argument("--out", default=None, help="Report path (default: scenario 'out' key or stdout)")

    sweep_cmd = sub.add_parser("sweep", help="Sweep one scenario parameter over a grid")
    sweep_cmd.add_argument("--scenario", required=True)
    sweep_cmd.add_argument("--param", required=True,
                           help="Parameter name, e.g. source.r, step1.eta, theta")
    sweep_cmd.add_argument("--grid", required=True,
                           help="start:stop:num or comma-separated values")
    sweep_cmd.add_argument("--out", required=True, help="Output CSV path")

    sample_cmd = sub.add_parser("sample", help="Draw a sample batch and write it as CSV")
    sample_cmd.add_argument("--scenario", required=True)
    sample_cmd.add_argument("--n", type=int, required=True, help="Number of samples")
    sample_cmd.add_argument("--seed", type=int, required=True)
    sample_cmd.add_argument("--out", required=True, help="Output CSV path")

    est_cmd = sub.add_parser("estimate", help="Estimate criteria from a batch file")
    est_cmd.add_argument("--batch", required=True, help="Batch CSV path")
    est_cmd.add_argument("--out", default=None, help="JSON output path (default stdout)")
    return parser


def _emit_json(payload: dict, out) -> None:
    if out:
        scenario.write_report(payload, out)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _cmd_run(args) -> int:
    scn = scenario.load_scenario(args.scenario)
    payload = scenario.run_scenario(scn)
    _emit_json(payload, args.out or scn.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    scn = scenario.load_scenario(args.scenario)
    grid = _parse_grid(args.grid)
    rows = scenario.sweep(scn, args.param, grid)
    scenario.write_sweep_csv(rows, args.param, args.out)
    return EXIT_OK


def _cmd_sample(args) -> int:
    scn = scenario.load_scenario(args.scenario)
    state = scenario.build_state(scn)
    batch = sampling.draw_samples(state, args.n, args.seed,
                                  source_label=scn.source.format())
    sampling.write_batch(batch, args.out)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    batch = sampling.read_batch(args.batch)
    estimated = sampling.estimate_criteria(batch)
    _emit_json(estimated.to_json(), args.out)
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "sample": _cmd_sample,
    "estimate": _cmd_estimate,
}


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("TWINBEAMS_LOG", "warning").upper(),
                      logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PhysicalityError as exc:
        log.error("physicality error: %s", exc)
        print(f"physicality error: {exc}", file=sys.stderr)
        return EXIT_PHYSICALITY
    except (scenario.ScenarioError, sampling.BatchFormatError,
            sampling.EstimationError, ValueError, OSError) as exc:
        log.error("validation error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
