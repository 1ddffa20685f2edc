"""Command-line interface.

Subcommands: ``test``, ``power``, ``kernel``, ``calibrate``, ``simulate``.
Exit status is 0 on success, 1 for bad arguments or configuration and 2 for
runtime or numerical failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .asymptotics import POWER_TESTS, calibrate_critical_value, power_curve
from .harness import (
    ConfigError,
    emit_plot_script,
    emit_results,
    load_grid,
    run_experiment,
    size_warnings,
)
from .kernels import harmonic_dimension, kernel_h
from .sphere import load_sample
from .uniformity import SelectionConfig, run_test

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

log = logging.getLogger("sobolev_sphere")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def parse_tau_grid(text: str) -> list[float]:
    """``"start:stop:step"`` (stop inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        parts = [float(v) for v in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"bad tau grid {text!r}; expected start:stop:step")
        start, stop, step = parts
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(v) for v in text.split(",") if v.strip()]


def _cmd_test(args) -> int:
    sample = load_sample(args.input, renormalize=args.renormalize)
    config = SelectionConfig(cap_M=args.cap_m)
    outcome = run_test(sample, args.method, args.alpha, config)
    json.dump(outcome.asdict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_power(args) -> int:
    taus = parse_tau_grid(args.tau_grid)
    rows = power_curve(args.test, args.model, taus, d=args.d, alpha=args.alpha)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["tau", "xi_1", "xi_2", "power"])
    for r in rows:
        w.writerow([f"{r['tau']:g}", f"{r['xi_1']:.12g}", f"{r['xi_2']:.12g}",
                    f"{r['power']:.12g}"])
    return EXIT_OK


def _cmd_kernel(args) -> int:
    print(f"h_{args.k}({args.t:g}) = {kernel_h(args.k, args.t, args.d):.12g}")
    print(f"d_{args.k} = {harmonic_dimension(args.k, args.d)}")
    return EXIT_OK


def _cmd_calibrate(args) -> int:
    value = calibrate_critical_value(
        args.method, args.n, args.d, args.alpha, args.reps, args.seed,
        SelectionConfig(cap_M=args.cap_m), args.threads,
    )
    print(f"{value:.12g}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    grid = load_grid(args.config, args.profile)
    if args.reps is not None:
        from dataclasses import replace
        grid = replace(grid, reps=args.reps)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    log.info("running %d cells x %d reps", grid.n_cells, grid.reps)

    def progress(done, total):
        if done % max(1, total // 20) == 0 or done == total:
            log.info("%d/%d blocks", done, total)

    table = run_experiment(grid, threads=args.threads, progress=progress)
    result = out / f"rejections.{args.format}"
    emit_results(table, result, args.format)
    emit_plot_script(table, out / "plot_rejections.py", alpha=grid.alpha)
    for msg in size_warnings(table, grid.alpha):
        log.warning(msg)
    print(f"wrote {len(table)} rows to {result}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sobolev-sphere", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("test", help="run a uniformity test on a data file")
    t.add_argument("--input", required=True)
    t.add_argument("--method", required=True,
                   help="rayleigh | bingham | score:K | jupp | adapted")
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--cap-m", type=int, default=10)
    t.add_argument("--renormalize", action="store_true",
                   help="rescale rows to unit norm instead of rejecting them")
    t.set_defaults(func=_cmd_test)

    pw = sub.add_parser("power", help="asymptotic power under contiguous alternatives")
    pw.add_argument("--model", required=True, choices=["vmf", "watson"])
    pw.add_argument("--test", required=True, choices=list(POWER_TESTS))
    pw.add_argument("--d", type=int, default=3)
    pw.add_argument("--alpha", type=float, default=0.05)
    pw.add_argument("--tau-grid", default="0:6:0.5")
    pw.set_defaults(func=_cmd_power)

    k = sub.add_parser("kernel", help="evaluate h_k(t) and d_k")
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--d", type=int, required=True)
    k.add_argument("--t", type=float, required=True)
    k.set_defaults(func=_cmd_kernel)

    c = sub.add_parser("calibrate", help="Monte Carlo null critical value")
    c.add_argument("--method", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, default=3)
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--reps", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--cap-m", type=int, default=10)
    c.add_argument("--threads", type=int, default=None)
    c.set_defaults(func=_cmd_calibrate)

    s = sub.add_parser("simulate", help="rejection frequencies over a grid")
    s.add_argument("--config", default=None, help="YAML/JSON grid document")
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--profile", choices=["desk", "paper"], default="desk")
    s.add_argument("--reps", type=int, default=None, help="override reps")
    s.set_defaults(func=_cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        # bad argument values (method names, alpha, malformed data) are
        # reported as configuration errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
