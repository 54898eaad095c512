"""Command-line entry point: ``secrelay run`` and ``secrelay presets``."""

import argparse
import csv
import logging
import sys
from dataclasses import replace

from . import __version__
from .config import SweepVariable, load_text
from .errors import ConfigError, ConsistencyError, PreconditionError
from .presets import DEFAULT_SWEEPS, PRESETS, describe
from .sweep import CSV_HEADER, compare_report, csv_rows, emit_csv, run_single, run_sweep

log = logging.getLogger("secrelay")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CONSISTENCY = 2


def build_parser():
    p = argparse.ArgumentParser(prog="secrelay", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a configuration or sweep and write CSV")
    run.add_argument("--config", help="key = value configuration file (defaults apply when omitted)")
    group = run.add_mutually_exclusive_group()
    group.add_argument(
        "--sweep",
        choices=[v.value for v in SweepVariable],
        help="sweep this variable over its default range",
    )
    group.add_argument("--preset", choices=sorted(PRESETS), help="start from a named figure scenario")
    run.add_argument("--mc-samples", type=int, help="Monte-Carlo samples per point")
    run.add_argument("--seed", type=int, help="root seed for Monte-Carlo paths")
    run.add_argument("--out", help="CSV output path (stdout when omitted)")
    run.add_argument(
        "--report",
        action="store_true",
        help="print the closed-form vs Monte-Carlo comparison at the base configuration",
    )
    run.add_argument("-v", "--verbose", action="store_true")

    sub.add_parser("presets", help="list the named scenarios")
    return p


def _sweep_text(name):
    start, stop, points, scale = DEFAULT_SWEEPS[name]
    return (
        f"\nsweep.variable = {name}\nsweep.start = {start}\nsweep.stop = {stop}\n"
        f"sweep.points = {points}\nsweep.scale = {scale}\n"
    )


def load_run_config(args):
    text, source = "", "<defaults>"
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror or exc}") from exc
        source = args.config
    if args.sweep:
        text += _sweep_text(args.sweep)
    cfg = load_text(text, source=source, preset=args.preset)
    mc = cfg.mc
    if args.mc_samples is not None or args.seed is not None:
        try:
            mc = replace(
                mc,
                n_samples=mc.n_samples if args.mc_samples is None else args.mc_samples,
                seed=mc.seed if args.seed is None else args.seed,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        cfg = replace(cfg, mc=mc)
    return cfg


def _write_stdout(records):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(csv_rows(records))


def cmd_run(args):
    cfg = load_run_config(args)
    if cfg.sweep is not None:
        log.info("sweeping %s over %d points", cfg.sweep.variable.value, cfg.sweep.points)
        records = run_sweep(cfg.system, cfg.sweep, cfg.mc)
    else:
        records = run_single(cfg.system, cfg.paths, cfg.mc)

    if args.out:
        emit_csv(records, args.out)
        log.info("wrote %s", args.out)
    else:
        _write_stdout(records)

    status = EXIT_OK
    for rec in records:
        for path, msg in rec.errors.items():
            log.warning("point %d (%s): %s", rec.index, path.value, msg)
            if msg.startswith(ConsistencyError.__name__):
                status = EXIT_CONSISTENCY

    if args.report:
        report = compare_report(cfg.system, cfg.mc)
        print(report.text, file=sys.stderr if not args.out else sys.stdout)
        if not report.passed:
            status = EXIT_CONSISTENCY
    return status


def cmd_presets(_args):
    for name in PRESETS:
        print(f"{name:6s} {describe(name)}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        if args.command == "presets":
            return cmd_presets(args)
        return cmd_run(args)
    except (ConfigError, PreconditionError) as exc:
        problems = getattr(exc, "problems", None) or [str(exc)]
        for line in problems:
            print(f"error: {line}", file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"numerical consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
