#!/usr/bin/env python3
"""
Command-line entry for the quorum-sensing link experiments.

    python -m src.qslink capacity --config link.ini --out results/capacity.csv
    python -m src.qslink validate --trials 20000 --seed 7

Exit codes: 0 success, 1 numeric failure, 2 configuration error.
"""
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from .link import Link, samples_table
from .link_config import LinkConfig
from .link_tools.core import ConfigError, LinkError
from .report import Table, console_table, write_table

log = logging.getLogger("qslink.cli")

EXIT_OK, EXIT_NUMERIC, EXIT_CONFIG = 0, 1, 2

SUMMARY_COLUMNS = {
    "capacity/1": ["n", "sigma0_sq", "a_max_nM", "capacity_bits"],
    "timing/1": ["r_um", "n", "t_total_hr", "bits_per_hour"],
    "modulation/1": ["m", "a_max_nM", "rate_bits", "total_error"],
    "validate/1": ["check", "param", "analytic", "empirical", "status"],
}


def _overrides(args: argparse.Namespace) -> dict:
    return {
        ("montecarlo", "seed"): args.seed,
        ("montecarlo", "trials"): getattr(args, "trials", None),
        ("output", "threads"): args.threads,
        ("output", "no_timestamp"): True if args.no_timestamp else None,
        ("output", "jsonl"): True if args.jsonl else None,
        ("timing", "rise_threshold"): getattr(args, "rise_threshold", None),
        ("timing", "fall_threshold"): getattr(args, "fall_threshold", None),
    }


def _emit(table: Table, args: argparse.Namespace, cfg: LinkConfig, out: Optional[str] = None):
    write_table(table, out or args.out, timestamp=not cfg.get("output", "no_timestamp"),
                jsonl=cfg.get("output", "jsonl"))
    columns = SUMMARY_COLUMNS.get(table.schema)
    if columns and args.out not in (None, "-"):
        print(console_table(table, columns), file=sys.stderr)


def cmd_capacity(link: Link, args: argparse.Namespace) -> int:
    _emit(link.run_capacity(sigma0_sweep=args.sigma0_sweep), args, link.config)
    return EXIT_OK


def cmd_timing(link: Link, args: argparse.Namespace) -> int:
    _emit(link.run_timing(), args, link.config)
    return EXIT_OK


def cmd_modulation(link: Link, args: argparse.Namespace) -> int:
    _emit(link.run_modulation(), args, link.config)
    return EXIT_OK


def cmd_validate(link: Link, args: argparse.Namespace) -> int:
    samples = [] if args.samples else None
    table = link.run_validate(samples_out=samples)
    _emit(table, args, link.config)
    if samples is not None:
        _emit(samples_table(samples), args, link.config, out=args.samples)
    failed = [row for row in table.rows if row[-1] == "fail"]
    if failed:
        log.error("[CLI] %d validation check(s) failed", len(failed))
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_kinetics(link: Link, args: argparse.Namespace) -> int:
    _emit(link.run_kinetics(), args, link.config)
    return EXIT_OK


def cmd_channel(link: Link, args: argparse.Namespace) -> int:
    _emit(link.run_channel(), args, link.config)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI experiment file")
    common.add_argument("--out", help="CSV output path (stdout when omitted or '-')")
    common.add_argument("--seed", type=int, help="Monte-Carlo seed (unsigned 64-bit)")
    common.add_argument("--threads", type=int, help="worker threads for sweeps")
    common.add_argument("--no-timestamp", action="store_true", help="omit the '# generated' line")
    common.add_argument("--jsonl", action="store_true", help="also write a JSON-lines mirror")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging")

    p = argparse.ArgumentParser(prog="qslink", description="Quorum-sensing molecular link experiments")
    sub = p.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("capacity", parents=[common], help="capacity vs A_max")
    pc.add_argument("--sigma0-sweep", action="store_true", help="sweep sigma0^2 instead of n")
    pc.set_defaults(func=cmd_capacity)

    pt = sub.add_parser("timing", parents=[common], help="delays and bits per hour over r x n")
    pt.add_argument("--rise-threshold", type=float)
    pt.add_argument("--fall-threshold", type=float)
    pt.set_defaults(func=cmd_timing)

    pm = sub.add_parser("modulation", parents=[common], help="M-ary rate and symbol error vs A_max")
    pm.set_defaults(func=cmd_modulation)

    pv = sub.add_parser("validate", parents=[common], help="analytic model vs Monte-Carlo oracle")
    pv.add_argument("--trials", type=int, help="trials per operating point")
    pv.add_argument("--samples", help="also dump raw samples to this CSV")
    pv.set_defaults(func=cmd_validate)

    pk = sub.add_parser("kinetics", parents=[common], help="binding and expression transient")
    pk.set_defaults(func=cmd_kinetics)

    pch = sub.add_parser("channel", parents=[common], help="diffusion step and pulse response")
    pch.set_defaults(func=cmd_channel)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s")
    load_dotenv()

    try:
        cfg = LinkConfig.load(args.config, overrides=_overrides(args))
        link = Link(cfg)
    except LinkError as ex:
        log.error("[CLI] configuration error: %s", ex)
        return EXIT_CONFIG

    try:
        return args.func(link, args)
    except ConfigError as ex:
        log.error("[CLI] configuration error: %s", ex)
        return EXIT_CONFIG
    except LinkError as ex:
        log.error("[CLI] %s failed: %s", args.cmd, ex)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
