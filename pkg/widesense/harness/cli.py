#!/usr/bin/env python3

""" Command line interface ``widesense``. """

# std
import argparse
import logging
import sys
from typing import List, Optional

# ours
from widesense.errors import ConfigError, NumericalError
from widesense.harness.campaign import CSV_OPTIONS, Campaign
from widesense.harness.checks import oracle_check
from widesense.harness.config import (
    MEASUREMENT_MODES,
    ExperimentConfig,
    NoiseSettings,
)
from widesense.harness.rates import rates_frame
from widesense.metrics.detection import AGGREGATION_MODES
from widesense.sampler.reference import selftest_aliasing
from widesense.util.log import get_logger, set_global_log_level
from widesense.util.metadata import get_version

log = get_logger("CLI")

EXIT_OK = 0
#: A self-check missed its tolerance
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", help="JSON experiment configuration")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--trials", type=int, help="Trials per node count")
    parser.add_argument(
        "--workers", type=int, help="Worker processes (0: one per CPU)"
    )
    parser.add_argument(
        "--k", type=int, nargs="+", dest="k_values", help="Node counts"
    )
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument(
        "--snr-db", type=float, help="Per-measurement SNR in dB"
    )
    noise.add_argument(
        "--sigma-w", type=float, help="Noise standard deviation"
    )
    parser.add_argument("--measurement-mode", choices=MEASUREMENT_MODES)
    parser.add_argument("--aggregation", choices=AGGREGATION_MODES)
    parser.add_argument("--out", default="output", help="Output directory")
    parser.add_argument(
        "--overwrite",
        choices=["ask", "overwrite", "raise"],
        default="ask",
        help="What to do if output files exist",
    )
    parser.add_argument(
        "--no-progress", action="store_true", help="Hide progress bars"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0)
    verbosity.add_argument("-q", "--quiet", action="store_true")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="widesense",
        description="Distributed compressed wideband spectrum sensing "
        "simulations.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + get_version()
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sub.add_parser(
        "run", parents=[common], help="Campaign at the first node count"
    )
    sub.add_parser(
        "sweep-k", parents=[common], help="Campaign over all node counts"
    )
    sub.add_parser(
        "roc", parents=[common], help="ROC curves over all node counts"
    )
    sub.add_parser(
        "rates", parents=[common], help="Sampling rate comparison"
    )
    sub.add_parser(
        "config", parents=[common], help="Print the effective configuration"
    )

    aliasing = sub.add_parser(
        "selftest-aliasing",
        parents=[common],
        help="Compare node measurements with a time-domain simulation",
    )
    aliasing.add_argument("--subbands", type=int, default=15)
    aliasing.add_argument("--pu-count", type=int, default=2)
    aliasing.add_argument("--oversample", type=int, default=64)
    aliasing.add_argument("--seeds", type=int, default=100)
    aliasing.add_argument("--tolerance", type=float, default=1e-6)

    oracle = sub.add_parser(
        "oracle-check",
        parents=[common],
        help="Compare the recovery with exhaustive search",
    )
    oracle.add_argument("--subbands", type=int, default=15)
    oracle.add_argument("--pu-count", type=int, default=1)
    oracle.add_argument("--nodes", type=int, help="Default: 8 x pu-count")
    oracle.add_argument("--instances", type=int, default=100)
    oracle.add_argument("--min-agreement", type=float, default=0.99)
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Configuration file (or defaults) with the command line overrides."""
    if args.config:
        cfg = ExperimentConfig.load(args.config)
    else:
        cfg = ExperimentConfig().validate()
    overrides = {}
    for name, field in [
        ("seed", "master_seed"),
        ("trials", "trials"),
        ("workers", "workers"),
        ("k_values", "k_values"),
        ("measurement_mode", "measurement_mode"),
        ("aggregation", "aggregation"),
    ]:
        value = getattr(args, name)
        if value is not None:
            overrides[field] = value
    if args.snr_db is not None:
        overrides["noise"] = NoiseSettings(snr_db=args.snr_db, sigma_w=None)
    elif args.sigma_w is not None:
        overrides["noise"] = NoiseSettings(snr_db=None, sigma_w=args.sigma_w)
    if overrides:
        cfg = cfg.replace(**overrides)
    return cfg


def _print_frame(df) -> None:
    sys.stdout.write(df.to_csv(**CSV_OPTIONS))


def _campaign(cfg: ExperimentConfig, args) -> Campaign:
    campaign = Campaign(cfg)
    campaign.set_progress_bar(not args.no_progress)
    return campaign


def _run(args) -> int:
    cfg = load_config(args)
    if args.command == "config":
        print(cfg.dumps())
        return EXIT_OK
    if args.command == "rates":
        df = rates_frame(cfg)
        _print_frame(df)
        return EXIT_OK
    if args.command == "selftest-aliasing":
        df = selftest_aliasing(
            L=args.subbands,
            J=args.pu_count,
            oversample=args.oversample,
            seeds=args.seeds,
            master_seed=cfg.master_seed,
        )
        worst = float(df["rel_error"].max())
        print("max rel_error {:.3e} over {} seeds".format(worst, len(df)))
        if not worst <= args.tolerance:
            log.error(
                "Relative error {:.3e} exceeds {:.1e}.".format(
                    worst, args.tolerance
                )
            )
            return EXIT_CHECK_FAILED
        return EXIT_OK
    if args.command == "oracle-check":
        df = oracle_check(
            L=args.subbands,
            J=args.pu_count,
            K=args.nodes,
            instances=args.instances,
            master_seed=cfg.master_seed,
            opts=cfg.solver,
        )
        agreement = float(df["support_match"].mean())
        print(
            "support agreement {:.3f} over {} instances".format(
                agreement, len(df)
            )
        )
        if agreement < args.min_agreement:
            log.error(
                "Agreement {:.3f} below {:.3f}.".format(
                    agreement, args.min_agreement
                )
            )
            return EXIT_CHECK_FAILED
        return EXIT_OK

    campaign = _campaign(cfg, args)
    if args.command == "run":
        result = campaign.run(cfg.k_values[:1])
        files = None
    elif args.command == "sweep-k":
        result = campaign.run()
        files = None
    elif args.command == "roc":
        result = campaign.run()
        files = ["roc.csv", "metadata.json"]
    else:
        raise ValueError("Unknown command {!r}.".format(args.command))
    result.write(args.out, overwrite=args.overwrite, files=files)
    _print_frame(result.aggregate)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.quiet:
        set_global_log_level(logging.ERROR)
    elif args.verbose >= 2:
        set_global_log_level(logging.DEBUG)
    elif args.verbose == 1:
        set_global_log_level(logging.INFO)
    try:
        return _run(args)
    except ConfigError as e:
        log.critical("Configuration error: {}".format(e))
        return EXIT_CONFIG_ERROR
    except NumericalError as e:
        log.critical("Numerical error: {}".format(e))
        return EXIT_NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
