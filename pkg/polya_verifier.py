# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Command line front end of the verifier.

Every subcommand scans a range of orders or chains, writes a CSV or JSON
table to stdout (or ``--out``) and logs a summary on stderr. The exit code is
0 on success, 1 when a verified claim failed and 2 on a usage error.

Example:

    python polya_verifier.py spectrum --hemisphere -n 2 --k 1..6
    python polya_verifier.py certify --qtheta -n 5
    python polya_verifier.py bounds --sphere -n 2 --name sphere_upper --k 0..20
    python polya_verifier.py remainders --hemisphere -n 4 --remainder hat_minus --k 100..2000
'''

import argparse
import dataclasses
import logging
import os
import sys
from psutil import virtual_memory

from core.commands import select_command
from core.config import RunConfig, load_run_config
from utils import init_logging, print_rank, render_table, write_table, write_yaml

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2


def log_run_properties(config: RunConfig):
    """Log the resolved parameters of the run.

    Args:
        config (RunConfig): config containing parameters to log.
    """

    properties = {}

    # Build properties dictionary
    mem = virtual_memory()
    properties["System memory (GB)"] = float(mem.total) / (1024**3)

    props = [
        ("command", None),
        ("manifold.kind", "hemisphere"),
        ("manifold.n", None),
        ("manifold.p", 1),
        ("k_range", None),
        ("K_range", None),
        ("bits", 192),
        ("tol", None),
        ("jobs", 1),
        ("format", "csv"),
    ]

    for (key, default) in props:
        properties[key] = config.lookup(key, default)

    for k in properties:
        print_rank("{}: {}".format(k, properties[k]), loglevel=logging.DEBUG)


def _common_parser():
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    kind = common.add_mutually_exclusive_group()
    kind.add_argument("--sphere", dest="kind", action="store_const", const="sphere")
    kind.add_argument("--hemisphere", dest="kind", action="store_const", const="hemisphere")
    kind.add_argument("--wedge", dest="kind", action="store_const", const="wedge")
    common.add_argument("-n", type=int, default=None, help="Dimension of the manifold")
    common.add_argument("-p", type=int, default=None, help="Number of wedges tiling the hemisphere")
    common.add_argument("--k", default=None, help="Inclusive order range A..B")
    common.add_argument("--K", default=None, help="Inclusive chain range A..B")
    common.add_argument("--bits", type=int, default=None, help="Mantissa bits of the real arithmetic")
    common.add_argument("--tol", type=float, default=None, help="Comparison tolerance before scaling")
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--out", default=None, help="Output file, stdout when omitted")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes for range scans")
    common.add_argument("--K-bound", dest="K_bound", type=int, default=None,
                        help="Scan bound for constants and thresholds")
    common.add_argument("--config", default=None, help="YAML run file")
    common.add_argument("--log-dir", dest="log_dir", default=None, help="Folder for log.out")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="polya_verifier", allow_abbrev=False,
                                     description="Verify eigenvalue inequalities on spheres, hemispheres and wedges")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common], help="Eigenvalues with chain data")
    sub.add_parser("check-polya", parents=[common], help="Polya's inequality per order")

    bounds = sub.add_parser("bounds", parents=[common], help="Evaluate named bounds")
    bounds.add_argument("--name", dest="names", action="append", default=None,
                        help="Bound name, repeatable; every applicable bound when omitted")
    bounds.add_argument("--sharpness", choices=["k_minus", "k_plus", "all"], default=None,
                        help="Scan normalized gaps along a chain subsequence instead of every order")

    certify = sub.add_parser("certify", parents=[common], help="Exact certificate polynomials")
    which = certify.add_mutually_exclusive_group()
    which.add_argument("--qn", dest="certificate", action="store_const", const="qn")
    which.add_argument("--qtheta", dest="certificate", action="store_const", const="qtheta")
    which.add_argument("--mr", dest="certificate", action="store_const", const="mr")
    certify.add_argument("--order", type=int, default=None, help="Odd Taylor order of the mr certificate")

    averages = sub.add_parser("averages", parents=[common], help="Chain and total averages of the Polya margin")
    averages.add_argument("--mode", choices=["chain", "total", "min-chain"], default=None)

    sub.add_parser("scan-theta", parents=[common], help="Theta over a chain range")
    sub.add_parser("wedge", parents=[common], help="Wedge bounds through tiling")

    remainders = sub.add_parser("remainders", parents=[common], help="Remainders of the sharp sandwich")
    remainders.add_argument("--remainder", choices=["tilde_minus", "hat_minus", "minus", "plus"], default=None)

    functional = sub.add_parser("functional", parents=[common], help="Chain functionals over a chain range")
    functional.add_argument("--functional", choices=["R", "Phi", "Theta", "Omega", "Psi", "PolJ"], default=None)
    functional.add_argument("--offset", type=int, default=None, help="Chain offset j of PolJ")
    return parser


def _flags(args):
    return {
        "command": args.command,
        "manifold": {"kind": args.kind, "n": args.n, "p": args.p},
        "k_range": args.k,
        "K_range": args.K,
        "bits": args.bits,
        "tol": args.tol,
        "format": args.format,
        "out": args.out,
        "jobs": args.jobs,
        "K_bound": args.K_bound,
        "names": getattr(args, "names", None),
        "certificate": getattr(args, "certificate", None),
        "order": getattr(args, "order", None),
        "mode": getattr(args, "mode", None),
        "sharpness": getattr(args, "sharpness", None),
        "remainder": getattr(args, "remainder", None),
        "functional": getattr(args, "functional", None),
        "offset": getattr(args, "offset", None),
    }


def run(config: RunConfig):
    """Run one resolved config; returns the exit code."""
    result = select_command(config.command)(config)
    text = render_table(result.rows, result.columns, config.format, config.bits,
                        result.summary, config.command)
    if not write_table(text, config.out):
        print_rank(f"could not write {config.out}", loglevel=logging.ERROR)
        return EXIT_USAGE
    if config.out is not None:
        # Make a copy of the resolved config next to the output, for future reference
        cfg_out = os.path.splitext(config.out)[0] + "_config.yaml"
        write_yaml(cfg_out, dataclasses.asdict(config))

    for key, value in result.summary.items():
        print_rank(f"{key}: {value}")
    if not result.claims_ok:
        print_rank(f"{len(result.failed_claims)} verified claim(s) failed", loglevel=logging.WARNING)
        return EXIT_CLAIM_FAILED
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)

    # Initialize logging
    init_logging(args.log_dir, loglevel=logging.DEBUG if args.verbose else logging.INFO)

    try:
        config = load_run_config(_flags(args), args.config)
        log_run_properties(config)
        return run(config)
    except (ValueError, OSError) as err:
        print_rank(f"error: {err}", loglevel=logging.ERROR)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
