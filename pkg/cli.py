#!/usr/bin/python3 -tt
# Project: frobenius_periodicity
# Filename: cli.py
# claudiadeluna
# PyCharm

"""
Command line front end.

Subcommands
- hk: Hilbert-Kunz function of a Fermat curve ring for e = 1..e_max.
- syzygy: sections of Syz(X^a1, Y^a2, Z^a3)(m) with a normalized basis.
- splitting: splitting type of three binary forms on the projective line.
- witness: search a twist range for a destabilizing section.
- verify: every checkable step of the periodicity theorem at (d, p).
- double-cover: periodicity of Syz(U^2, V^2, W^2) on the degree-2d curve.
- char2-suite: the Fermat cubic in characteristic 2.

Exit codes
- 0 success (or a verified report), 1 failed check, 2 invalid parameters.

Reports go to standard output (or --out); logs go to standard error.
"""

__author__ = "Claudia de Luna (claudia@indigowire.net)"
__version__ = ": 1.0 $"
__date__ = "11/25/25"
__copyright__ = "Copyright (c) 2025 Claudia"
__license__ = "Python"

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from errors import CheckFailure, ParameterError
from ff_linalg import BinaryForm, Prime
from graded_ring import CurveRing
from hilbert_kunz import hk_summary, hk_table
from periodicity import (
    EXHAUSTIVE,
    PAPER_REDUCTION,
    char2_cubic_suite,
    double_cover_check,
    verify_theorem,
)
from syzygy import (
    GeneratorList,
    instability_witness,
    p1_syzygy_dim,
    splitting_type_p1,
    syzygy_basis,
)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOGGER = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


# ---------- Configuration ----------


def int_list(text: str) -> Tuple[int, ...]:
    """argparse type for comma-separated integers such as "3,3,3"."""
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def int_pair(text: str) -> Tuple[int, int]:
    values = int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}")
    return values


def int_triple(text: str) -> Tuple[int, int, int]:
    values = int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected three exponents a1,a2,a3, got {text!r}")
    if min(values) < 1:
        raise argparse.ArgumentTypeError(f"exponents must be at least 1, got {text!r}")
    return values


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one run; nothing is computed before this exists."""

    command: str
    d: Optional[int] = None
    p: Optional[int] = None
    e_max: int = 1
    twist: Optional[int] = None
    window: Optional[Tuple[int, int]] = None
    gens: Optional[Tuple[int, int, int]] = None
    forms: Tuple[Tuple[int, ...], ...] = ()
    fmt: str = "json"
    exhaustive: bool = False
    exploratory: bool = False
    crosscheck: bool = True
    workers: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.d is not None and self.d < 2:
            raise ParameterError(f"--d must be at least 2, got {self.d}")
        if self.p is not None:
            Prime(self.p)
        if self.e_max < 1:
            raise ParameterError(f"--e-max must be at least 1, got {self.e_max}")
        if self.window is not None and self.window[0] > self.window[1]:
            raise ParameterError(f"empty window {self.window[0]},{self.window[1]}")
        if self.gens is not None and min(self.gens) < 1:
            raise ParameterError(f"exponents must be at least 1, got {self.gens}")
        if self.fmt not in FORMATS:
            raise ParameterError(f"unknown format {self.fmt!r}")
        if self.fmt == "csv" and self.command != "hk":
            raise ParameterError("csv output is only available for hk")
        if self.workers is not None and self.workers < 1:
            raise ParameterError(f"--workers must be positive, got {self.workers}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            d=getattr(args, "d", None),
            p=getattr(args, "p", None),
            e_max=getattr(args, "e_max", 1),
            twist=getattr(args, "twist", None),
            window=getattr(args, "window", None),
            gens=getattr(args, "gens", None),
            forms=tuple(getattr(args, "form", None) or ()),
            fmt=args.format,
            exhaustive=getattr(args, "exhaustive", False),
            exploratory=getattr(args, "exploratory", False),
            crosscheck=not getattr(args, "skip_crosscheck", False),
            workers=getattr(args, "workers", None),
            out=args.out,
        )

    def ring(self) -> CurveRing:
        return CurveRing(self.p, self.d)


# ---------- Commands ----------

Outcome = Tuple[Dict[str, object], int, Optional[str]]


def cmd_hk(config: RunConfig) -> Outcome:
    summary = hk_summary(config.ring(), config.e_max, crosscheck=config.crosscheck)
    table = hk_table(summary)
    rendered = None
    if config.fmt == "csv":
        rendered = table.to_csv(index=False)
    elif config.fmt == "text":
        rendered = table.to_string(index=False) + "\n"
    return summary.to_dict(), 0, rendered


def cmd_syzygy(config: RunConfig) -> Outcome:
    gens = GeneratorList.monomial_powers(config.ring(), config.gens)
    space = syzygy_basis(gens, config.twist)
    payload = space.to_dict()
    payload["gens"] = list(config.gens)
    return payload, 0, None


def cmd_splitting(config: RunConfig) -> Outcome:
    if len(config.forms) != 3:
        raise ParameterError(f"splitting needs exactly three --form options, got {len(config.forms)}")
    forms = [BinaryForm(coeffs, config.p) for coeffs in config.forms]
    split = splitting_type_p1(forms)
    payload = split.to_dict()
    payload["forms"] = [str(f) for f in forms]
    payload["profile"] = [p1_syzygy_dim(forms, m) for m in range(split.a + split.b + 3)]
    return payload, 0, None


def cmd_witness(config: RunConfig) -> Outcome:
    gens = GeneratorList.monomial_powers(config.ring(), config.gens)
    window = config.window or (0, sum(config.gens))
    witness = instability_witness(gens, window)
    payload: Dict[str, object] = {"gens": list(config.gens), "window": list(window)}
    if witness is None:
        payload.update({"witness": None, "note": "no witness found"})
    else:
        payload.update({"witness": witness.to_dict(), "note": "not semistable"})
    return payload, 0, None


def cmd_verify(config: RunConfig) -> Outcome:
    report = verify_theorem(
        config.d,
        config.p,
        exploratory=config.exploratory,
        generation_mode=EXHAUSTIVE if config.exhaustive else PAPER_REDUCTION,
        window=config.window,
        max_workers=config.workers,
    )
    status = 0 if report.exploratory or report.overall else 1
    return report.to_dict(), status, None


def cmd_double_cover(config: RunConfig) -> Outcome:
    report = double_cover_check(config.d, config.p, config.window, config.workers)
    return report.to_dict(), 0 if report.ok else 1, None


def cmd_char2_suite(config: RunConfig) -> Outcome:
    report = char2_cubic_suite(config.workers)
    return report.to_dict(), 0 if report.ok else 1, None


COMMANDS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "hk": cmd_hk,
    "syzygy": cmd_syzygy,
    "splitting": cmd_splitting,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "double-cover": cmd_double_cover,
    "char2-suite": cmd_char2_suite,
}


# ---------- Parser and output ----------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", help="write the report to this file instead of standard output")

    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--d", type=int, required=True, help="degree of the Fermat curve")
    curve.add_argument("--p", type=int, required=True, help="the characteristic")

    workers = argparse.ArgumentParser(add_help=False)
    workers.add_argument("--workers", type=int, default=None, help="threads for twist sweeps")

    parser = argparse.ArgumentParser(
        prog="frobenius-periodicity",
        description="Syzygy bundles, Hilbert-Kunz functions and Frobenius periodicity on Fermat curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    hk = sub.add_parser("hk", parents=[common, curve], help="Hilbert-Kunz function")
    hk.add_argument("--e-max", type=int, default=1)
    hk.add_argument(
        "--skip-crosscheck", action="store_true", help="do not re-derive colengths from syzygies"
    )

    syz = sub.add_parser("syzygy", parents=[common, curve], help="sections of a syzygy bundle")
    syz.add_argument("--gens", type=int_triple, required=True, help="exponents a1,a2,a3")
    syz.add_argument("--twist", type=int, required=True)

    split = sub.add_parser("splitting", parents=[common], help="splitting type on P^1")
    split.add_argument("--p", type=int, required=True)
    split.add_argument(
        "--form",
        type=int_list,
        action="append",
        help="coefficients of Y^n, X*Y^(n-1), ..., X^n; give three times",
    )

    witness = sub.add_parser("witness", parents=[common, curve], help="instability witness search")
    witness.add_argument("--gens", type=int_triple, required=True, help="exponents a1,a2,a3")
    witness.add_argument("--window", type=int_pair, help="twist range lo,hi")

    verify = sub.add_parser("verify", parents=[common, curve, workers], help="periodicity theorem")
    verify.add_argument("--exhaustive", action="store_true", help="exhaustive generation check")
    verify.add_argument("--exploratory", action="store_true", help="allow p = 1 mod 2d")
    verify.add_argument("--window", type=int_pair, help="twist window lo,hi")

    cover = sub.add_parser("double-cover", parents=[common, curve, workers], help="double cover periodicity")
    cover.add_argument("--window", type=int_pair, help="twist window lo,hi")

    sub.add_parser("char2-suite", parents=[common, workers], help="Fermat cubic in characteristic 2")
    return parser


def configure_logging(verbose: bool, quiet: bool):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def render(payload: Dict[str, object]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
        LOGGER.info("report written to %s", out)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = RunConfig.from_args(args)
        payload, status, rendered = COMMANDS[config.command](config)
    except ParameterError as exc:
        LOGGER.error("%s", exc)
        return 2
    except CheckFailure as exc:
        LOGGER.error("check failed: %s", exc)
        return 1
    emit(rendered if rendered is not None else render(payload), config.out)
    return status


def run(argv: Optional[List[str]] = None):
    sys.exit(main(argv))


if __name__ == "__main__":
    run()
