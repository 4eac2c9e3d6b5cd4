"""Command-line interface.

Exit codes: 0 ok, 1 I/O failure, 2 usage error, 3 matrix check failure,
4 statistical validation failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
import time

from . import io as sio
from .bench import FIELDS, run_bench
from .core import SamplerStats, SinKDistribution, sample
from .oracle import sample_inverse_transform
from .randcorr import METHODS, check_correlation, randcorr
from .rng import DEFAULT_SEED, RandomSource, check_seed
from .validation import validate

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_CHECK = 3
EXIT_STATS = 4


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        return check_seed(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _k_value(text: str) -> float:
    try:
        k = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(k) or k < 1.0:
        raise argparse.ArgumentTypeError(f"k must satisfy k >= 1, got {text}")
    return k


def _integer_k(k: float, what: str) -> int:
    if k != math.floor(k):
        raise UsageError(f"{what} needs an integer k, got {k:g}")
    return int(k)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinkrand",
        description="Sample from sin^k(x) on (0, pi) and generate random correlation matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                       help=f"unsigned 64-bit seed (default {DEFAULT_SEED})")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("sample", help="draw variates from sin^k(x)")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--method", choices=METHODS, default="rejection")
    p.add_argument("--stats", action="store_true",
                   help="append a jsonl record with proposal counts and timing")
    common(p)

    p = sub.add_parser("randcorr", help="generate a random p x p correlation matrix")
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--method", choices=METHODS, default="rejection")
    p.add_argument("--format", choices=("csv", "matrixmarket", "jsonl"), default="csv")
    p.add_argument("--check", action="store_true",
                   help="verify symmetry, unit diagonal and Cholesky; exit 3 on failure")
    p.add_argument("--parallel", action="store_true",
                   help="sample columns on threads with per-column derived streams")
    common(p)

    p = sub.add_parser("validate", help="KS / mean / acceptance-rate report")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--n", type=_positive_int, default=100_000)
    p.add_argument("--method", choices=METHODS, default="rejection")
    common(p)

    p = sub.add_parser("bench", help="time correlation-matrix generation")
    p.add_argument("--p", type=_positive_int, nargs="+", default=[100])
    p.add_argument("--methods", choices=METHODS, nargs="+", default=list(METHODS))
    p.add_argument("--reps", type=_positive_int, default=5)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    common(p)
    return parser


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_sample(args) -> int:
    dist = SinKDistribution(args.k)
    stats = SamplerStats()
    rng = RandomSource(args.seed)
    t0 = time.perf_counter()
    if args.method == "rejection":
        x = sample(dist, rng, size=args.n, stats=stats)
    else:
        k = _integer_k(args.k, "the inverse-transform method")
        x = sample_inverse_transform(k, rng, size=args.n)
        stats.proposals = stats.acceptances = args.n
    seconds = time.perf_counter() - t0
    with _open_out(args.out) as fh:
        sio.write_variates(x, fh)
        if args.stats:
            sio.write_jsonl(
                {
                    "k": args.k,
                    "n": args.n,
                    "seed": args.seed,
                    "method": args.method,
                    "proposals": stats.proposals,
                    "acceptances": stats.acceptances,
                    "seconds": seconds,
                },
                fh,
            )
    return EXIT_OK


def cmd_randcorr(args) -> int:
    C = randcorr(args.p, RandomSource(args.seed), method=args.method, parallel=args.parallel)
    with _open_out(args.out) as fh:
        if args.format == "csv":
            sio.write_csv(C.R, fh)
        elif args.format == "matrixmarket":
            sio.write_matrix_market(C.R, fh)
        else:
            sio.write_matrix_jsonl(C.R, fh, p=args.p, seed=args.seed, method=args.method)
    if args.check:
        problems = check_correlation(C.R)
        if problems:
            for msg in problems:
                print(f"sinkrand: check failed: {msg}", file=sys.stderr)
            return EXIT_CHECK
    return EXIT_OK


def cmd_validate(args) -> int:
    k = _integer_k(args.k, "validate")
    if args.n < 1000:
        raise UsageError(f"validate needs n >= 1000, got {args.n}")
    report = validate(k, args.n, args.seed, method=args.method)
    with _open_out(args.out) as fh:
        sio.write_jsonl(report, fh)
    return EXIT_OK if report["passed"] else EXIT_STATS


def cmd_bench(args) -> int:
    rows = run_bench(args.p, args.methods, args.reps, args.seed)
    with _open_out(args.out) as fh:
        if args.format == "csv":
            writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow(row.as_dict())
        else:
            for row in rows:
                sio.write_jsonl(dict(row.as_dict(), seed=args.seed), fh)
    return EXIT_OK


COMMANDS = {
    "sample": cmd_sample,
    "randcorr": cmd_randcorr,
    "validate": cmd_validate,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sinkrand: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sinkrand: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
