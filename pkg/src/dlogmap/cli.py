"""Command-line entry point: ``dlogmap sweep|predict|selftest|constants``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from dlogmap import asymptotics
from dlogmap.report import describe_prediction, emit_outputs, render_report
from dlogmap.selftest import selftest
from dlogmap.sweep import SweepError, run_sweep


def _read_primes(args) -> list[int]:
    primes = list(args.prime or [])
    if args.primes_file:
        for line in Path(args.primes_file).read_text().splitlines():
            primes += [int(tok) for tok in line.split("#", 1)[0].replace(",", " ").split()]
    if not primes:
        raise SystemExit("sweep: give --prime and/or --primes-file")
    return primes


def _parse_classes(text: str):
    if text == "all":
        return None
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--class expects 'all' or a comma list of integers, got {text!r}")


def cmd_sweep(args) -> int:
    primes = _read_primes(args)
    if (args.g_start is None) != (args.g_end is None):
        raise SystemExit("sweep: --g-start and --g-end go together")
    results = []
    for p in primes:
        g_range = (args.g_start, args.g_end) if args.g_start is not None else None
        ckpt = args.checkpoint
        if ckpt and len(primes) > 1:
            ckpt = Path(f"{ckpt}.{p}")
        res = run_sweep(p, g_range=g_range, classes=args.classes, workers=args.workers, checkpoint_path=ckpt)
        results.append(res)
        print(render_report(res, args.report))
    if args.out:
        for path in emit_outputs(results, args.out, args.format):
            logging.info("wrote %s", path)
    return 0


def cmd_predict(args) -> int:
    print(describe_prediction(args.model, args.n), end="")
    return 0


def cmd_selftest(args) -> int:
    results = selftest(args.level)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    return 0 if all(r.passed for r in results) else 1


def cmd_constants(args) -> int:
    lam = asymptotics.golomb_dickman(args.tol)
    print(f"golomb_dickman        {lam:.12f}")
    print(f"sqrt(pi/2) * lambda   {asymptotics.max_cycle_coefficient():.12f}")
    print(f"sqrt(2 pi) * ln 2     {asymptotics.max_tail_coefficient():.12f}")
    print(f"-3 + 2 ln 2           {asymptotics.BINARY_MAX_TAIL_OFFSET:.12f}")
    print(f"euler_gamma           {asymptotics.EULER_GAMMA:.16f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlogmap", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="map every g for one or more primes")
    sw.add_argument("--prime", type=int, action="append")
    sw.add_argument("--primes-file")
    sw.add_argument("--g-start", type=int)
    sw.add_argument("--g-end", type=int)
    sw.add_argument("--class", dest="classes", type=_parse_classes, default=None, metavar="all|1,2,...")
    sw.add_argument("--workers", type=int, default=None)
    sw.add_argument("--checkpoint")
    sw.add_argument("--out")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--report", choices=("text", "markdown"), default="text")
    sw.set_defaults(func=cmd_sweep)

    pr = sub.add_parser("predict", help="theoretical values for a model")
    pr.add_argument("--model", choices=asymptotics.MODELS, required=True)
    pr.add_argument("--n", type=int, required=True)
    pr.set_defaults(func=cmd_predict)

    st = sub.add_parser("selftest", help="run the oracle checks")
    st.add_argument("--level", choices=("quick", "full"), default="quick")
    st.set_defaults(func=cmd_selftest)

    co = sub.add_parser("constants", help="print the integral constants")
    co.add_argument("--tol", type=float, default=1e-10)
    co.set_defaults(func=cmd_constants)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (SweepError, ValueError, OSError) as exc:
        print(f"dlogmap: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
