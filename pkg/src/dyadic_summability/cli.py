"""Command-line driver.

Exit status: 0 when every asserted inequality holds, 1 when one fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments as ex
from .dyadic import DEFAULT_MAX_RESOLUTION
from .reports import render


def _alphas(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def _common(p: argparse.ArgumentParser, resolution: int):
    p.add_argument("--resolution", "-N", type=int, default=resolution, help="grid resolution N")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument(
        "--max-memory-gate",
        type=int,
        default=DEFAULT_MAX_RESOLUTION,
        metavar="N",
        help="refuse resolutions above this (default %(default)s)",
    )


def _source(p: argparse.ArgumentParser, family: str):
    p.add_argument("--family", choices=ex.FAMILIES, default=family)
    p.add_argument("--input", help="sample file (first line N, then 2^N values)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyadic-summability",
        description="Walsh-Fourier summability experiments on the dyadic group.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernels", help="kernel norms, identities and Dirichlet closed forms")
    _common(k, 12)
    k.add_argument("--n-max", type=int, default=10)

    c = sub.add_parser("converge", help="L_{2^n} f -> f at desk scale")
    _common(c, 14)
    _source(c, "indicator")
    c.add_argument("--p", type=float, default=1.0)
    c.add_argument("--samples", type=int, default=8)

    d = sub.add_parser("diverge", help="weak-L_p growth of L_{2^n} on the counterexample")
    _common(d, 21)
    d.add_argument("--p", type=float, default=0.5)
    d.add_argument("--alphas", type=_alphas, default=(1, 10))

    l2 = sub.add_parser("lemma2", help="lower bound of the block sums on I_2(e_0+e_1)")
    _common(l2, 11)
    l2.add_argument("--alphas", type=_alphas, default=(1, 2, 3, 4, 5))

    g = sub.add_parser("diagnostics", help="weighted norm series (recorded, not asserted)")
    _common(g, 10)
    _source(g, "atom")
    g.add_argument("--p", type=float, default=0.5)
    return parser


def run(args: argparse.Namespace):
    if args.resolution > args.max_memory_gate:
        raise ex.UsageError(
            f"resolution {args.resolution} above --max-memory-gate {args.max_memory_gate}"
        )
    if args.command == "kernels":
        return ex.run_kernels(ex.KernelsConfig(args.resolution, args.n_max))
    if args.command == "converge":
        cfg = ex.ConvergenceConfig(
            args.resolution, args.p, args.family, args.input, args.samples, args.seed
        )
        return ex.run_convergence(cfg)
    if args.command == "diverge":
        cfg = ex.DivergenceConfig(args.p, args.alphas, args.resolution, args.max_memory_gate)
        return ex.run_divergence(cfg)
    if args.command == "lemma2":
        return ex.run_lemma2(ex.Lemma2Config(args.alphas, args.resolution))
    if args.command == "diagnostics":
        cfg = ex.DiagnosticsConfig(args.resolution, args.p, args.family, args.input, args.seed)
        return ex.run_diagnostics(cfg)
    raise ex.UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except ex.UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    for failure in report.failures:
        print(f"FAIL: {failure}", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
