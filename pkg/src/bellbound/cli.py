"""Command-line front end; one subcommand per library operation.

Exit codes: 0 success, 1 domain error (one-line diagnostic on stderr),
2 usage error (argparse).  Every number is printed with repr so re-parsing
the output reproduces the value bit-for-bit.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bounds, harness, schmidt_state
from .bell_operators import BellCoefficientMatrix
from .errors import BellboundError

__all__ = ["main", "run", "build_parser"]


def _coeffs_flag(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--coeffs expects comma-separated reals, got {text!r}"
        ) from None


def _matrix_flag(text: str) -> BellCoefficientMatrix:
    try:
        rows = [[float(tok) for tok in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--matrix expects ';'-separated rows of comma-separated reals, got {text!r}"
        ) from None
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise argparse.ArgumentTypeError(f"--matrix must be square, got {text!r}")
    return BellCoefficientMatrix(np.array(rows))


def _dims_flag(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--dims expects comma-separated integers, got {text!r}"
        ) from None
    if not dims or any(m < 1 for m in dims):
        raise argparse.ArgumentTypeError(f"--dims entries must be positive, got {text!r}")
    return dims


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _seed_flag(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed expects an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("--seed must fit an unsigned 64-bit integer")
    return value


def _cmd_concurrence(args) -> int:
    s = schmidt_state.new_schmidt(args.coeffs)
    print(f"coeffs = {s.to_json()}")
    print(f"concurrence = {schmidt_state.concurrence(s)!r}")
    return 0


def _cmd_bell(args) -> int:
    s = schmidt_state.new_schmidt(args.coeffs)
    print(f"coeffs = {s.to_json()}")
    print(f"k = {bounds.k_value(s)!r}")
    print(f"gamma = {bounds.gamma_value(s)!r}")
    print(f"theta_star = {bounds.theta_star(s)!r}")
    print(f"bell_value = {bounds.bell_value_formula(s)!r}")
    return 0


def _cmd_bounds(args) -> int:
    s = schmidt_state.new_schmidt(args.coeffs)
    print(bounds.bound_report(s).to_json())
    return 0


def _cmd_jn(args) -> int:
    print(repr(bounds.classical_bound(args.matrix)))
    return 0


def _cmd_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.measure == "haar":
        s = schmidt_state.sample_haar(args.m, args.n if args.n is not None else args.m, rng)
    else:
        s = schmidt_state.sample_simplex(args.m, rng)
    print(s.to_json())
    return 0


def _sweep_config(args) -> harness.ExperimentConfig:
    kwargs = {} if args.tolerance is None else {"tolerance": args.tolerance}
    return harness.ExperimentConfig(
        dims=args.dims,
        samples=args.samples,
        seed=args.seed,
        measure=args.measure,
        second_dim_offset=args.offset,
        output_path=args.out,
        **kwargs,
    )


def _cmd_sweep(args) -> int:
    summary = harness.run_sweep(_sweep_config(args))
    print(f"measure = {summary.measure}")
    print(f"seed = {summary.seed}")
    print(f"samples_per_dim = {summary.samples_per_dim}")
    print(f"records_written = {summary.records_written}")
    for d in summary.per_dim:
        print(
            f"m={d.m} n={d.n} samples={d.samples}"
            f" min_theorem1_margin={d.min_theorem1_margin!r}"
            f" min_theorem2_margin={d.min_theorem2_margin!r}"
            f" max_concurrence={d.max_concurrence!r}"
            f" violations={d.violations}"
        )
    print(f"violations = {len(summary.violations)}")
    print(f"out = {args.out}")
    if summary.violations:
        for v in summary.violations:
            print(
                f"error: TheoremViolation: m={v.m} index={v.index} {v.check}"
                f" margin={v.margin!r}",
                file=sys.stderr,
            )
        return 1
    return 0


def _cmd_verify(args) -> int:
    n = args.n if args.n is not None else args.m
    if n < args.m:
        raise argparse.ArgumentTypeError(f"--n must be >= --m, got n={n} < m={args.m}")
    config = harness.ExperimentConfig(
        dims=(args.m,),
        samples=args.samples,
        seed=args.seed,
        measure=args.measure,
        second_dim_offset=n - args.m,
    )
    summary = harness.verify_oracle(config, grid_points=args.grid)
    print(f"measure = {summary.measure}")
    print(f"seed = {summary.seed}")
    print(f"samples_per_dim = {summary.samples_per_dim}")
    print(f"grid_points = {summary.grid_points}")
    for d in summary.per_dim:
        print(f"m={d.m} n={d.n} samples={d.samples} max_gap={d.max_gap!r}")
    print(f"max_gap = {summary.max_gap!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellbound",
        description="Bell values and concurrence bounds for bipartite pure states.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("concurrence", help="concurrence of a coefficient vector")
    p.add_argument("--coeffs", type=_coeffs_flag, required=True,
                   help="comma-separated amplitudes, e.g. 0.8,0.6")
    p.set_defaults(func=_cmd_concurrence)

    p = sub.add_parser("bell", help="closed-form Bell value and its parameters")
    p.add_argument("--coeffs", type=_coeffs_flag, required=True)
    p.set_defaults(func=_cmd_bell)

    p = sub.add_parser("bounds", help="full bound report as JSON")
    p.add_argument("--coeffs", type=_coeffs_flag, required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("jn", help="exhaustive classical bound of a coefficient matrix")
    p.add_argument("--matrix", type=_matrix_flag, required=True,
                   help="rows separated by ';', entries by ',', e.g. 1,1;1,-1")
    p.set_defaults(func=_cmd_jn)

    p = sub.add_parser("sample", help="draw one random state")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--seed", type=_seed_flag, required=True)
    p.add_argument("--measure", choices=harness.MEASURES, default="haar")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("sweep", help="Monte-Carlo theorem sweep to JSONL")
    p.add_argument("--dims", type=_dims_flag, required=True,
                   help="comma-separated m values, e.g. 2,4,6")
    p.add_argument("--samples", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed_flag, required=True)
    p.add_argument("--measure", choices=harness.MEASURES, default="haar")
    p.add_argument("--out", required=True, help="JSONL output path")
    p.add_argument("--offset", type=int, default=0,
                   help="n = m + offset for the second factor (default 0)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="theorem margin tolerance (default shared config)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="closed formula vs dense grid oracle")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--samples", type=_positive_int, required=True)
    p.add_argument("--grid", type=_positive_int, default=720)
    p.add_argument("--seed", type=_seed_flag, required=True)
    p.add_argument("--measure", choices=harness.MEASURES, default="haar")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))  # exits 2
    except BellboundError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    """Console-script entry point."""
    raise SystemExit(main())
