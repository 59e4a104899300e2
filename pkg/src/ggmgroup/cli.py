"""Command-line front end.

Exit status: 0 on success, 2 for degenerate samples, 1 for anything else.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import checks
from . import estimation as est
from . import io
from .graph_core import is_chordal
from .orbit import orbit_report

EXIT_OK, EXIT_ERROR, EXIT_DEGENERATE = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit seed for all randomness (default 0)")
    common.add_argument("--tol", type=float, default=None, help="override the numeric rank tolerance")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="machine-readable output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable output")
    common.set_defaults(pretty=False)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ggmgroup", description="Groups acting on Gaussian graphical models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full structural report")
    p.add_argument("graph")
    p.add_argument("--n", type=int, help="sample size for the breakdown bound")
    p.add_argument("--check-numeric", action="store_true")

    p = sub.add_parser("dim", parents=[common], help="orbit-space dimension")
    p.add_argument("graph")
    p.add_argument("--check-numeric", action="store_true", help="add the numeric tangent-space column")

    p = sub.add_parser("bounds", parents=[common], help="minimal sample size and breakdown bound")
    p.add_argument("graph")
    p.add_argument("--n", type=int)

    p = sub.add_parser("invariant", parents=[common], help="maximal G⁰-invariant of a sample")
    p.add_argument("graph")
    p.add_argument("csv")
    p.add_argument("--ranks-only", action="store_true")

    p = sub.add_parser("estimate", parents=[common], help="equivariant concentration estimate")
    p.add_argument("graph")
    p.add_argument("csv")
    p.add_argument("--h0", help="CSV matrix; selects the transitive-case estimator")
    p.add_argument("--tprime", choices=["identity", "mle"], default="identity")

    p = sub.add_parser("verify", parents=[common], help="property checks for one graph")
    p.add_argument("graph")
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("sweep", parents=[common], help="exhaustive checks over all graphs on max_m vertices")
    p.add_argument("max_m", type=int)
    p.add_argument("--min-m", type=int, default=None)
    return parser


def _rtol(args) -> dict:
    return {"rtol": args.tol} if args.tol else {}


def run(args) -> tuple[dict, int]:
    if args.command == "sweep":
        summary = checks.sweep(args.max_m, args.seed, args.min_m)
        return summary, EXIT_OK if summary["ok"] else EXIT_ERROR

    g = io.read_graph(args.graph)

    if args.command == "analyze":
        return io.analyze(g, args.n, args.seed, args.check_numeric, args.tol), EXIT_OK

    if args.command == "dim":
        rng = np.random.default_rng(args.seed) if args.check_numeric else None
        return orbit_report(g, rng, **({"tol": args.tol} if args.tol else {})).to_dict(), EXIT_OK

    if args.command == "bounds":
        out = {"min_sample_size": est.min_sample_size(g)}
        if args.n is not None:
            out["n"] = args.n
            out["breakdown_bound"] = str(est.breakdown_upper_bound(g, args.n))
        return out, EXIT_OK

    if args.command == "verify":
        results = checks.verify_graph(g, args.seed, args.trials)
        out = {"checks": results, "ok": all(results.values())}
        return out, EXIT_OK if out["ok"] else EXIT_ERROR

    x = io.read_matrix_csv(args.csv)
    if x.shape[0] != g.m:
        raise ValueError(f"sample has {x.shape[0]} rows but the graph has {g.m} vertices")

    if args.command == "invariant":
        tau = est.maximal_invariant(g, x, **_rtol(args))
        classes = [[v + 1 for v in c] for c in tau.classes]
        if args.ranks_only:
            return {"classes": classes, "ranks": tau.ranks()}, EXIT_OK
        return {"classes": classes, "projectors": [io.matrix_to_json(pr) for pr in tau.projectors]}, EXIT_OK

    if args.command == "estimate":
        if args.h0:
            k = est.transitive_equivariant_estimator(g, x, io.read_matrix_csv(args.h0), **_rtol(args))
            method = "transitive"
        else:
            if args.tprime == "mle":
                if not is_chordal(g):
                    raise ValueError("--tprime mle requires a chordal graph")
                t_prime = lambda xl: est.mle_decomposable(g, xl)  # noqa: E731
            else:
                t_prime = None
            k = est.equivariant_estimator(g, x, t_prime, **_rtol(args))
            method = f"slice-average ({args.tprime})"
        return {"method": method, "concentration": io.matrix_to_json(k)}, EXIT_OK

    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = run(args)
    except est.DegenerateSampleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.pretty:
        print(io.render_pretty(out))
    else:
        print(json.dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
