"""Command-line front end: ``inforest analyze | simulate | verify``.

Exit codes: 0 on success, 1 on validation or check failure, 2 on I/O or
parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import generators
from .digraph import Digraph, read_edge_list
from .dynamics import default_eps, simulate_continuous, simulate_discrete
from .errors import InforestError, ParseError
from .forests import ENUMERATION_CAP, maximal_forest_matrix
from .scc import rank_report
from .spectral import RANK_TOL, ZERO_TOL, eigenprojector_at_zero, spectral_report
from .verify import VerifyOptions, verify_graphs

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


class ConsistencyError(InforestError):
    """Two routes to the same report field disagreed."""


def dump_json(doc) -> str:
    # float repr is the shortest string that round-trips, so output is exact
    # and byte-stable for fixed inputs
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def analyze(g: Digraph, zero_tol=ZERO_TOL, rank_tol=RANK_TOL, forest_cap=ENUMERATION_CAP) -> dict:
    rr = rank_report(g)
    spec = spectral_report(g, zero_tol, rank_tol)
    if spec.numerical_rank != rr.rank_corrected or spec.zero_multiplicity != rr.d:
        raise ConsistencyError(
            f"spectral rank {spec.numerical_rank} / zero multiplicity {spec.zero_multiplicity} "
            f"disagree with n - d = {rr.rank_corrected} / d = {rr.d}"
        )
    if g.n <= forest_cap:
        forest = maximal_forest_matrix(g, cap=forest_cap).to_dict()
    else:
        forest = {"skipped": True, "reason": f"n={g.n} exceeds forest cap {forest_cap}"}
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "analyze",
        "graph": {"n": g.n, "arc_count": g.num_arcs},
        "rank_report": rr.to_dict(),
        "spectral": spec.to_dict(),
        "forest": forest,
        "eigenprojector": eigenprojector_at_zero(g, rank_tol).matrix.tolist(),
    }


def parse_x0(text: str, n: int, default_seed: int):
    """Return ``(x0, seed)``.  Accepts ``a,b,c``, a file of numbers, ``random`` or ``random:<seed>``."""
    if text.startswith("random"):
        _, _, tail = text.partition(":")
        seed = int(tail) if tail else default_seed
        return np.random.default_rng(seed).uniform(-10.0, 10.0, n), seed
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        values = [float(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"cannot parse x0 {text!r}") from None
    return np.array(values), None


def simulate(g: Digraph, mode: str, x0, *, eps=None, dt=0.01, t_end=50.0, steps=10_000,
             stride=None, output=None, seed=None) -> dict:
    proj = eigenprojector_at_zero(g).matrix
    x0 = np.asarray(x0, dtype=float)
    if mode == "continuous":
        traj = simulate_continuous(g, x0, t_end, dt, stride=stride or 10)
        params = {"dt": dt, "t_end": t_end}
    else:
        eps = default_eps(g) if eps is None else eps
        traj = simulate_discrete(g, eps, x0, steps, stride=stride or 1)
        params = {"eps": eps, "steps": steps}
    if output:
        traj.write_csv(output)
    predicted = proj @ x0
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "mode": mode,
        "n": g.n,
        "seed": seed,
        **params,
        "x0": x0.tolist(),
        "records": len(traj.times),
        "output": output,
        "final": traj.final.tolist(),
        "predicted_limit": predicted.tolist(),
        "max_deviation": float(np.abs(traj.final - predicted).max()),
    }


def _build_parser():
    parser = argparse.ArgumentParser(prog="inforest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def tolerances(p):
        p.add_argument("--zero-tol", type=float, default=ZERO_TOL)
        p.add_argument("--rank-tol", type=float, default=RANK_TOL)
        p.add_argument("--forest-cap", type=int, default=ENUMERATION_CAP)

    p = sub.add_parser("analyze", help="rank, spectrum and J-bar of one graph")
    p.add_argument("path")
    tolerances(p)

    p = sub.add_parser("simulate", help="run the consensus dynamics on one graph")
    p.add_argument("path")
    p.add_argument("--mode", choices=("continuous", "discrete"), default="continuous")
    p.add_argument("--x0", required=True, help="a,b,c | FILE | random[:SEED]")
    p.add_argument("--eps", type=float, default=None, help="default 1/(2 * max out-degree)")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--t-end", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="CSV trajectory path")

    p = sub.add_parser("verify", help="cross-method verification suite")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("path", nargs="?")
    src.add_argument("--exhaustive", type=int, metavar="N")
    src.add_argument("--random", type=int, metavar="COUNT", help="seeded random weighted digraphs")
    tolerances(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cesaro-m", type=int, default=10_000)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--t-end", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--no-trajectories", action="store_true")
    return parser


def _run(args, out):
    if args.command == "analyze":
        g = read_edge_list(args.path)
        out.write(dump_json(analyze(g, args.zero_tol, args.rank_tol, args.forest_cap)))
        return EXIT_OK

    if args.command == "simulate":
        g = read_edge_list(args.path)
        x0, seed = parse_x0(args.x0, g.n, args.seed)
        summary = simulate(g, args.mode, x0, eps=args.eps, dt=args.dt, t_end=args.t_end,
                           steps=args.steps, stride=args.stride, output=args.output, seed=seed)
        out.write(dump_json(summary))
        return EXIT_OK

    if args.exhaustive is not None:
        if not 1 <= args.exhaustive <= 4:
            raise InforestError("--exhaustive supports 1 <= N <= 4")
        graphs = list(generators.all_digraphs(args.exhaustive))
        source = {"exhaustive": args.exhaustive}
    elif args.random is not None:
        graphs = generators.random_family(args.seed, args.random)
        source = {"random": args.random}
    else:
        graphs = [read_edge_list(args.path)]
        source = {"path": args.path}
    opts = VerifyOptions(zero_tol=args.zero_tol, rank_tol=args.rank_tol, forest_cap=args.forest_cap,
                         cesaro_m=args.cesaro_m, dt=args.dt, t_end=args.t_end, steps=args.steps,
                         seed=args.seed, trajectories=not args.no_trajectories)
    report = verify_graphs(graphs, opts)
    out.write(dump_json({"schema_version": SCHEMA_VERSION, "command": "verify", **source, **report}))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def main(argv=None, out=None) -> int:
    args = _build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return _run(args, out)
    except (OSError, ParseError) as exc:
        print(f"inforest: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InforestError as exc:
        print(f"inforest: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
