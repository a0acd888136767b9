"""Command-line entry point.

Every run prints its resolved configuration as `#C key=value` lines and its
results as `#R key=value` lines.  Exit codes: 0 success / property holds,
1 property violated or object found, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import constructions, density, formats, freeness, graphlab, reduced
from .core import Hypergraph, SizeGuardError
from .orientation import double_tournament, hypergraph_from_tournament, random_tournament

JOBS_ENV = "HYPERTURAN_JOBS"
DEFAULT_THRESHOLD = 0.02


class UsageError(ValueError):
    pass


def _out(tag: str, **kv) -> None:
    for key, value in kv.items():
        print(f"#{tag} {key}={value}")


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return repr(float(x))
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _config(args: argparse.Namespace) -> None:
    for key in sorted(vars(args)):
        if key == "func":
            continue
        _out("C", **{key: vars(args)[key]})


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _shape(text: str) -> list[tuple[int, ...]]:
    """'1,2;1,3;2,3' -> [(1, 2), (1, 3), (2, 3)]; an empty part is the empty index set."""
    try:
        return [tuple(int(v) for v in part.split(",") if v) for part in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}") from None


def parse_pattern(spec: str, k: int | None) -> Hypergraph:
    """F, Fr:r, K:t or a path to a .hg file."""
    if spec in ("F", "Fr", "K") or spec.startswith(("Fr:", "K:")):
        if k is None:
            raise UsageError(f"pattern {spec!r} needs --k")
        if spec == "F":
            return constructions.pattern_Fk(k)
        kind, _, val = spec.partition(":")
        if not val:
            raise UsageError(f"pattern {spec!r} needs a parameter")
        if kind == "Fr":
            return constructions.pattern_Fkr(k, int(val))
        return constructions.pattern_clique(k, int(val))
    return formats.read_hypergraph(spec)


def _write_hg(H: Hypergraph, path: str | None) -> None:
    if path:
        formats.write_hypergraph(H, path)
    _out("R", edges=len(H.edges), density=_fmt(H.density()))


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> int:
    k, n = args.k, args.n
    if args.kind == "pattern":
        spec = {"F": "F", "Fr": f"Fr:{args.r}", "K": f"K:{args.t}"}[args.pattern]
        H = parse_pattern(spec, k)
        _write_hg(H, args.out)
        _out("R", vertices=H.n)
        return 0
    if n is None:
        raise UsageError(f"construct {args.kind} needs --n")
    if args.kind == "tournament":
        T = random_tournament(k - 1, n, args.seed)
        if args.tournament_out:
            formats.write_tournament(T, args.tournament_out)
        H = hypergraph_from_tournament(T)
    elif args.kind == "dt":
        if k % 2:
            raise UsageError("double tournaments need even k")
        T = random_tournament(k - 2, n, args.seed)
        DT = double_tournament(T)
        if args.tournament_out:
            formats.write_tournament(DT, args.tournament_out)
        H = hypergraph_from_tournament(DT)
    elif args.kind == "hr":
        gamma = constructions.random_colouring(k - 1, n, 2, args.seed)
        if args.colouring_out:
            formats.write_colouring(gamma, args.colouring_out)
        H = constructions.colouring_hypergraph_Hr(gamma, k, args.r)
    else:  # rodl
        if args.t is None or args.t <= k:
            raise UsageError("construct rodl needs --t > k")
        phi = constructions.random_colouring(k - 1, n, args.t - k + 1, args.seed)
        if args.colouring_out:
            formats.write_colouring(phi, args.colouring_out)
        H = constructions.rodl_hypergraph_R(phi, k)
    _write_hg(H, args.out)
    return 0


# ---------------------------------------------------------------------------
# density


def _measure(H: Hypergraph, args) -> density.DensityReport:
    common = dict(mode=args.mode, budget=args.budget, seed=args.seed, restarts=args.restarts, jobs=args.jobs)
    if args.shape is not None:
        return density.defect_family(H, args.d, args.shape, **common)
    if args.j == 1:
        return density.defect_vertex(H, args.d, **common)
    return density.defect_shadow(H, args.d, args.j, **common)


def cmd_defect(args) -> int:
    H = formats.read_hypergraph(args.input)
    rep = _measure(H, args)
    for line in rep.to_text().splitlines():
        print("#R " + line)
    if args.witness_out and isinstance(rep.witness, Hypergraph):
        formats.write_hypergraph(rep.witness, args.witness_out)
    return 0 if rep.eta_required <= args.threshold else 1


def cmd_experiment_hdense(args) -> int:
    etas = []
    for trial in range(args.trials):
        T = random_tournament(args.k - 1, args.n, [args.seed, trial])
        H = hypergraph_from_tournament(T)
        rep = _measure(H, args)
        etas.append(rep.eta_required)
        _out(
            "R",
            **{
                f"trial{trial}.edges": len(H.edges),
                f"trial{trial}.defect": rep.defect,
                f"trial{trial}.eta_required": _fmt(rep.eta_required),
            },
        )
    vals = np.array([float(e) for e in etas])
    q = np.quantile(vals, [0.0, 0.25, 0.5, 0.75, 1.0])
    _out("R", **{f"q{int(p * 100)}": repr(float(v)) for p, v in zip((0, 0.25, 0.5, 0.75, 1.0), q)})
    worst = max(etas)
    _out("R", max_eta_required=_fmt(worst), threshold=args.threshold, holds=int(worst <= args.threshold))
    return 0 if worst <= args.threshold else 1


# ---------------------------------------------------------------------------
# Turán numbers and freeness


def cmd_turan(args) -> int:
    F = parse_pattern(args.pattern, args.k)
    res = freeness.turan_number(args.n, F, time_budget=args.time_budget)
    _out("R", ex=res.value, exact=int(res.exact), nodes=res.nodes, ratio=repr(res.value / math.comb(args.n, F.k)))
    if args.out:
        formats.write_hypergraph(res.witness, args.out)
    return 0


def cmd_check_free(args) -> int:
    H = formats.read_hypergraph(args.input)
    if args.ordered:
        if args.pattern != "F":
            raise UsageError("--ordered only applies to the pattern F")
        phi = freeness.contains_ordered_Fk(H)
    else:
        phi = freeness.contains(H, parse_pattern(args.pattern, H.k), method=args.method)
    if phi is None:
        _out("R", free=1)
        return 0
    _out("R", free=0, witness=" ".join(f"{p}->{v}" for p, v in sorted(phi.items())))
    return 1


# ---------------------------------------------------------------------------
# lab


def cmd_lab_path(args) -> int:
    xi = graphlab.path_lemma_xi(args.eps, args.k)
    _out("R", xi=xi, xi_float=repr(float(xi)))
    if args.input is None:
        return 0
    G = formats.read_multipartite(args.input)
    if G.m != args.k:
        raise UsageError(f"graph has {G.m} classes, expected k = {args.k}")
    poor = all(graphlab.is_poor(G, r, r + 1, xi) for r in range(1, G.m))
    total, g = graphlab.count_transversal_paths(G)
    bound = (Fraction(1, 2 ** (args.k - 1)) + graphlab.as_fraction(args.eps)) * math.prod(G.sizes)
    holds = total < bound
    _out("R", poor=int(poor), paths=total, bound=_fmt(bound), holds=int(holds))
    return 0 if (holds or not poor) else 1


def cmd_lab_triangle(args) -> int:
    G = formats.read_multipartite(args.input)
    tri = graphlab.find_triangle(G)
    if tri is None:
        _out("R", triangle="none")
        return 0
    _out("R", triangle=" ".join(f"{c}:{v}" for c, v in tri))
    return 1


def cmd_lab_ramsey(args) -> int:
    bound = graphlab.extraction_bound(args.delta, args.k, args.m)
    _out("R", F=bound)
    if args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        sets = data["sets"]
        X = {tuple(int(i) for i in key.split(",")): v for key, v in data["X"].items()}
    else:
        rng = np.random.default_rng(args.seed)
        sets, X = graphlab.random_extraction_instance(args.delta, args.k, args.m, rng)
    res = graphlab.ramsey_extract(args.delta, args.k, args.m, sets, X)
    ok = graphlab.verify_extraction(sets, X, args.k, args.m, res)
    _out(
        "R",
        indices=",".join(map(str, res.indices)),
        elements=",".join(map(str, res.elements)),
        verified=int(ok),
    )
    return 0 if ok else 1


def cmd_lab_lemma51(args) -> int:
    G = formats.read_multipartite(args.input)
    rng = np.random.default_rng(args.seed)
    ny = G.sizes[args.y - 1]
    f = [Fraction(int(v), 1000) * args.M for v in rng.integers(0, 1001, size=ny)]
    chk = graphlab.check_lemma51(G, f, args.xi, args.M, args.x, args.y)
    _out("R", lhs=_fmt(chk.lhs), rhs=_fmt(chk.rhs), holds=int(chk.holds))
    return 0 if chk.holds else 1


def cmd_lab_support(args) -> int:
    A = formats.read_reduced(args.input)
    if args.d is not None:
        rep = reduced.is_d_dense(A, args.d)
        _out("R", dense=int(rep.dense), worst=",".join(map(str, rep.worst or ())), min_density=rep.min_density)
    if args.z:
        z = tuple(int(v) for v in args.z.split(","))
        wit = reduced.find_supported_triple(A, z)
    else:
        z = reduced.search_supported_Fk(A)
        wit = None if z is None else reduced.find_supported_triple(A, z)
    if wit is None:
        _out("R", supported="none")
        return 0
    _out("R", z=",".join(map(str, z)), ys=";".join(",".join(map(str, y)) for y in wit.ys))
    return 1


# ---------------------------------------------------------------------------
# parser


def _density_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=_fraction, required=True, help="target density (exact, e.g. 1/4)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--j", type=int, default=1, help="shadow uniformity (1 = vertex subsets)")
    g.add_argument("--shape", type=_shape, default=None, help="directed-family shape, e.g. '1,2;1,3;2,3'")
    p.add_argument("--mode", choices=density.MODES, default="local-search")
    p.add_argument("--budget", type=int, default=density.DEFAULT_BUDGET, help="candidate evaluations")
    p.add_argument("--restarts", type=int, default=density.DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=_fraction, default=Fraction(DEFAULT_THRESHOLD).limit_denominator())
    p.add_argument("--jobs", type=int, default=_default_jobs(), help=f"worker processes (default ${JOBS_ENV} or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperturan", description="Tournament hypergraphs and hereditary density tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a hypergraph and write it as .hg")
    p.add_argument("kind", choices=["tournament", "dt", "hr", "rodl", "pattern"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--t", type=int)
    p.add_argument("--pattern", choices=["F", "Fr", "K"], default="F", help="pattern kind for 'construct pattern'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--tournament-out")
    p.add_argument("--colouring-out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("experiment-hdense", help="defects of random tournament hypergraphs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=30)
    _density_flags(p)
    p.set_defaults(func=cmd_experiment_hdense)

    p = sub.add_parser("defect", help="density defect of a .hg file")
    p.add_argument("--input", required=True)
    p.add_argument("--witness-out")
    _density_flags(p)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("turan", help="exact ex(n, F) by branch and bound")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True, help="F, Fr:r, K:t or a .hg file")
    p.add_argument("--time-budget", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("check-free", help="search a .hg file for a pattern")
    p.add_argument("--input", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--ordered", action="store_true")
    p.add_argument("--method", choices=["auto", "kplus1", "backtrack"], default="auto")
    p.set_defaults(func=cmd_check_free)

    lab = sub.add_parser("lab", help="graph lemma experiments").add_subparsers(dest="experiment", required=True)

    p = lab.add_parser("path", help="path-lemma constant, optionally checked on a .mpg chain")
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input")
    p.set_defaults(func=cmd_lab_path)

    p = lab.add_parser("triangle", help="find a triangle in a .mpg graph")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_lab_triangle)

    p = lab.add_parser("ramsey", help="index/element extraction")
    p.add_argument("--delta", type=_fraction, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--input", help="JSON with 'sets' and 'X' ('i,j' keys); random instance if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lab_ramsey)

    p = lab.add_parser("lemma51", help="walk inequality for a poor pair and a random f")
    p.add_argument("--input", required=True)
    p.add_argument("--xi", type=_fraction, required=True)
    p.add_argument("--M", type=_fraction, default=Fraction(1))
    p.add_argument("--x", type=int, default=1)
    p.add_argument("--y", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lab_lemma51)

    p = lab.add_parser("support", help="supported F configurations of a .rhg file")
    p.add_argument("--input", required=True)
    p.add_argument("--z")
    p.add_argument("--d", type=_fraction)
    p.set_defaults(func=cmd_lab_support)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _config(args)
    try:
        return args.func(args)
    except (UsageError, formats.FormatError, SizeGuardError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
