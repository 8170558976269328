"""Command-line entry point: ``gl2struct <subcommand> ...``.

Every subcommand runs in a single process with no persistent state.  The
exit status is 0 exactly when all requested verifications pass.  The
sampling seed comes from ``--seed``, then the GL2_SEED environment
variable, then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import csp3, leafcheck, linalg, reduction, roottype, structeq
from .binform import BinaryForm, discriminant, form_from_json
from .roottype import FactoredOctic, RootType

EXPECTED_ABSORPTION = {
    "a2": Fraction(3, 10),
    "b2": Fraction(1, 5),
    "a4": Fraction(1, 2),
    "b4": Fraction(0),
    "a6": Fraction(-1, 5),
    "b6": Fraction(-1, 20),
    "c4": Fraction(-1, 40),
    "d4": Fraction(-1, 160),
}


class CliError(Exception):
    pass


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("GL2_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"GL2_SEED must be an integer, got {env!r}") from None
    return 0


def _fmt(c) -> str:
    return str(c) if not isinstance(c, Fraction) or c.denominator != 1 else str(c.numerator)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}") from None


def _load_form(path: str) -> BinaryForm:
    """A binary form JSON, or a factored octic {"scale", "linear", "quadratic"}."""
    data = _load_json(path)
    try:
        if isinstance(data, dict) and ("linear" in data or "quadratic" in data):
            return FactoredOctic(
                Fraction(data.get("scale", 1)),
                tuple((Fraction(g), Fraction(h), int(m)) for g, h, m in data.get("linear", ())),
                tuple((Fraction(b), Fraction(c), int(m)) for b, c, m in data.get("quadratic", ())),
            ).expand()
        return form_from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad form in {path}: {exc}") from None


def _parse_number(x):
    if isinstance(x, bool):
        raise ValueError("boolean is not a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    v = _load_form(args.form)
    if v.degree != 8:
        raise CliError(f"expected an octic, got degree {v.degree}")
    if args.float:
        rt = roottype.classify_numeric([float(c) for c in v.coeffs], eps=args.eps)
    else:
        rt = roottype.classify_exact(v)
    planar = csp3.classify_planar_type(v)
    rank = linalg.rank(structeq.jmatrix(v))
    out = {"rootType": rt.label, "dim": rt.dimension, "sym": 9 - rt.dimension, "planar": planar, "rank": rank}
    if args.json:
        print(json.dumps(out))
    else:
        print(f"{rt.label} dim={rt.dimension} sym={9 - rt.dimension} planar={planar} rank={rank}")
    return 0


def cmd_jmat(args) -> int:
    v = _load_form(args.form)
    if v.degree != 8:
        raise CliError(f"expected an octic, got degree {v.degree}")
    jm = structeq.jmatrix(v)
    rank, det, disc = linalg.rank(jm), linalg.det(jm), discriminant(v)
    if args.json:
        print(json.dumps({
            "J": [[_fmt(c) for c in row] for row in jm],
            "rank": rank,
            "det": _fmt(det),
            "discriminant": _fmt(disc),
        }))
        return 0
    print("rows dT-8 .. dT8, columns " + " ".join(structeq.COFRAME_NAMES))
    for name, row in zip(structeq.T_NAMES, jm):
        print(f"{name:>4}: " + "  ".join(_fmt(c) for c in row))
    print(f"rank={rank}")
    print(f"det={_fmt(det)}")
    print(f"disc={_fmt(disc)}")
    return 0


def _verify_closure(args) -> int:
    rep = structeq.verify_closure(workers=args.workers)
    for key, status in rep.status.items():
        print(f"{key}: {status}")
    ok = rep.closed
    if args.mutations:
        sweep = structeq.mutation_sweep()
        caught = sum(sweep.values())
        print(f"mutations caught: {caught}/{len(sweep)}")
        ok = ok and caught == len(sweep)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _verify_absorption(args) -> int:
    got = structeq.absorption_constants()
    for k, c in got.items():
        print(f"{k} = {_fmt(c)}")
    ok = got == EXPECTED_ABSORPTION
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _verify_tangency(args) -> int:
    if args.all:
        types = [rt for rt in roottype.enumerate_types(include_zero=False)]
    elif args.type:
        try:
            types = [RootType.parse(args.type)]
        except ValueError as exc:
            raise CliError(str(exc)) from None
        if types[0].is_trivial:
            raise CliError("the zero form has no leaf to test")
    else:
        raise CliError("verify tangency needs --type RT or --all")
    ok = True
    for rt in types:
        rep = leafcheck.verify_leaf_tangency(roottype.sample_representative(rt))
        ok = ok and rep.verdict
        if args.json:
            print(json.dumps(rep.to_json()))
        else:
            print(f"{rt.label}: k={rep.k} rankJ={rep.rank_J} rankTangent={rep.rank_tangent} "
                  f"rankJoint={rep.rank_joint} {'ok' if rep.verdict else 'MISMATCH'}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _verify_detdisc(args) -> int:
    seed = _seed(args)
    samples = leafcheck.random_distinct_octics(args.n, seed)
    repeated = leafcheck.random_repeated_octics(max(1, args.n // 2), seed + 1)
    try:
        c = leafcheck.verify_det_disc_ratio(samples, repeated)
    except leafcheck.RatioNotConstant as exc:
        print(f"FAIL: {exc}")
        return 1
    print(f"det J / disc = {_fmt(c)} over {len(samples)} samples (seed {seed}); "
          f"{len(repeated)} repeated-root samples give 0 = 0")
    print("PASS")
    return 0


def _verify_x8(args) -> int:
    diffs = reduction.verify_x8_reduction(detail=True)
    for name in reduction.FORM_NAMES:
        print(f"d({name}): {'ok' if name not in diffs else 'mismatch'}")
        if name in diffs:
            print(f"  difference: {diffs[name]}")
    scale = reduction.x8_scale_from_structure_rules()
    print(f"full structure rules with T = s x^8: s = {scale['scale']} "
          f"({'consistent' if scale['consistent'] else 'inconsistent'})")
    ok = not diffs and scale["consistent"]
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    return {
        "closure": _verify_closure,
        "absorption": _verify_absorption,
        "tangency": _verify_tangency,
        "detdisc": _verify_detdisc,
        "x8": _verify_x8,
    }[args.what](args)


def cmd_strata(args) -> int:
    types = roottype.enumerate_types(include_zero=True)
    nontrivial = [rt for rt in types if not rt.is_trivial]
    print(f"{len(nontrivial)} nontrivial types")
    by_dim: dict[int, list[str]] = {}
    for rt in types:
        by_dim.setdefault(rt.dimension, []).append(rt.label)
    for dim in sorted(by_dim, reverse=True):
        print(f"dim {dim} ({len(by_dim[dim])}): {' '.join(by_dim[dim])}")
    graph = roottype.degeneration_graph()
    print(f"{graph.number_of_edges()} covering relations")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(roottype.poset_to_dot(graph))
        print(f"wrote {args.dot}")
    return 0


def cmd_pde(args) -> int:
    if args.action == "reconstruct":
        builder = {"0": csp3.eta_flat, "8": csp3.eta_dkp}[args.type]
        try:
            rel = csp3.reconstruct_relation(builder, seed=_seed(args))
        except (csp3.RelationNotFound, csp3.AmbiguousRelation) as exc:
            print(f"FAIL: {exc}")
            return 1
        failures = csp3.check_relation(rel, builder, count=args.check, seed=_seed(args) + 1)
        print(rel)
        print(f"fresh points: {args.check - failures}/{args.check} vanish")
        ok = failures == 0
    else:
        rng = random.Random(_seed(args))
        F = csp3.named_pde(args.name)
        ok = True
        for _ in range(args.points):
            U = csp3.on_locus_point(args.name, rng)
            A = csp3.pde_symbol(F, U)
            hyp = csp3.is_hyperbolic(A)
            ok = ok and hyp
            print(f"u33={_fmt(U[2][2])}: {'hyperbolic' if hyp else 'not hyperbolic'}")
        print(f"{args.name} ({csp3.NAMED_PDES[args.name][0]}): {'hyperbolic' if ok else 'not hyperbolic'}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_cone(args) -> int:
    data = _load_json(args.symbol)
    A = data.get("symbol") if isinstance(data, dict) else data
    try:
        A = [[_parse_number(x) for x in row] for row in A]
        if len(A) != 3 or any(len(r) != 3 for r in A):
            raise ValueError("symbol must be 3x3")
        if any(A[i][j] != A[j][i] for i in range(3) for j in range(i)):
            raise ValueError("symbol must be symmetric")
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad symbol in {args.symbol}: {exc}") from None
    try:
        cs = csp3.cone_from_symbol(A)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out = cs.to_json()
    out["rank"] = csp3.section_rank(cs)
    res = cs.residual(A)
    out["residual"] = max(abs(float(r)) for r in res)
    print(json.dumps(out))
    return 0 if out["rank"] == 5 and (cs.exact and not any(res) or out["residual"] < 1e-9) else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gl2struct", description="GL(2)-structure torsion, root types and PDE checks.")
    p.add_argument("--seed", type=int, default=None, help="sampling seed (overrides GL2_SEED)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="root type, dimension, symmetries, planar type and rank J of an octic")
    c.add_argument("form")
    c.add_argument("--float", action="store_true", help="numeric root clustering instead of exact arithmetic")
    c.add_argument("--eps", type=float, default=1e-8)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    j = sub.add_parser("jmat", help="J(v) with rank, determinant and discriminant")
    j.add_argument("form")
    j.add_argument("--json", action="store_true")
    j.set_defaults(func=cmd_jmat)

    v = sub.add_parser("verify", help="run one of the symbolic verifications")
    v.add_argument("what", choices=["closure", "absorption", "tangency", "detdisc", "x8"])
    v.add_argument("--type", help="root type label for tangency, e.g. '{4,[2,2]}'")
    v.add_argument("--all", action="store_true", help="tangency over all 54 nontrivial types")
    v.add_argument("--n", type=int, default=20, help="number of random octics for detdisc")
    v.add_argument("--mutations", action="store_true", help="closure: also negate every nonzero J entry")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("strata", help="enumerate root types and their degeneration order")
    s.add_argument("--dot", help="write the Hasse diagram here")
    s.set_defaults(func=cmd_strata)

    d = sub.add_parser("pde", help="Hessian PDE reconstruction and hyperbolicity")
    d.add_argument("action", choices=["reconstruct", "check"])
    d.add_argument("--type", choices=["0", "8"], default="0", help="reconstruct: torsion x^0 (wave) or x^8 (dKP)")
    d.add_argument("--name", choices=["wave", "dkp1", "71", "62", "611", "laplace"], default="wave")
    d.add_argument("--points", type=int, default=10)
    d.add_argument("--check", type=int, default=1000, help="fresh points for reconstructed relations")
    d.set_defaults(func=cmd_pde)

    k = sub.add_parser("cone", help="rational normal conic cut out by a PDE symbol")
    k.add_argument("symbol")
    k.set_defaults(func=cmd_cone)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, ZeroDivisionError, roottype.IndeterminateClassification) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
