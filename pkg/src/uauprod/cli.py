"""Command line interface: ``uauprod {cumulants,convolve,coeffs,check}``.

Every command writes sorted, indented JSON (exact rationals as strings) to
stdout or ``--out``.  The exit status is 0 when the command succeeded and,
for ``check``, when every check passed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .cumulants import CumulantContext, cbh_check, exp_odot, ln_odot, star_convolve
from .functionals import Functional, SchemaError, random_functional
from .products import CoefficientTable, ProductSpec, check_axioms, check_ordered_support, coefficient_table, format_eps
from .scalars import as_scalar

MAX_N = 6


class UsageError(Exception):
    pass


def _spec(args) -> ProductSpec:
    if args.table:
        if args.family:
            raise UsageError("give either --family or --table, not both")
        try:
            obj = json.loads(Path(args.table).read_text(encoding="utf-8"))
            table = CoefficientTable.from_json(obj.get("table", obj))
        except (OSError, ValueError, KeyError) as e:
            raise UsageError(f"{args.table}: {e}") from None
        return ProductSpec("table", table=table)
    family = args.family or "free"
    kw = {}
    for name in ("q", "r", "s"):
        val = getattr(args, name)
        if val is not None:
            kw[name] = as_scalar(val)
    if "q" in kw and family in ("boolean", "boolean_rs", "cfree", "bifree"):
        raise UsageError(f"--q does not apply to {family}")
    if ("r" in kw or "s" in kw) and family not in ("boolean", "boolean_rs"):
        raise UsageError("--r/--s only apply to boolean")
    return ProductSpec(family, **kw)


def _load(path: str) -> Functional:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(str(e)) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        return Functional.from_json(obj)
    except SchemaError as e:
        raise SchemaError(f"{path}: {e}") from None


def _context(args, spec: ProductSpec, phis: Sequence[Functional]) -> CumulantContext:
    N = args.N if args.N is not None else min(p.N for p in phis)
    if N > MAX_N:
        raise UsageError(f"--N {N} exceeds the limit {MAX_N}")
    for p in phis:
        if p.N < N:
            raise UsageError(f"functional only known to degree {p.N} < {N}")
    n = args.n or max([a.gen for p in phis for a in p.alphabet] + [1])
    ctx = CumulantContext(spec, n=n, m=args.m or 0, d=args.d or 0, N=N)
    letters = set(ctx.alphabet)
    for p in phis:
        stray = [a for a in p.alphabet if a not in letters]
        if stray:
            raise UsageError(f"letters {stray} are outside the alphabet for n={ctx.n}, m={ctx.m}")
        if p.d != ctx.d:
            raise UsageError(f"functional has d={p.d}, the product needs d={ctx.d}")
    return ctx


def _recast(ctx: CumulantContext, phi: Functional) -> Functional:
    return Functional(ctx.alphabet, ctx.N, [{w: v for w, v in comp.items() if len(w) <= ctx.N} for comp in phi.values])


def cmd_cumulants(args) -> tuple:
    spec = _spec(args)
    phi = _load(args.functional)
    ctx = _context(args, spec, [phi])
    phi = _recast(ctx, phi)
    out = exp_odot(ctx, phi) if args.inverse else ln_odot(ctx, phi)
    return out.to_json(), True


def cmd_convolve(args) -> tuple:
    spec = _spec(args)
    phis = [_load(p) for p in (args.first, args.second)]
    ctx = _context(args, spec, phis)
    a, b = (_recast(ctx, p) for p in phis)
    return star_convolve(ctx, a, b).to_json(), True


def cmd_coeffs(args) -> tuple:
    spec = _spec(args)
    N = args.N or 4
    if N > MAX_N:
        raise UsageError(f"--N {N} exceeds the limit {MAX_N}")
    table = coefficient_table(spec, N)
    return {"product": spec.to_json() if spec.family != "table" else {"family": "table"}, "table": table.to_json()}, True


def cmd_check(args) -> tuple:
    spec = _spec(args)
    N = args.N or 4
    if N > MAX_N:
        raise UsageError(f"--N {N} exceeds the limit {MAX_N}")
    if spec.family == "table":
        N = min(N, spec.table.N)
    report: dict = {"product": spec.describe(), "N": N}
    ok = True

    ax = check_axioms(spec, N)
    report["axioms"] = {
        "A1": ax.unital,
        "A2": ax.associative,
        "A3": ax.universal,
        "nondegenerate": ax.nondegenerate,
        "symmetric": ax.symmetric,
        "failures": ax.failures,
    }
    ok &= ax.ok

    if spec.family == "table":
        table = spec.table
    else:
        table = coefficient_table(spec, N)
    bad = check_ordered_support(table)
    report["ordered_support"] = {
        "pass": not bad,
        "violations": [f"{format_eps(eps)}: {pi.format()}" for eps, pi in bad],
    }
    ok &= not bad

    top = min(N, 4)
    ctx = CumulantContext(spec, n=1, N=top)
    coassoc = all(ctx.lachs.check_coassociative(g) for g in ctx.lachs.generators())
    report["coassociative"] = coassoc
    ok &= coassoc

    rng = random.Random(args.seed)
    phi1 = random_functional(rng, ctx.alphabet, top, ctx.d, bound=3)
    phi2 = random_functional(rng, ctx.alphabet, top, ctx.d, bound=3)
    cbh = cbh_check(ctx, phi1, phi2)
    report["cbh"] = {
        "pass": cbh.ok,
        "composition": cbh.composition,
        "degree3_expansion": cbh.cbh3,
        "additive": cbh.additive,
    }
    ok &= cbh.ok
    report["ok"] = bool(ok)
    return report, bool(ok)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uauprod", description="Exact universal products, convolutions and cumulants.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="tensor, free, boolean, monotone, antimonotone, cfree or bifree")
    common.add_argument("--q", help="deformation parameter (tensor, free, monotone, antimonotone)")
    common.add_argument("--r", help="Boolean parameter r")
    common.add_argument("--s", help="Boolean parameter s")
    common.add_argument("--table", help="JSON coefficient table defining the product")
    common.add_argument("--n", type=int, help="number of generators of V")
    common.add_argument("--m", type=int, help="number of faces")
    common.add_argument("--d", type=int, help="number of components")
    common.add_argument("--N", type=int, help="truncation degree (at most 6)")
    common.add_argument("--out", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cumulants", parents=[common], help="cumulant functional of a functional")
    p.add_argument("functional")
    p.add_argument("--inverse", action="store_true", help="exponentiate instead: treat the input as cumulants")
    p.set_defaults(run=cmd_cumulants)

    p = sub.add_parser("convolve", parents=[common], help="convolution of two functionals")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_convolve)

    p = sub.add_parser("coeffs", parents=[common], help="coefficient table of a product")
    p.set_defaults(run=cmd_coeffs)

    p = sub.add_parser("check", parents=[common], help="axioms, ordered support, coassociativity and CBH")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_check)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, ok = args.run(args)
    except (UsageError, SchemaError, ValueError, ArithmeticError) as e:
        print(f"uauprod {args.command}: error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
