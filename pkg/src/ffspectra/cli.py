"""Command-line front end.

Usage::

    ffspectra field --p 2 --n 3
    ffspectra fbct --p 2 --n 5 --func "x^21" --out t.csv
    ffspectra uniformity --p 11 --n 1 --func "x^9 + x^4"
    ffspectra solve --kind trinomial --p 2 --n 5 --k 2 --A 3 --B 7
    ffspectra verify --theorem quarter_family --p 3 --n 7
    ffspectra search --family monomial --p 2 --n 6 --predicate 0apn --exp 21

Every subcommand exits 0 on success, 2 on invalid input or any library
error; ``verify`` additionally exits 1 when the check it ran fails.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from .closed_forms import TheoremId, verify_theorem
from .errors import BudgetExceeded, FFSpectraError, ParseError
from .field import FieldCtx, mk_field
from .solvers import (
    LinearizedMap,
    TrinomialInstance,
    classify_cubic_char2,
    companion_rank_kernel,
    linearized_kernel,
    solve_quadratic_char2,
    solve_trinomial,
)
from .spectra import (
    CubicForm,
    DOPoly,
    Monomial,
    SparsePoly,
    ddt_table,
    differential_uniformity,
    fbct_table,
    is_partial_apn,
    sozd_row_monomial,
    sozd_uniformity,
)

__all__ = ["FuncExpr", "parse_func", "main", "FULL_SWEEP_MAX_Q", "MONOMIAL_MAX_Q"]

FULL_SWEEP_MAX_Q = 1 << 10
MONOMIAL_MAX_Q = 1 << 16


# ---------------------------------------------------------------------------
# function expressions


@dataclass(frozen=True)
class Term:
    coeff: int  # decimal encoding, or the exponent K when ``gen`` is set
    exp: int
    gen: bool = False

    def __str__(self):
        if self.gen:
            return f"g^{self.coeff}*x^{self.exp}"
        if self.coeff == 1:
            return f"x^{self.exp}"
        return f"{self.coeff}*x^{self.exp}"


@dataclass(frozen=True)
class FuncExpr:
    """Parsed ``term + term + ...`` with terms ``x^D``, ``g^K*x^D``, ``C*x^D``."""

    terms: tuple

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)

    def to_func(self, ctx: FieldCtx):
        coeffs = [(ctx.pow(ctx.generator, t.coeff) if t.gen else t.coeff, t.exp) for t in self.terms]
        for c, _ in coeffs:
            if c >= ctx.q:
                raise ParseError(f"coefficient {c} is not an element of GF({ctx.p}^{ctx.n})")
        if len(coeffs) == 1 and coeffs[0][0] == 1:
            return Monomial(coeffs[0][1])
        return SparsePoly(tuple(coeffs))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<x>x)|(?P<g>g)|(?P<op>[\^*+]))")


def parse_func(text: str) -> FuncExpr:
    """Parse a function expression; errors carry the 0-based character offset."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            ws = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + ws]!r}", pos + ws)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))

    i = 0

    def peek():
        return tokens[i]

    def expect(kind, value=None):
        nonlocal i
        k, v, at = tokens[i]
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            got = v if v else "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", at)
        i += 1
        return v

    def power_of(var):
        expect(var)
        expect("op", "^")
        return int(expect("num"))

    terms = []
    while True:
        k, v, at = peek()
        if k == "x":
            terms.append(Term(1, power_of("x")))
        elif k == "g":
            K = power_of("g")
            expect("op", "*")
            terms.append(Term(K, power_of("x"), gen=True))
        elif k == "num":
            C = int(expect("num"))
            expect("op", "*")
            terms.append(Term(C, power_of("x")))
        else:
            raise ParseError(f"expected a term, got {v or 'end of input'!r}", at)
        k, v, at = peek()
        if k == "end":
            break
        expect("op", "+")
    return FuncExpr(tuple(terms))


def _as_structured(expr: FuncExpr, ctx: FieldCtx, cubic: bool):
    """Rewrite terms X^(p^i + p^j [+ 1]) as a CubicForm or DOPoly."""
    p, n = ctx.p, ctx.n
    func = expr.to_func(ctx)
    pairs = func.terms if isinstance(func, SparsePoly) else ((1, func.d),)
    out = []
    for c, e in pairs:
        target = e - 1 if cubic else e
        hit = None
        for i in range(n):
            for j in range(i, n):
                if p**i + p**j == target and (not cubic or 0 < i < j):
                    hit = (i, j)
        if hit is None:
            kind = "p^i+p^j+1 with 0<i<j<n" if cubic else "p^i+p^j"
            raise ParseError(f"exponent {e} is not of the form {kind}")
        out.append((hit, c))
    return CubicForm(tuple(out)) if cubic else DOPoly(tuple(out))


# ---------------------------------------------------------------------------
# helpers


def _field_from_args(args) -> FieldCtx:
    modulus = None
    if getattr(args, "modulus", None):
        try:
            modulus = [int(c) for c in args.modulus.split(",")]
        except ValueError as exc:
            raise ParseError(f"modulus must be comma-separated integers, got {args.modulus!r}") from exc
    return mk_field(args.p, args.n, modulus)


def _budget(ctx: FieldCtx, monomial: bool, force: bool):
    limit = MONOMIAL_MAX_Q if monomial else FULL_SWEEP_MAX_Q
    if ctx.q > limit and not force:
        raise BudgetExceeded(f"q = {ctx.q} exceeds the sweep budget {limit}; pass --force to override")


def _fmt_summary(summary: dict) -> str:
    parts = []
    for region in ("trivial", "nontrivial"):
        items = ", ".join(f"{v}:{c}" for v, c in sorted(summary[region].items()))
        parts.append(f"{region} {{{items}}}")
    return "; ".join(parts)


def _write_table(table, args):
    if not args.out:
        return
    if args.format == "csv" and table.entries is None:
        _budget(table.ctx, False, args.force)
    with open(args.out, "w", newline="") as fh:
        if args.format == "json":
            fh.write(table.to_json())
        else:
            table.write_csv(fh)


# ---------------------------------------------------------------------------
# subcommands


def cmd_field(args) -> int:
    ctx = _field_from_args(args)
    print(f"p = {ctx.p}, n = {ctx.n}, q = {ctx.q}")
    print(f"modulus: {ctx.modulus_str()}")
    print(f"modulus coefficients (low first): {','.join(map(str, ctx.modulus))}")
    print(f"generator: {ctx.generator}")
    print(f"log tables: {'built' if ctx.has_tables else 'not built'}")
    return 0


def _table_cmd(args, kind: str) -> int:
    ctx = _field_from_args(args)
    F = parse_func(args.func).to_func(ctx)
    monomial = isinstance(F, Monomial) and kind == "fbct"
    _budget(ctx, monomial, args.force)
    if kind == "fbct":
        table = fbct_table(F, ctx, args.threads)
        label = "nabla_F"
    else:
        table = ddt_table(F, ctx, args.threads)
        label = "Delta_F"
    _write_table(table, args)
    print(f"{kind.upper()} of {F.describe()} over GF({ctx.p}^{ctx.n})")
    print(f"{label} = {table.uniformity()}")
    print(f"spectrum: {_fmt_summary(table.summary())}")
    return 0


def cmd_fbct(args) -> int:
    return _table_cmd(args, "fbct")


def cmd_ddt(args) -> int:
    return _table_cmd(args, "ddt")


def cmd_uniformity(args) -> int:
    ctx = _field_from_args(args)
    F = parse_func(args.func).to_func(ctx)
    _budget(ctx, False, args.force)
    du = differential_uniformity(F, ctx, args.threads)
    nab = sozd_uniformity(F, ctx, args.threads)
    cls = {1: "PN", 2: "APN"}.get(du.value, "-")
    out = {"Delta_F": du.value, "nabla_F": nab.value, "class": cls, "nabla_witness": nab.witness}
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"Delta_F = {du.value} ({cls})")
        print(f"nabla_F = {nab.value}" + (f" at (a, b) = {nab.witness}" if nab.witness else ""))
    return 0


def cmd_solve(args) -> int:
    ctx = _field_from_args(args)
    el = ctx.parse_element
    if args.kind == "trinomial":
        out = solve_trinomial(TrinomialInstance(ctx, args.k, el(args.A), el(args.B)))
        print(f"X^({ctx.p}^{args.k}) - {args.A} X - {args.B}: case {out.case}")
        roots = out.roots
    elif args.kind == "quadratic":
        out = solve_quadratic_char2(ctx, el(args.a), el(args.b))
        print(f"X^2 + {args.a} X + {args.b}: case {out.case}")
        roots = out.roots
    elif args.kind == "cubic":
        out = classify_cubic_char2(ctx, el(args.a))
        print(f"X^3 + X + {args.a}: shape {out.shape}")
        roots = out.roots
    elif args.kind == "companion":
        dim = companion_rank_kernel(ctx, el(args.A), args.t)
        print(f"Y^(2^{args.t}) + A Y^2 + (1+A) Y, A = {args.A}: kernel dimension {dim}")
        roots = linearized_kernel(ctx, LinearizedMap(((1, args.t), (el(args.A), 1), (el(args.A) ^ 1, 0)))).elements(ctx)
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown kind {args.kind!r}")
    print(f"roots ({len(roots)}): {' '.join(map(str, sorted(roots)))}")
    return 0


_NEEDS_FUNC = {"cubic_general", "do_poly", "apn_char", "pn_char"}


def cmd_verify(args) -> int:
    ctx = _field_from_args(args)
    tid = TheoremId(args.theorem)
    params = {}
    if tid is TheoremId.BINOMIAL:
        params["u"] = ctx.parse_element(args.u or "1")
    if tid in (TheoremId.INVERSE_LIKE, TheoremId.INVERSE_LIKE_T3):
        if args.s is None and tid is TheoremId.INVERSE_LIKE:
            raise ParseError("--s is required for inverse_like")
        if args.s is not None:
            params["s"] = args.s
    if tid.value in _NEEDS_FUNC:
        if not args.func:
            raise ParseError(f"--func is required for {tid.value}")
        expr = parse_func(args.func)
        if tid is TheoremId.CUBIC_GENERAL:
            params["func"] = _as_structured(expr, ctx, cubic=True)
        elif tid is TheoremId.DO_POLY:
            params["func"] = _as_structured(expr, ctx, cubic=False)
        else:
            params["func"] = expr.to_func(ctx)
    _budget(ctx, tid is TheoremId.QUARTER_FAMILY, args.force)
    report = verify_theorem(tid, ctx, threads=args.threads, **params)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json())
    verdict = "PASS" if report.passed else "FAIL"
    if args.format == "json":
        sys.stdout.write(report.to_json())
    elif tid is TheoremId.QUARTER_FAMILY:
        ex = report.extra
        print(f"d={ex['d']}, nabla={report.uniformity}, bound {ex['bound']}, even={ex['even']}, {verdict}")
    elif tid is TheoremId.NABLA1_APN:
        ex = report.extra
        print(f"functions checked: {ex['functions_checked']}, nabla=1: {len(ex['nabla1_functions'])}")
        print(f"violations: {len(report.mismatches)}, {verdict}")
    else:
        print(f"{tid.value} over GF({ctx.p}^{ctx.n}): {report.cells_checked} cells, "
              f"{len(report.mismatches)} mismatches, nabla={report.uniformity}, {verdict}")
        for a, b, pred, got in report.mismatches[:10]:
            print(f"  mismatch at (a, b) = ({a}, {b}): predicted {pred}, counted {got}")
    return 0 if report.passed else 1


def _parse_range(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(?:-\s*(\d+)\s*)?", part)
        if not m:
            raise ParseError(f"bad range {text!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        out.extend(range(lo, hi + 1))
    return sorted(set(out))


def _predicate(text: str):
    """Returns (name, test(F, ctx, threads) -> bool)."""
    t = text.replace(" ", "").replace("≤", "<=")
    if t == "apn":
        return t, lambda F, ctx, th: differential_uniformity(F, ctx, th).value == 2
    if t == "0apn":
        return t, lambda F, ctx, th: is_partial_apn(F, ctx, 0).holds
    m = re.fullmatch(r"nabla<=(\d+)", t)
    if m:
        K = int(m.group(1))

        def nab(F, ctx, th):
            row = sozd_row_monomial(F, ctx, th)
            skip = 2 if ctx.p == 2 else 1  # B = 1 is trivial in characteristic 2
            return int(row[skip:].max(initial=0)) <= K

        return f"nabla<={K}", nab
    raise ParseError(f"unknown predicate {text!r}; expected apn, 0apn or nabla<=K")


def cmd_search(args) -> int:
    name, test = _predicate(args.predicate)
    for n in _parse_range(args.n):
        ctx = mk_field(args.p, n)
        _budget(ctx, name.startswith("nabla"), args.force)
        exps = [args.exp] if args.exp is not None else range(1, ctx.q - 1)
        hits = []
        for d in exps:
            ok = test(Monomial(d), ctx, args.threads)
            if args.exp is not None:
                print(f"n={n} d={d} {name}: {'HIT' if ok else 'MISS'}")
            if ok:
                hits.append(d)
        if args.exp is None:
            print(f"n={n}: {len(hits)} of {len(exps)} exponents satisfy {name}")
            if hits:
                print("  " + " ".join(map(str, hits)))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffspectra", description="Finite-field differential spectra toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, func=False):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--modulus", help="comma-separated coefficients, constant term first")
        sp.add_argument("--threads", type=int, default=None, help="worker threads (default: $FFSPECTRA_THREADS or 1)")
        sp.add_argument("--force", action="store_true", help="override the brute-force budget")
        if func:
            sp.add_argument("--func", required=True, help='e.g. "x^21" or "x^9 + 3*x^4"')

    sp = sub.add_parser("field", help="print the field context")
    common(sp)
    sp.set_defaults(run=cmd_field)

    for name, run in (("fbct", cmd_fbct), ("ddt", cmd_ddt)):
        sp = sub.add_parser(name, help=f"compute the {name.upper()} table")
        common(sp, func=True)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.set_defaults(run=run)

    sp = sub.add_parser("uniformity", help="differential and second-order zero uniformity")
    common(sp, func=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(run=cmd_uniformity)

    sp = sub.add_parser("solve", help="run one of the structured equation solvers")
    common(sp)
    sp.add_argument("--kind", choices=("trinomial", "quadratic", "cubic", "companion"), required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--t", type=int, default=2)
    for el in ("A", "B", "a", "b"):
        sp.add_argument(f"--{el}", default="1", help="element: encoding or g^k")
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("verify", help="check a closed form against brute force")
    common(sp)
    sp.add_argument("--theorem", choices=[t.value for t in TheoremId], required=True)
    sp.add_argument("--u", help="binomial coefficient u (encoding or g^k)")
    sp.add_argument("--s", type=int)
    sp.add_argument("--func")
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(run=cmd_verify)

    sp = sub.add_parser("search", help="sweep a function family for a predicate")
    sp.add_argument("--family", choices=("monomial",), default="monomial")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", required=True, help="degree or range, e.g. 6 or 3-7 or 3,5")
    sp.add_argument("--predicate", required=True, help="apn | 0apn | nabla<=K")
    sp.add_argument("--exp", type=int, help="test a single exponent instead of sweeping")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(run=cmd_search)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (FFSpectraError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
