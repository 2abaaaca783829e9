"""Brute-force difference tables and second-order zero differential spectra.

Every function is materialized into a lookup table before a sweep.  The
second-order zero differential count at (a, b) is

    #{X : F(X+a+b) - F(X+b) - F(X+a) + F(X) = 0}
  = #{X : D_a(X+b) = D_a(X)},   D_a(X) = F(X+a) - F(X),

which is how the sweeps evaluate it: one derivative per row ``a`` and one
gathered comparison per cell.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .errors import (
    EvenCharacteristic,
    NotAMonomial,
    NotAPermutation,
    OddCharacteristic,
    ParityMismatch,
    ZeroDirection,
)
from .field import FieldCtx
from .solvers import gfp_rank

__all__ = [
    "Monomial",
    "SparsePoly",
    "CubicForm",
    "DOPoly",
    "Lut",
    "FuncSpec",
    "SpectrumTable",
    "Verdict",
    "AffineMap",
    "materialize",
    "eval_func",
    "ddt_entry",
    "ddt_table",
    "differential_uniformity",
    "sozd_entry",
    "sozd_table",
    "fbct_table",
    "sozd_row_monomial",
    "sozd_uniformity",
    "is_apn",
    "is_pn",
    "is_partial_apn",
    "parity_of",
    "validated_parity",
    "ea_transform",
    "random_affine",
    "random_affine_permutation",
    "is_trivial_cell",
]

SHIFT_TABLE_MAX_Q = 1 << 11


# ---------------------------------------------------------------------------
# function specifications


@dataclass(frozen=True)
class Monomial:
    d: int
    parity_hint: str | None = None

    def describe(self) -> str:
        return f"x^{self.d}"

    def table(self, ctx: FieldCtx) -> np.ndarray:
        return ctx.vpow(np.arange(ctx.q), self.d)


@dataclass(frozen=True)
class SparsePoly:
    """``sum c * X^e`` over ``terms = ((c, e), ...)``; c are element encodings."""

    terms: tuple
    parity_hint: str | None = None

    def describe(self) -> str:
        parts = []
        for c, e in self.terms:
            parts.append(f"x^{e}" if c == 1 else f"{c}*x^{e}")
        return " + ".join(parts) or "0"

    def table(self, ctx: FieldCtx) -> np.ndarray:
        xs = np.arange(ctx.q)
        out = np.zeros(ctx.q, dtype=np.int64)
        for c, e in self.terms:
            term = ctx.vpow(xs, e)
            if c != 1:
                term = ctx.vmul(term, np.full(ctx.q, c))
            out = ctx.vadd(out, term)
        return out


@dataclass(frozen=True)
class CubicForm:
    """``sum_{0<i<j<n} c_ij X^(p^i + p^j + 1)``; ``coeffs = (((i, j), c), ...)``."""

    coeffs: tuple
    parity_hint: str | None = None

    def exponents(self, ctx: FieldCtx):
        return [((ctx.p**i + ctx.p**j + 1), c) for (i, j), c in self.coeffs]

    def as_sparse(self, ctx: FieldCtx) -> SparsePoly:
        return SparsePoly(tuple((c, e) for e, c in self.exponents(ctx)))

    def describe(self) -> str:
        return " + ".join(f"{c}*x^(p^{i}+p^{j}+1)" for (i, j), c in self.coeffs) or "0"

    def table(self, ctx: FieldCtx) -> np.ndarray:
        return self.as_sparse(ctx).table(ctx)


@dataclass(frozen=True)
class DOPoly:
    """``sum_{i<=j} a_ij X^(p^i + p^j)``; ``coeffs = (((i, j), a), ...)``."""

    coeffs: tuple
    parity_hint: str | None = None

    def as_sparse(self, ctx: FieldCtx) -> SparsePoly:
        return SparsePoly(tuple((a, ctx.p**i + ctx.p**j) for (i, j), a in self.coeffs))

    def describe(self) -> str:
        return " + ".join(f"{a}*x^(p^{i}+p^{j})" for (i, j), a in self.coeffs) or "0"

    def table(self, ctx: FieldCtx) -> np.ndarray:
        return self.as_sparse(ctx).table(ctx)


@dataclass(frozen=True)
class Lut:
    values: tuple
    parity_hint: str | None = None

    @classmethod
    def of(cls, F, ctx: FieldCtx) -> Lut:
        return cls(tuple(int(v) for v in materialize(F, ctx)))

    def describe(self) -> str:
        digest = hashlib.sha256(",".join(map(str, self.values)).encode()).hexdigest()[:16]
        return f"lut:{digest}"

    def table(self, ctx: FieldCtx) -> np.ndarray:
        if len(self.values) != ctx.q:
            raise ValueError(f"lookup table has {len(self.values)} entries, field has {ctx.q}")
        return np.asarray(self.values, dtype=np.int64)


FuncSpec = Union[Monomial, SparsePoly, CubicForm, DOPoly, Lut]


def materialize(F: FuncSpec, ctx: FieldCtx) -> np.ndarray:
    """Lookup table ``T[x] = F(x)`` for all encodings x."""
    ctx.ensure_tables()
    return F.table(ctx)


def eval_func(F: FuncSpec, ctx: FieldCtx, x) -> int:
    """Evaluate F at a single element with scalar arithmetic."""
    x = int(x)
    if isinstance(F, Monomial):
        return ctx.pow(x, F.d)
    if isinstance(F, Lut):
        return F.values[x]
    if isinstance(F, (CubicForm, DOPoly)):
        F = F.as_sparse(ctx)
    acc = 0
    for c, e in F.terms:
        acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
    return acc


# ---------------------------------------------------------------------------
# tables


def is_trivial_cell(ctx: FieldCtx, a: int, b: int) -> bool:
    return a == 0 or b == 0 or (ctx.p == 2 and a == b)


@dataclass
class SpectrumTable:
    """q x q table of DDT or second-order zero differential counts.

    ``entries[a, b]`` is indexed by element encodings.  Monomial FBCTs can be
    row-backed: ``row[B]`` holds the count at (1, B) and the full table is
    only expanded on request.
    """

    ctx: FieldCtx
    kind: str
    func: str
    entries: np.ndarray | None = None
    row: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def cell(self, a: int, b: int) -> int:
        if self.entries is not None:
            return int(self.entries[a, b])
        if a == 0:
            return self.ctx.q
        return int(self.row[self.ctx.div(b, a)])

    def full(self) -> np.ndarray:
        if self.entries is None:
            self.entries = _expand_monomial_row(self.ctx, self.row)
        return self.entries

    def trivial_mask(self) -> np.ndarray:
        q = self.ctx.q
        a = np.arange(q)[:, None]
        b = np.arange(q)[None, :]
        if self.kind == "DDT":
            return np.broadcast_to(a == 0, (q, q))
        m = (a == 0) | (b == 0)
        if self.ctx.p == 2:
            m = m | (a == b)
        return m

    def summary(self) -> dict:
        """Value multisets ``{"trivial": {v: cells}, "nontrivial": {v: cells}}``."""
        if self.entries is None and self.row is not None:
            return _monomial_summary(self.ctx, self.row)
        mask = self.trivial_mask()
        E = self.entries
        return {
            "trivial": _multiset(E[mask]),
            "nontrivial": _multiset(E[~mask]),
        }

    def uniformity(self) -> int:
        """Max over the nontrivial region (a != 0 for DDT)."""
        nt = self.summary()["nontrivial"]
        return max(nt) if nt else 0

    def witness(self) -> tuple[int, int] | None:
        """Smallest (a, b) attaining the uniformity in the nontrivial region."""
        u = self.uniformity()
        if self.entries is None:
            ctx = self.ctx
            for B in range(1, ctx.q):
                if ctx.p == 2 and B == 1:
                    continue
                if self.row[B] == u:
                    return (1, B)
            return None
        E = np.where(self.trivial_mask(), -1, self.entries)
        idx = np.argwhere(E == u)
        return tuple(int(v) for v in idx[0]) if len(idx) else None

    # -- serialization --------------------------------------------------------

    def write_csv(self, fh):
        E = self.full()
        q = self.ctx.q
        fh.write("a,b,count\n")
        for a in range(q):
            fh.write("".join(f"{a},{b},{int(E[a, b])}\n" for b in range(q)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def to_dict(self) -> dict:
        summ = self.summary()
        return {
            "p": self.ctx.p,
            "n": self.ctx.n,
            "modulus": list(self.ctx.modulus),
            "func": self.func,
            "kind": self.kind,
            "summary": {k: {str(v): c for v, c in sorted(m.items())} for k, m in summ.items()},
            "uniformity": self.uniformity(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _multiset(values: np.ndarray) -> dict[int, int]:
    vals, counts = np.unique(values, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def _monomial_summary(ctx: FieldCtx, row: np.ndarray) -> dict:
    q = ctx.q
    trivial: Counter = Counter()
    nontrivial: Counter = Counter()
    trivial[q] += q  # a = 0
    trivial[int(row[0])] += q - 1  # b = 0, a != 0
    for B in range(1, q):
        if ctx.p == 2 and B == 1:
            trivial[int(row[1])] += q - 1
        else:
            nontrivial[int(row[B])] += q - 1
    return {"trivial": dict(sorted(trivial.items())), "nontrivial": dict(sorted(nontrivial.items()))}


def _expand_monomial_row(ctx: FieldCtx, row: np.ndarray) -> np.ndarray:
    q = ctx.q
    xs = np.arange(q)
    E = np.empty((q, q), dtype=np.int64)
    E[0, :] = q
    for a in range(1, q):
        # b / a for all b
        E[a, :] = row[ctx.vmul(xs, np.full(q, ctx.inv(a)))]
    return E


def _worker_count(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("FFSPECTRA_THREADS", "1") or 1)
    return max(1, threads)


def _run_rows(fn, rows, threads: int | None):
    """Apply ``fn`` to each row index; results come back in input order."""
    workers = _worker_count(threads)
    if workers == 1 or len(rows) < 2:
        return [fn(r) for r in rows]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, rows))


def _derivative(ctx: FieldCtx, T: np.ndarray, a: int) -> np.ndarray:
    xs = np.arange(ctx.q)
    return ctx.vsub(T[ctx.vadd(xs, a)], T)


def ddt_entry(F: FuncSpec, ctx: FieldCtx, a, b) -> int:
    a, b = int(a), int(b)
    if a == 0:
        raise ZeroDirection("DDT entry needs a != 0")
    D = _derivative(ctx, materialize(F, ctx), a)
    return int(np.count_nonzero(D == b))


def ddt_table(F: FuncSpec, ctx: FieldCtx, threads: int | None = None) -> SpectrumTable:
    T = materialize(F, ctx)
    q = ctx.q

    def row(a):
        return np.bincount(_derivative(ctx, T, a), minlength=q)

    E = np.array(_run_rows(row, list(range(q)), threads), dtype=np.int64)
    return SpectrumTable(ctx, "DDT", F.describe(), entries=E)


class Verdict(NamedTuple):
    holds: bool
    witness: tuple | None
    value: int


def differential_uniformity(F: FuncSpec, ctx: FieldCtx, threads: int | None = None) -> Verdict:
    """Delta_F with a maximizing (a, b); ``holds`` is always True."""
    tab = ddt_table(F, ctx, threads)
    return Verdict(True, tab.witness(), tab.uniformity())


def sozd_entry(F: FuncSpec, ctx: FieldCtx, a, b) -> int:
    """Direct four-term count of F(X+a+b) - F(X+b) - F(X+a) + F(X) = 0."""
    a, b = int(a), int(b)
    T = materialize(F, ctx)
    xs = np.arange(ctx.q)
    xa, xb = ctx.vadd(xs, a), ctx.vadd(xs, b)
    xab = ctx.vadd(xa, b)
    s = ctx.vadd(ctx.vsub(ctx.vsub(T[xab], T[xb]), T[xa]), T)
    return int(np.count_nonzero(s == 0))


def _shift_rows(ctx: FieldCtx, bs: np.ndarray) -> np.ndarray:
    xs = np.arange(ctx.q)
    return ctx.vadd(xs[None, :], bs[:, None])


def sozd_table(F: FuncSpec, ctx: FieldCtx, threads: int | None = None, chunk: int = 256) -> SpectrumTable:
    """Full q x q second-order zero differential table by brute force."""
    T = materialize(F, ctx)
    q = ctx.q
    shift = ctx.shift_table() if q <= SHIFT_TABLE_MAX_Q else None

    def row(a):
        D = _derivative(ctx, T, a)
        if shift is not None:
            return np.count_nonzero(D[shift] == D[None, :], axis=1)
        out = np.empty(q, dtype=np.int64)
        for lo in range(0, q, chunk):
            bs = np.arange(lo, min(q, lo + chunk))
            out[lo : lo + len(bs)] = np.count_nonzero(D[_shift_rows(ctx, bs)] == D[None, :], axis=1)
        return out

    E = np.array(_run_rows(row, list(range(q)), threads), dtype=np.int64)
    return SpectrumTable(ctx, "FBCT", F.describe(), entries=E)


def sozd_row_monomial(F: FuncSpec, ctx: FieldCtx, threads: int | None = None, chunk: int = 512) -> np.ndarray:
    """``row[B]`` = count at (1, B); for monomials count(a, b) = row[b / a]."""
    if not isinstance(F, Monomial):
        raise NotAMonomial(f"{F.describe()} is not a monomial")
    ctx.ensure_tables()
    T = materialize(F, ctx)
    q = ctx.q
    D = _derivative(ctx, T, 1)

    def block(lo):
        bs = np.arange(lo, min(q, lo + chunk))
        return np.count_nonzero(D[_shift_rows(ctx, bs)] == D[None, :], axis=1)

    parts = _run_rows(block, list(range(0, q, chunk)), threads)
    return np.concatenate(parts).astype(np.int64)


def fbct_table(F: FuncSpec, ctx: FieldCtx, threads: int | None = None) -> SpectrumTable:
    """Second-order zero differential table; monomials are row-backed."""
    if isinstance(F, Monomial):
        row = sozd_row_monomial(F, ctx, threads)
        return SpectrumTable(ctx, "FBCT", F.describe(), row=row)
    return sozd_table(F, ctx, threads)


def sozd_uniformity(F: FuncSpec, ctx: FieldCtx, threads: int | None = None) -> Verdict:
    """Max count over a, b nonzero (and a != b in characteristic 2)."""
    tab = fbct_table(F, ctx, threads)
    return Verdict(True, tab.witness(), tab.uniformity())


# ---------------------------------------------------------------------------
# classification


def is_apn(F: FuncSpec, ctx: FieldCtx, threads: int | None = None) -> Verdict:
    du = differential_uniformity(F, ctx, threads)
    return Verdict(du.value == 2, du.witness, du.value)


def is_pn(F: FuncSpec, ctx: FieldCtx, threads: int | None = None) -> Verdict:
    if ctx.p == 2:
        raise EvenCharacteristic("PN functions need odd characteristic")
    du = differential_uniformity(F, ctx, threads)
    return Verdict(du.value == 1, du.witness, du.value)


def is_partial_apn(F: FuncSpec, ctx: FieldCtx, x0) -> Verdict:
    """x0-APN test; the witness is the first violating (x, y) if any."""
    if ctx.p != 2:
        raise OddCharacteristic("partial APN is defined in characteristic 2")
    x0 = int(x0)
    T = materialize(F, ctx)
    ys = np.arange(ctx.q)
    fx0 = T[x0]
    for x in range(ctx.q):
        s = fx0 ^ T[x] ^ T[ys] ^ T[x0 ^ x ^ ys]
        bad = (s == 0) & (x != x0) & (ys != x0) & (ys != x)
        if bad.any():
            return Verdict(False, (x, int(np.argmax(bad))), 0)
    return Verdict(True, None, 0)


def parity_of(F: FuncSpec, ctx: FieldCtx) -> str | None:
    """'odd', 'even' or None, decided exhaustively (odd characteristic only)."""
    if ctx.p == 2:
        return None
    T = materialize(F, ctx)
    neg = ctx.neg_table
    if np.array_equal(T[neg], ctx.vneg(T)):
        return "odd"
    if np.array_equal(T[neg], T):
        return "even"
    return None


def validated_parity(F: FuncSpec, ctx: FieldCtx) -> str | None:
    """The parity hint after checking it, or the decided parity if no hint."""
    actual = parity_of(F, ctx)
    hint = getattr(F, "parity_hint", None)
    if hint is None:
        return actual
    if hint != actual:
        raise ParityMismatch(f"parity hint {hint!r} but function is {actual!r}")
    return hint


# ---------------------------------------------------------------------------
# EA transforms


@dataclass(frozen=True)
class AffineMap:
    """``x -> M x + offset`` on coordinate vectors over GF(p)."""

    matrix: tuple  # n x n, row-major tuple of tuples
    offset: int = 0

    def is_permutation(self, ctx: FieldCtx) -> bool:
        return gfp_rank(np.array(self.matrix), ctx.p) == ctx.n

    def table(self, ctx: FieldCtx) -> np.ndarray:
        xs = np.arange(ctx.q)
        D = ctx._vdigits(xs)
        Y = (D @ np.array(self.matrix, dtype=np.int64).T) % ctx.p
        return ctx.vadd(ctx._vfrom_digits(Y), self.offset)


def random_affine(ctx: FieldCtx, rng: np.random.Generator) -> AffineMap:
    M = rng.integers(0, ctx.p, size=(ctx.n, ctx.n))
    return AffineMap(tuple(map(tuple, M.tolist())), int(rng.integers(0, ctx.q)))


def random_affine_permutation(ctx: FieldCtx, rng: np.random.Generator) -> AffineMap:
    while True:
        A = random_affine(ctx, rng)
        if A.is_permutation(ctx):
            return A


def ea_transform(F: FuncSpec, ctx: FieldCtx, P: AffineMap, Q: AffineMap, A: AffineMap) -> Lut:
    """Lookup table of ``P o F o Q + A``."""
    for name, m in (("P", P), ("Q", Q)):
        if not m.is_permutation(ctx):
            raise NotAPermutation(f"{name} is not an affine permutation")
    T = materialize(F, ctx)
    G = ctx.vadd(P.table(ctx)[T[Q.table(ctx)]], A.table(ctx))
    return Lut(tuple(int(v) for v in G))
