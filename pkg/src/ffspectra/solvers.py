"""Structured root finding over GF(p^n).

Covers the equation shapes the closed-form spectra reduce to: affine
trinomials ``X^(p^k) - A X - B``, characteristic-2 quadratics and the cubic
``X^3 + X + a``, and kernels / preimages of linearized maps.  Elements are
passed and returned as integer encodings (``FieldElement`` is accepted
wherever an element is expected).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateA,
    OddCharacteristic,
    ZeroConstant,
    ZeroLeadingCoefficient,
    ZeroLinearCoefficient,
)
from .field import FieldCtx

__all__ = [
    "SolveOutcome",
    "TrinomialInstance",
    "LinearizedMap",
    "Kernel",
    "QuadraticExtension",
    "solve_trinomial",
    "solve_quadratic_char2",
    "classify_cubic_char2",
    "linearized_kernel",
    "affine_solution_count",
    "companion_matrix",
    "companion_rank_kernel",
    "gfp_rank",
    "field_matrix_rank",
]


@dataclass
class SolveOutcome:
    """Roots of a structured equation and the case that produced them.

    ``case`` names the branch that fired; ``predicted`` is the root count that
    branch promises; ``info`` holds the discriminating quantities.
    """

    roots: list[int]
    case: str
    predicted: int
    info: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.roots)


# ---------------------------------------------------------------------------
# linear algebra over GF(p)


def _rref_gfp(M: np.ndarray, p: int):
    """Reduced row echelon form over GF(p); returns (R, pivot columns)."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), p - 2, p) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def gfp_rank(M: np.ndarray, p: int) -> int:
    return len(_rref_gfp(M, p)[1])


def _gfp_kernel(M: np.ndarray, p: int) -> list[np.ndarray]:
    R, pivots = _rref_gfp(M, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, f]) % p
        basis.append(v)
    return basis


def _gfp_solve(M: np.ndarray, t: np.ndarray, p: int):
    """One solution of ``M v = t`` over GF(p), or None."""
    rows, cols = M.shape
    aug = np.concatenate([np.asarray(M, dtype=np.int64), np.asarray(t, dtype=np.int64).reshape(-1, 1)], axis=1)
    R, pivots = _rref_gfp(aug, p)
    if cols in pivots:
        return None
    v = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        v[pc] = R[i, cols]
    return v


# ---------------------------------------------------------------------------
# linear algebra over GF(q) on encodings


def _mat_mul(ctx: FieldCtx, X, Y):
    n, m, k = len(X), len(Y[0]), len(Y)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = 0
            for t in range(k):
                if X[i][t] and Y[t][j]:
                    s = ctx.add(s, ctx.mul(X[i][t], Y[t][j]))
            out[i][j] = s
    return out


def field_matrix_rank(ctx: FieldCtx, M) -> int:
    """Rank of a matrix with entries in GF(q) (Gaussian elimination)."""
    R = [list(row) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = ctx.inv(R[r][c])
        R[r] = [ctx.mul(inv, v) for v in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(R[i], R[r])]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# linearized maps


@dataclass(frozen=True)
class LinearizedMap:
    """``L(X) = sum c_i X^(p^i) + offset`` with ``terms = ((c_i, i), ...)``."""

    terms: tuple
    offset: int = 0

    def __call__(self, ctx: FieldCtx, x) -> int:
        x = int(x)
        acc = int(self.offset)
        for c, i in self.terms:
            acc = ctx.add(acc, ctx.mul(int(c), ctx.frob(x, i)))
        return acc

    def linear_part(self, ctx: FieldCtx, x) -> int:
        return ctx.sub(self(ctx, x), int(self.offset))

    def matrix(self, ctx: FieldCtx) -> np.ndarray:
        """n x n matrix over GF(p); column j holds the digits of L(x^j)."""
        n = ctx.n
        M = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            M[:, j] = ctx.digits(self.linear_part(ctx, ctx.p**j))
        return M


@dataclass
class Kernel:
    dim: int
    basis: list[int]

    def elements(self, ctx: FieldCtx) -> list[int]:
        """All p^dim kernel elements (sorted encodings)."""
        out = {0}
        for b in self.basis:
            new = set()
            for v in out:
                acc = v
                for _ in range(ctx.p):
                    new.add(acc)
                    acc = ctx.add(acc, b)
            out = new
        return sorted(out)


def linearized_kernel(ctx: FieldCtx, L: LinearizedMap) -> Kernel:
    """Kernel of the linear part of ``L`` by Gaussian elimination over GF(p)."""
    vecs = _gfp_kernel(L.matrix(ctx), ctx.p)
    return Kernel(len(vecs), [ctx.from_digits(v) for v in vecs])


def affine_solution_count(ctx: FieldCtx, L: LinearizedMap, delta) -> tuple[int, int | None]:
    """Solve ``linear_part(L)(X) = delta``: returns (count, one solution or None).

    The count is 0 or p^dim(ker L).
    """
    M = L.matrix(ctx)
    v = _gfp_solve(M, np.array(ctx.digits(int(delta))), ctx.p)
    if v is None:
        return 0, None
    dim = ctx.n - gfp_rank(M, ctx.p)
    return ctx.p**dim, ctx.from_digits(v)


# ---------------------------------------------------------------------------
# affine trinomials X^(p^k) - A X - B


@dataclass
class TrinomialInstance:
    """``X^(p^k) - A X - B`` over ``ctx`` with ``A != 0``."""

    ctx: FieldCtx
    k: int
    A: int
    B: int

    def __post_init__(self):
        self.A, self.B = int(self.A), int(self.B)
        if self.A == 0:
            raise ZeroLeadingCoefficient("trinomial needs A != 0")

    @property
    def d(self) -> int:
        return math.gcd(self.k, self.ctx.n)

    @property
    def m(self) -> int:
        return self.ctx.n // self.d

    def s_exponents(self, r: int) -> list[int]:
        """``s_i = sum_{j=i}^{r-1} p^(k(j+1))`` for 0 <= i <= r (s_r = 0)."""
        pk = self.ctx.p**self.k
        return [sum(pk ** (j + 1) for j in range(i, r)) for i in range(r + 1)]

    def t_exponents(self) -> list[int]:
        """``t_i = sum_{j=i}^{m-2} p^(k(j+1))`` for 0 <= i <= m-1."""
        pk = self.ctx.p**self.k
        return [sum(pk ** (j + 1) for j in range(i, self.m - 1)) for i in range(self.m)]

    def alpha_direct(self, r: int) -> int:
        pk = self.ctx.p**self.k
        return self.ctx.pow(self.A, sum(pk**j for j in range(r + 1)))

    def beta_direct(self, r: int) -> int:
        ctx = self.ctx
        s = self.s_exponents(r)
        acc = 0
        for i in range(r + 1):
            acc = ctx.add(acc, ctx.mul(ctx.pow(self.A, s[i]), ctx.frob(self.B, self.k * i)))
        return acc

    @cached_property
    def alphas_betas(self) -> tuple[list[int], list[int]]:
        """alpha_r, beta_r for r < m by composing X^(p^k) = A X + B with itself."""
        ctx, k = self.ctx, self.k
        alphas, betas = [self.A], [self.B]
        for _ in range(1, self.m):
            a_prev = ctx.frob(alphas[-1], k)
            alphas.append(ctx.mul(self.A, a_prev))
            betas.append(ctx.add(ctx.mul(a_prev, self.B), ctx.frob(betas[-1], k)))
        return alphas, betas

    def evaluate(self, x) -> int:
        ctx = self.ctx
        return ctx.sub(ctx.sub(ctx.frob(int(x), self.k), ctx.mul(self.A, int(x))), self.B)


def _root_of_power(ctx: FieldCtx, A: int, e: int) -> int | None:
    """Smallest-encoding tau with tau^e = A, or None."""
    qm1 = ctx.q - 1
    e %= qm1
    la = ctx.dlog(A)
    g = math.gcd(e, qm1)
    if la % g:
        return None
    step = qm1 // g
    if e == 0:
        # tau^0 = 1: any nonzero tau works when A = 1
        return 1 if A == 1 else None
    l0 = (la // g) * pow(e // g, -1, step) % step
    cands = [ctx.antilog_table[(l0 + j * step) % qm1] for j in range(g)]
    return int(min(cands))


def _subfield_elements(ctx: FieldCtx, d: int) -> list[int]:
    """The p^d elements of GF(p^d) inside ``ctx``."""
    ctx.ensure_tables()
    sub = ctx.p**d
    step = (ctx.q - 1) // (sub - 1)
    return [0] + sorted(int(ctx.antilog_table[j * step]) for j in range(sub - 1))


def solve_trinomial(inst: TrinomialInstance) -> SolveOutcome:
    """Roots of ``X^(p^k) - A X - B`` via the alpha/beta recursion.

    * alpha_{m-1} != 1: unique root beta/(1 - alpha);
    * alpha_{m-1} = 1, beta_{m-1} != 0: no roots;
    * alpha_{m-1} = 1, beta_{m-1} = 0: the coset x + GF(p^d) tau.
    """
    ctx = inst.ctx
    ctx.ensure_tables()
    alphas, betas = inst.alphas_betas
    alpha, beta = alphas[-1], betas[-1]
    d, m, k = inst.d, inst.m, inst.k
    info = {"d": d, "m": m, "alpha": alpha, "beta": beta}
    if alpha != 1:
        root = ctx.div(beta, ctx.sub(1, alpha))
        return SolveOutcome([root], "unique", 1, info)
    if beta != 0:
        return SolveOutcome([], "no-root", 0, info)

    t = inst.t_exponents()
    s = inst.s_exponents(m - 1)
    if t != s[:m]:  # pragma: no cover - identities of the recursion
        raise AssertionError("t_i and s_i disagree")
    c = next(ctx.p**j for j in range(ctx.n) if ctx.rel_trace(ctx.p**j, d) != 0)
    tr_c = ctx.rel_trace(c, d)
    x = 0
    partial = 0
    for i in range(m):
        partial = ctx.add(partial, ctx.frob(c, k * i))
        term = ctx.mul(ctx.mul(partial, ctx.pow(inst.A, t[i])), ctx.frob(inst.B, k * i))
        x = ctx.add(x, term)
    x = ctx.div(x, tr_c)
    tau = _root_of_power(ctx, inst.A, ctx.p**k - 1)
    if tau is None:  # pragma: no cover - alpha_{m-1} = 1 guarantees a root
        raise AssertionError("A has no (p^k - 1)-th root")
    roots = sorted({ctx.add(x, ctx.mul(delta, tau)) for delta in _subfield_elements(ctx, d)})
    info.update(c=c, tau=tau, x=x)
    return SolveOutcome(roots, "p^d-family", ctx.p**d, info)


# ---------------------------------------------------------------------------
# characteristic 2: quadratics and the cubic X^3 + X + a


def _require_char2(ctx: FieldCtx):
    if ctx.p != 2:
        raise OddCharacteristic("characteristic 2 required")


def half_trace(ctx: FieldCtx, c: int) -> int:
    """sum_{i=0}^{(n-1)/2} c^(2^(2i)); for odd n solves y^2 + y = c when Tr(c) = 0."""
    acc = 0
    y = c
    for _ in range((ctx.n + 1) // 2):
        acc ^= y
        y = ctx.frob(y, 2)
    return acc


_ARTIN_SCHREIER = LinearizedMap(((1, 1), (1, 0)))


def solve_quadratic_char2(ctx: FieldCtx, a, b) -> SolveOutcome:
    """Roots of ``X^2 + a X + b`` over GF(2^n), a != 0."""
    _require_char2(ctx)
    a, b = int(a), int(b)
    if a == 0:
        raise ZeroLinearCoefficient("X^2 + aX + b needs a != 0")
    c = ctx.div(b, ctx.mul(a, a))
    tr = ctx.abs_trace(c)
    info = {"trace": tr}
    if tr:
        return SolveOutcome([], "no-root", 0, info)
    if ctx.n % 2:
        y = half_trace(ctx, c)
    else:
        _, y = affine_solution_count(ctx, _ARTIN_SCHREIER, c)
    roots = sorted({ctx.mul(a, y), ctx.mul(a, y ^ 1)})
    return SolveOutcome(roots, "two-roots", 2, info)


class QuadraticExtension:
    """GF(2^(2n)) as GF(2^n)[y] / (y^2 + y + c) with Tr(c) = 1.

    Elements are pairs ``(u, v)`` meaning ``u + v*y``.
    """

    def __init__(self, base: FieldCtx):
        _require_char2(base)
        self.base = base
        self.c = next(x for x in range(1, base.q) if base.abs_trace(x) == 1)
        self.order = base.q * base.q - 1

    def mul(self, s, t):
        F = self.base
        (u1, v1), (u2, v2) = s, t
        vv = F.mul(v1, v2)
        return (F.mul(u1, u2) ^ F.mul(vv, self.c), F.mul(u1, v2) ^ F.mul(u2, v1) ^ vv)

    def pow(self, s, e: int):
        r = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, s)
            s = self.mul(s, s)
            e >>= 1
        return r

    def is_cube(self, s) -> bool:
        if s == (0, 0):
            return True
        return self.pow(s, self.order // 3) == (1, 0)

    def quadratic_roots(self, alpha: int) -> tuple:
        """Both roots of ``t^2 + alpha t + 1`` (alpha != 0) in the extension."""
        F = self.base
        e = F.inv(F.mul(alpha, alpha))
        if F.abs_trace(e) == 0:
            w = solve_quadratic_char2(F, 1, e).roots[0]
            t1 = (F.mul(alpha, w), 0)
        else:
            z = solve_quadratic_char2(F, 1, e ^ self.c).roots[0]
            t1 = (F.mul(alpha, z), alpha)
        t2 = (t1[0] ^ alpha, t1[1])
        return t1, t2


@dataclass
class CubicOutcome:
    shape: tuple
    roots: list[int]
    info: dict = field(default_factory=dict)


_SHAPE_ROOTS = {(1, 1, 1): 3, (1, 2): 1, (3,): 0}


def classify_cubic_char2(ctx: FieldCtx, a) -> CubicOutcome:
    """Factorization shape of ``X^3 + X + a`` over GF(2^n), a != 0.

    The shape comes from the trace test Tr(1/a) vs Tr(1) and the cube test
    on the roots of ``t^2 + a t + 1``; the roots come independently from the
    kernel of the linearized ``X^4 + X^2 + a X = X (X^3 + X + a)``.
    """
    _require_char2(ctx)
    a = int(a)
    if a == 0:
        raise ZeroConstant("X^3 + X + a needs a != 0")
    tr_inv = ctx.abs_trace(ctx.inv(a))
    tr_one = ctx.abs_trace(1)
    info = {"tr_inv_a": tr_inv, "tr_one": tr_one}
    if tr_inv != tr_one:
        shape = (1, 2)
    else:
        if ctx.n % 2 == 0:
            t1 = solve_quadratic_char2(ctx, a, 1).roots[0]
            cube = ctx.pow(t1, (ctx.q - 1) // 3) == 1
            info["t1"] = t1
        else:
            ext = QuadraticExtension(ctx)
            t1, _ = ext.quadratic_roots(a)
            cube = ext.is_cube(t1)
            info["t1"] = t1
        info["cube"] = cube
        shape = (1, 1, 1) if cube else (3,)
    kern = linearized_kernel(ctx, LinearizedMap(((1, 2), (1, 1), (a, 0))))
    roots = [r for r in kern.elements(ctx) if r]
    if len(roots) != _SHAPE_ROOTS[shape]:  # pragma: no cover - guarded by tests
        raise AssertionError(f"shape {shape} but {len(roots)} roots for a={a}")
    return CubicOutcome(shape, roots, info)


# ---------------------------------------------------------------------------
# companion-matrix kernel of T(Y) = Y^(2^t) + A Y^2 + (1 + A) Y


def companion_matrix(ctx: FieldCtx, A: int, t: int) -> list[list[int]]:
    """t x t companion matrix of ``Y^(2^t) + A Y^2 + (1+A) Y``."""
    C = [[0] * t for _ in range(t)]
    for i in range(1, t):
        C[i][i - 1] = 1
    C[0][t - 1] = A ^ 1
    C[1][t - 1] = ctx.add(C[1][t - 1], A)
    return C


def companion_product(ctx: FieldCtx, A: int, t: int) -> list[list[int]]:
    """``C_T C_T^(2) ... C_T^(2^(n-1))`` with entrywise Frobenius twists."""
    C = companion_matrix(ctx, A, t)
    P = C
    for i in range(1, ctx.n):
        Ci = [[ctx.frob(v, i) for v in row] for row in C]
        P = _mat_mul(ctx, P, Ci)
    return P


def companion_rank_kernel(ctx: FieldCtx, A, t: int) -> int:
    """dim over GF(2) of ker(Y^(2^t) + A Y^2 + (1+A) Y) as t - rank(E_1)."""
    _require_char2(ctx)
    A = int(A)
    if A == 1:
        raise DegenerateA("A = 1 degenerates the trinomial to Y^(2^t) + Y^2")
    if t < 2:
        raise ValueError("companion form needs t >= 2")
    P = companion_product(ctx, A, t)
    E1 = [[v ^ (1 if i == j else 0) for j, v in enumerate(row)] for i, row in enumerate(P)]
    return t - field_matrix_rank(ctx, E1)
