"""Closed-form second-order zero differential spectra and their verifiers.

Each ``predict_*`` evaluates one spectrum formula at a single cell (a, b)
without enumerating X, and returns a :class:`Prediction` carrying the branch
that fired and the quantities the branch was decided on.  :func:`verify_theorem`
sweeps all q^2 cells and compares against the brute-force tables in
:mod:`ffspectra.spectra`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    BadCongruence,
    DegenerateField,
    EvenDegree,
    GcdViolation,
    MalformedCubic,
    PredicateViolation,
    WrongCharacteristic,
    WrongCodimension,
)
from .field import FieldCtx, FieldElement, is_irreducible, mk_field
from .solvers import (
    LinearizedMap,
    QuadraticExtension,
    TrinomialInstance,
    affine_solution_count,
    classify_cubic_char2,
    companion_matrix,
    companion_product,
    companion_rank_kernel,
    field_matrix_rank,
    solve_quadratic_char2,
    solve_trinomial,
)
from .spectra import (
    CubicForm,
    DOPoly,
    Monomial,
    SparsePoly,
    _run_rows,
    differential_uniformity,
    is_apn,
    is_pn,
    parity_of,
    sozd_row_monomial,
    sozd_table,
)

__all__ = [
    "TheoremId",
    "Prediction",
    "QuarterFamily",
    "VerifyReport",
    "predict_binomial",
    "predict_ternary_gold",
    "predict_quarter_family",
    "predict_x21",
    "predict_cubic",
    "predict_do",
    "predict_inverse_like",
    "predict_inverse_like_t3",
    "predict_characterization",
    "verify_theorem",
    "locate_example_representation",
]


class TheoremId(str, Enum):
    APN_CHAR = "apn_char"
    PN_CHAR = "pn_char"
    NABLA1_APN = "nabla1_apn"
    BINOMIAL = "binomial"
    TERNARY_GOLD = "ternary_gold"
    QUARTER_FAMILY = "quarter_family"
    X21_ODD = "x21_odd"
    X21_EVEN = "x21_even"
    CUBIC_GENERAL = "cubic_general"
    INVERSE_LIKE = "inverse_like"
    INVERSE_LIKE_T3 = "inverse_like_t3"
    DO_POLY = "do_poly"


@dataclass
class Prediction:
    value: int
    case: str
    info: dict = field(default_factory=dict)


def _elems(ctx: FieldCtx, *vals) -> list[FieldElement]:
    return [ctx.elem(int(v)) for v in vals]


# ---------------------------------------------------------------------------
# X^(q-1) + u X^2


def binomial_func(ctx: FieldCtx, u) -> SparsePoly:
    return SparsePoly(((1, ctx.q - 1), (int(u), 2)))


def _binomial_guards(ctx: FieldCtx, u, a, b, double_count: bool):
    """All (label, value) branches whose guard holds at (a, b), in display order."""
    p = ctx.p
    u, a, b = _elems(ctx, u, a, b)
    abu = a * b * u
    opp = a == -b
    same = a == b
    fired = []
    if p != 3 and opp and abu == 1:
        fired.append(("a=-b, abu=1", 1))
    if p != 3 and same and 2 * abu == 1:
        fired.append(("a=b, 2abu=1", 2))
    if p != 3 and same and abu == -1:
        # X = -a and X = -b coincide when a = b: one solution, not two
        fired.append(("a=b, abu=-1", 2 if double_count else 1))
    if p != 3 and opp and 2 * abu == -1:
        fired.append(("a=-b, 2abu=-1", 2))
    if not same and not opp and (2 * abu == 1 or 2 * abu == -1):
        fired.append(("a!=+-b, 2abu=+-1", 2))
    if p == 3 and opp and abu == 1:
        fired.append(("p=3, a=-b, abu=1", 3))
    if p == 3 and same and abu == -1:
        fired.append(("p=3, a=b, abu=-1", 4 if double_count else 3))
    return fired


def predict_binomial(ctx: FieldCtx, u, a, b, double_count: bool = False) -> Prediction:
    """Count at (a, b) for ``X^(q-1) + u X^2``, p odd.

    Only X in {0, -a, -b, -(a+b)} can be solutions; the branches below count
    the distinct ones.  ``double_count=True`` gives the naive case split that counts X = -a and
    X = -b separately even on the diagonal a = b (kept for comparison).
    """
    if ctx.p == 2:
        raise WrongCharacteristic("binomial family needs odd characteristic")
    if ctx.q <= 3:
        raise DegenerateField("X^(q-1) + uX^2 degenerates for q = 3")
    if int(u) == 0:
        raise ValueError("u must be nonzero")
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        return Prediction(ctx.q, "ab=0")
    fired = _binomial_guards(ctx, u, a, b, double_count)
    info = {"fired": [f[0] for f in fired]}
    if len({v for _, v in fired}) > 1:
        info["conflict"] = True
    if not fired:
        return Prediction(0, "otherwise", info)
    label, value = fired[0]
    return Prediction(value, label, info)


# ---------------------------------------------------------------------------
# X^(2*3^m + 1) over GF(3^n), n odd


def ternary_gold_exponent(n: int) -> int:
    return 2 * 3 ** ((n - 1) // 2) + 1


def predict_ternary_gold(ctx: FieldCtx, a, b) -> Prediction:
    """Count for ``X^(2*3^m+1)``, m = (n-1)/2: 3 when the trinomial in
    Y = X/a has alpha_{n-1} = 1, otherwise 1 (ab != 0)."""
    if ctx.p != 3:
        raise WrongCharacteristic("ternary family lives in characteristic 3")
    if ctx.n % 2 == 0:
        raise EvenDegree("n must be odd")
    if ctx.n == 1:
        raise DegenerateField("n = 1 gives the linear map X^3")
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        return Prediction(ctx.q, "ab=0")
    m = (ctx.n - 1) // 2
    A_, B_ = _elems(ctx, a, b)
    B = B_ / A_
    Bm = B.frob(m)
    lead = B + Bm
    coeff = -(Bm / lead)
    const = (Bm - B) * (Bm - 1) / lead
    inst = TrinomialInstance(ctx, m, coeff, const)
    out = solve_trinomial(inst)
    alpha = out.info["alpha"]
    info = {"alpha": alpha, "roots_Y": out.roots, "trinomial_case": out.case}
    if B == 1 or B == -1:
        return Prediction(3, "a=+-b", info)
    if alpha == 1:
        return Prediction(3, "alpha=1", info)
    return Prediction(1, "alpha!=1", info)


# ---------------------------------------------------------------------------
# X^d with d = (q+1)/4 (+ (q-1)/2): bounds only


@dataclass
class QuarterFamily:
    d: int
    bound: int
    chi2: int
    even: bool = True


def predict_quarter_family(p: int, n: int, ctx: FieldCtx | None = None) -> QuarterFamily:
    """Exponent and upper bound on the uniformity for the APN power map with
    q = 3 or 7 (mod 8).  The uniformity of this family is always even."""
    q = p**n
    if p == 2 or q % 8 not in (3, 7):
        raise BadCongruence(f"q = {q} is not 3 or 7 mod 8")
    d = (q + 1) // 4 + ((q - 1) // 2 if q % 8 == 3 else 0)
    if ctx is None:
        ctx = mk_field(p, n)
    chi2 = ctx.quad_char(ctx.from_int(2))
    if p == 3:
        bound = 8
    else:
        bound = 8 if chi2 == -1 else 18
    return QuarterFamily(d, bound, chi2)


# ---------------------------------------------------------------------------
# X^21 over GF(2^n)


def _x21_v_C(ctx: FieldCtx, a, b):
    A_, B_ = _elems(ctx, a, b)
    B = B_ / A_
    # v = (B^16 + B^4) / (B^4 + B) = tau^3 with tau = B(1 + B^3); the cube is
    # what makes Z = Y^4 + Y satisfy Z^4 + vZ + C = 0
    v = (B * (1 + B**3)) ** 3
    num = B_**20 + A_**4 * B_**16 + A_**15 * B_**5 + A_**3 * B_**17
    den = A_**16 * B_**4 + A_**19 * B_
    C = 1 + num / den
    return B, v, C


def _x21_sums(ctx: FieldCtx, v: FieldElement, C: FieldElement, terms: int):
    """sum_i v^{s_i} C^{4^i} and sum_r (sum_i (i+1) v^{s_i} C^{4^i})^{4^r}."""
    s = [sum(4 ** (j + 1) for j in range(i, terms - 1)) for i in range(terms)]
    parts = [v ** (s[i] % (ctx.q - 1)) * C.frob(2 * i) for i in range(terms)]
    sum1 = ctx.zero
    z1 = ctx.zero
    for i, t in enumerate(parts):
        sum1 = sum1 + t
        if (i + 1) % 2:
            z1 = z1 + t
    sum2 = ctx.zero
    for r in range(terms):
        sum2 = sum2 + z1.frob(2 * r)
    return sum1, sum2, z1


def predict_x21(ctx: FieldCtx, a, b, constructive: bool = False) -> Prediction:
    """Count for ``X^21`` over GF(2^n).

    n odd: 4 when both trace-type sums vanish, else 0.  n even: the cascaded
    trinomials Z^4 + vZ + C and Y^4 + Y + Z are solved with the general
    trinomial machinery (16 or 0).  ``constructive=True`` also returns the
    solutions X.
    """
    if ctx.p != 2:
        raise WrongCharacteristic("X^21 family lives in characteristic 2")
    a, b = int(a), int(b)
    q = ctx.q
    if a == 0 or b == 0 or a == b:
        return Prediction(q, "trivial")
    if ctx.n % 2 == 0 and ctx.pow(a, 3) == ctx.pow(b, 3):
        return Prediction(0, "a^3=b^3")
    B, v, C = _x21_v_C(ctx, a, b)
    if ctx.n % 2:
        sum1, sum2, z1 = _x21_sums(ctx, v, C, ctx.n)
        info = {"v": v.value, "C": C.value, "sum1": sum1.value, "sum2": sum2.value, "Z1": z1.value}
        value = 4 if (sum1 == 0 and sum2 == 0) else 0
        case = "sums vanish" if value else ("sum1!=0" if sum1 != 0 else "sum2!=0")
        pred = Prediction(value, case, info)
        if constructive:
            pred.info["solutions"] = _x21_cascade(ctx, a, v, C)[1]
        return pred
    sum1, _, _ = _x21_sums(ctx, v, C, ctx.n // 2)
    z_roots, xs = _x21_cascade(ctx, a, v, C)
    info = {"v": v.value, "C": C.value, "sum1": sum1.value, "Z_roots": z_roots}
    if constructive:
        info["solutions"] = xs
    if sum1 != 0:
        return Prediction(0, "sum1!=0", info)
    value = len(xs)
    return Prediction(value, "relative trace of Z vanishes" if value else "relative trace of Z nonzero", info)


def _x21_cascade(ctx: FieldCtx, a: int, v: FieldElement, C: FieldElement):
    """Solve Z^4 + vZ + C = 0, then Y^4 + Y + Z = 0; returns (Z roots, X = aY)."""
    z_out = solve_trinomial(TrinomialInstance(ctx, 2, v.value, C.value))
    xs = []
    for z in z_out.roots:
        y_out = solve_trinomial(TrinomialInstance(ctx, 2, 1, z))
        xs.extend(ctx.mul(a, y) for y in y_out.roots)
    return z_out.roots, sorted(xs)


# ---------------------------------------------------------------------------
# cubic functions sum c_ij X^(p^i + p^j + 1)


def cubic_linear_map(ctx: FieldCtx, F: CubicForm, a, b) -> tuple[LinearizedMap, int]:
    """(L_{a,b}, delta_{a,b}) such that the equation reads L(X) + delta = 0."""
    p = ctx.p
    a, b = _elems(ctx, a, b)
    coef: dict[int, FieldElement] = {}
    delta = ctx.zero
    for (i, j), c in F.coeffs:
        c = ctx.elem(int(c))
        ai, aj, bi, bj = a.frob(i), a.frob(j), b.frob(i), b.frob(j)
        mix = ai * bj + aj * bi
        coef[0] = coef.get(0, ctx.zero) + c * mix
        coef[i] = coef.get(i, ctx.zero) + c * (b * aj + a * bj)
        coef[j] = coef.get(j, ctx.zero) + c * (b * ai + a * bi)
        delta = delta + c * ((a + b) * mix + a * b ** (p**i + p**j) + b * a ** (p**i + p**j))
    terms = tuple((int(cv), k) for k, cv in sorted(coef.items()) if cv)
    return LinearizedMap(terms), delta.value


def _check_cubic(ctx: FieldCtx, F: CubicForm):
    for (i, j), _ in F.coeffs:
        if not 0 < i < j < ctx.n:
            raise MalformedCubic(f"term indices ({i}, {j}) outside 0 < i < j < {ctx.n}")


def predict_cubic(ctx: FieldCtx, F: CubicForm, a, b) -> Prediction:
    """p^dim ker L_{a,b} when -delta_{a,b} lies in the image of L_{a,b}, else 0."""
    _check_cubic(ctx, F)
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        return Prediction(ctx.q, "ab=0")
    L, delta = cubic_linear_map(ctx, F, a, b)
    count, sol = affine_solution_count(ctx, L, ctx.neg(delta))
    info = {"delta": delta, "L_terms": L.terms, "particular": sol}
    if count == 0:
        return Prediction(0, "delta not in image", info)
    return Prediction(count, "delta in image", info)


def predict_do(ctx: FieldCtx, F: DOPoly, a, b) -> Prediction:
    """DO polynomials: the second difference is the constant
    sum a_ij (a^{p^i} b^{p^j} + a^{p^j} b^{p^i}), so the count is q or 0."""
    a, b = _elems(ctx, a, b)
    const = ctx.zero
    for (i, j), c in F.coeffs:
        const = const + ctx.elem(int(c)) * (a.frob(i) * b.frob(j) + a.frob(j) * b.frob(i))
    if const == 0:
        return Prediction(ctx.q, "constant vanishes", {"constant": 0})
    return Prediction(0, "constant nonzero", {"constant": const.value})


# ---------------------------------------------------------------------------
# X^(2^n - 2^s)


def inverse_like_exponent(n: int, s: int) -> int:
    return 2**n - 2**s


def _check_inverse_like(ctx: FieldCtx, s: int):
    if ctx.p != 2:
        raise WrongCharacteristic("X^(2^n-2^s) family lives in characteristic 2")
    if not 1 <= s <= ctx.n - 2:
        raise ValueError(f"s = {s} outside 1..n-2")
    if math.gcd(ctx.n, s + 1) != 1:
        raise GcdViolation(f"gcd(n, s+1) = {math.gcd(ctx.n, s + 1)} != 1")


def inverse_like_A(ctx: FieldCtx, s: int, a, b) -> FieldElement:
    t = ctx.n - s
    A_, B_ = _elems(ctx, a, b)
    num = A_ * B_ ** (2**t) + A_ ** (2**t) * B_
    den = A_ ** (2**t - 2) * (A_ * B_**2 + A_**2 * B_)
    return num / den


_DIM_CACHE: dict = {}


def _companion_dim(ctx: FieldCtx, A: int, t: int) -> int:
    # A depends only on b/a, so a full sweep sees at most q distinct values
    key = (ctx.key, A, t)
    if key not in _DIM_CACHE:
        if len(_DIM_CACHE) > 1 << 16:
            _DIM_CACHE.clear()
        _DIM_CACHE[key] = companion_rank_kernel(ctx, A, t)
    return _DIM_CACHE[key]


def predict_inverse_like(ctx: FieldCtx, s: int, a, b) -> Prediction:
    """Count for ``X^(2^n - 2^s)``, gcd(n, s+1) = 1, via rank(E_1) of the
    companion-matrix product of ``Y^(2^t) + A Y^2 + (1+A) Y``, t = n - s."""
    _check_inverse_like(ctx, s)
    a, b = int(a), int(b)
    if a == 0 or b == 0 or a == b:
        return Prediction(ctx.q, "trivial")
    n, t = ctx.n, ctx.n - s
    A_, B_ = _elems(ctx, a, b)
    if A_ * B_.frob(s) + A_.frob(s) * B_ == 0:
        g = math.gcd(s, n)
        if g > 1:
            return Prediction(2**g - 4, "ab^(2^s)+a^(2^s)b=0", {"gcd_sn": g})
        return Prediction(0, "ab^(2^s)+a^(2^s)b=0, gcd=1", {"gcd_sn": g})
    A = inverse_like_A(ctx, s, a, b)
    info = {"A": A.value}
    if A == 1:
        return Prediction(0, "A=1", info)
    dim = _companion_dim(ctx, A.value, t)
    rank = t - dim
    info.update(rank_E1=rank, kernel_dim=dim)
    if rank <= t - 2:
        return Prediction(2 ** (t - rank) - 4, "rank(E1)<=t-2", info)
    return Prediction(0, "rank(E1)>t-2", info)


def predict_inverse_like_t3(ctx: FieldCtx, s: int, a, b) -> Prediction:
    """Count for ``X^(2^n - 2^s)`` with n - s = 3 from trace and cube tests."""
    if ctx.n - s != 3:
        raise WrongCodimension(f"n - s = {ctx.n - s}, expected 3")
    _check_inverse_like(ctx, s)
    a, b = int(a), int(b)
    if a == 0 or b == 0 or a == b:
        return Prediction(ctx.q, "trivial")
    n = ctx.n
    A_, B_ = _elems(ctx, a, b)
    if A_ * B_.frob(s) + A_.frob(s) * B_ == 0:
        if math.gcd(s, n) == 3:
            return Prediction(4, "ab^(2^s)+a^(2^s)b=0, gcd(s,n)=3")
        return Prediction(0, "ab^(2^s)+a^(2^s)b=0, gcd(s,n)=1")
    w = A_ * B_**2 + A_**2 * B_  # ab^2 + a^2 b
    tr1 = (A_**7 * w / (A_**2 * B_**8 + A_**8 * B_**2)).trace()
    tr2 = (A_**3 / w).trace()
    info = {"tr_first": tr1, "tr_second": tr2}
    if tr1 != 1 or tr2 != 1:
        return Prediction(0, "trace test fails", info)
    # t^2 + alpha t + 1 with alpha = (a^8 b^2 + a^2 b^8) / (a^7 (ab^2 + a^2 b))
    alpha = (A_**8 * B_**2 + A_**2 * B_**8) / (A_**7 * w)
    cubic = classify_cubic_char2(ctx, alpha.value)
    ext = QuadraticExtension(ctx)
    t1, t2 = ext.quadratic_roots(alpha.value)
    cubes = ext.is_cube(t1) and ext.is_cube(t2)
    info.update(alpha=alpha.value, cubic_shape=cubic.shape, t_cubes=cubes)
    if not cubes:
        return Prediction(0, "t1, t2 not cubes", info)
    # a^6 Z^2 + a^3 (ab^2 + a^2 b) Z + a^2 b^4 + a^4 b^2 + a^6 = 0
    a6 = A_**6
    z_lin = A_**3 * w / a6
    z_const = (A_**2 * B_**4 + A_**4 * B_**2 + a6) / a6
    zs = solve_quadratic_char2(ctx, z_lin.value, z_const.value).roots
    info["Z"] = zs
    if len(zs) != 2:
        return Prediction(0, "no Z roots", info)
    trs = [ctx.abs_trace(z) for z in zs]
    info["tr_Z"] = trs
    if trs == [0, 0]:
        return Prediction(4, "Tr(Z1)=Tr(Z2)=0", info)
    return Prediction(0, "Tr(Z) nonzero", info)


def locate_example_representation(n: int = 7, s: int = 4, x_only: bool = False):
    """Search degree-n moduli and generators g for one where (a, b) = (g^2, g)
    gives the companion entries 1+A = g^5+g^3+g and A = g^5+g^3+g+1.

    Returns the matching representations as dicts (modulus, generator, C_T,
    rank of E_1).  ``x_only`` restricts the generator to the class of x.
    """
    from .field import _monic_polys  # only this search enumerates moduli

    hits = []
    for f in _monic_polys(2, n):
        if not is_irreducible(f, 2):
            continue
        ctx = mk_field(2, n, f)
        ctx.ensure_tables()
        for g in [2] if x_only else range(2, ctx.q):
            if not _is_generator(ctx, g):
                continue
            G = ctx.elem(g)
            A = inverse_like_A(ctx, s, (G**2).value, g)
            if A + 1 != G**5 + G**3 + G:
                continue
            P = companion_product(ctx, A.value, n - s)
            E1 = [[v ^ (1 if i == j else 0) for j, v in enumerate(row)] for i, row in enumerate(P)]
            hits.append(
                {
                    "modulus": f,
                    "generator": g,
                    "C_T": companion_matrix(ctx, A.value, n - s),
                    "rank_E1": field_matrix_rank(ctx, E1),
                }
            )
    return hits


def _is_generator(ctx: FieldCtx, g: int) -> bool:
    from .field import prime_factors

    return all(ctx.pow(g, (ctx.q - 1) // r) != 1 for r in prime_factors(ctx.q - 1))


# ---------------------------------------------------------------------------
# characterization lemmas


def predict_characterization(ctx: FieldCtx, a, b) -> Prediction:
    """Spectrum forced on APN (p = 2) or PN (p odd) functions."""
    a, b = int(a), int(b)
    if a == 0 or b == 0 or (ctx.p == 2 and a == b):
        return Prediction(ctx.q, "trivial")
    return Prediction(0, "nontrivial")


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerifyReport:
    theorem: str
    field: dict
    cells_checked: int
    mismatches: list
    uniformity: int | None
    spectrum: dict
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.extra.get("pass", True)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "field": self.field,
            "cells_checked": self.cells_checked,
            "mismatches": self.mismatches,
            "uniformity": self.uniformity,
            "spectrum": self.spectrum,
            **({"extra": self.extra} if self.extra else {}),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), sort_keys=True, indent=2) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, Enum):
        return obj.value
    return obj


def _field_desc(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "n": ctx.n, "q": ctx.q, "modulus": list(ctx.modulus)}


def _compare(ctx: FieldCtx, predict, oracle: np.ndarray, threads=None):
    """Run ``predict(a, b)`` on every cell; return mismatches sorted by (a, b)."""
    q = ctx.q

    def row(a):
        bad = []
        for b in range(q):
            v = predict(a, b).value
            if v != oracle[a, b]:
                bad.append([a, b, v, int(oracle[a, b])])
        return bad

    rows = _run_rows(row, list(range(q)), threads)
    return [m for r in rows for m in r]


def _report(theorem, ctx, table, mismatches, extra=None) -> VerifyReport:
    summ = table.summary()
    return VerifyReport(
        theorem=theorem,
        field=_field_desc(ctx),
        cells_checked=ctx.q * ctx.q,
        mismatches=mismatches,
        uniformity=table.uniformity(),
        spectrum={k: {str(v): c for v, c in sorted(m.items())} for k, m in summ.items()},
        extra=extra or {},
    )


def verify_theorem(theorem, ctx: FieldCtx, *, strict: bool = False, threads=None, **params) -> VerifyReport:
    """Check a closed form against the brute-force oracle on every cell.

    Parameters by theorem: binomial ``u``; inverse_like / inverse_like_t3
    ``s``; cubic_general ``func`` (CubicForm); do_poly ``func`` (DOPoly);
    apn_char / pn_char ``func``; nabla1_apn optional ``exponents``.
    With ``strict=True`` a failing check raises PredicateViolation.
    """
    tid = TheoremId(theorem)
    report = _VERIFIERS[tid](ctx, threads=threads, **params)
    if strict and not report.passed:
        cell = report.mismatches[0] if report.mismatches else None
        raise PredicateViolation(f"{tid.value} failed on {ctx!r}: first mismatch {cell}", cell)
    return report


def _v_binomial(ctx, u, threads=None, double_count=False):
    u = int(u)
    F = binomial_func(ctx, u)
    table = sozd_table(F, ctx, threads)
    conflicts = []

    def pred(a, b):
        pr = predict_binomial(ctx, u, a, b, double_count=double_count)
        if pr.info.get("conflict"):
            conflicts.append([a, b, pr.info["fired"]])
        return pr

    mm = _compare(ctx, pred, table.entries, threads)
    extra = {"u": u, "chi_u": ctx.quad_char(u), "conflicts": conflicts}
    return _report("binomial", ctx, table, mm, extra)


def _v_ternary_gold(ctx, threads=None):
    d = ternary_gold_exponent(ctx.n)
    table = sozd_table(Monomial(d), ctx, threads)
    mm = _compare(ctx, lambda a, b: predict_ternary_gold(ctx, a, b), table.entries, threads)
    return _report("ternary_gold", ctx, table, mm, {"d": d})


def _v_x21(name):
    def run(ctx, threads=None):
        table = sozd_table(Monomial(21), ctx, threads)
        mm = _compare(ctx, lambda a, b: predict_x21(ctx, a, b), table.entries, threads)
        return _report(name, ctx, table, mm)

    return run


def _v_cubic(ctx, func, threads=None):
    table = sozd_table(func, ctx, threads)
    mm = _compare(ctx, lambda a, b: predict_cubic(ctx, func, a, b), table.entries, threads)
    return _report("cubic_general", ctx, table, mm, {"func": func.describe()})


def _v_do(ctx, func, threads=None):
    table = sozd_table(func, ctx, threads)
    mm = _compare(ctx, lambda a, b: predict_do(ctx, func, a, b), table.entries, threads)
    return _report("do_poly", ctx, table, mm, {"func": func.describe()})


def _v_inverse_like(ctx, s, threads=None):
    d = inverse_like_exponent(ctx.n, s)
    table = sozd_table(Monomial(d), ctx, threads)
    mm = _compare(ctx, lambda a, b: predict_inverse_like(ctx, s, a, b), table.entries, threads)
    return _report("inverse_like", ctx, table, mm, {"s": s, "d": d})


def _v_inverse_like_t3(ctx, s=None, threads=None):
    s = ctx.n - 3 if s is None else s
    d = inverse_like_exponent(ctx.n, s)
    table = sozd_table(Monomial(d), ctx, threads)
    mm = _compare(ctx, lambda a, b: predict_inverse_like_t3(ctx, s, a, b), table.entries, threads)
    return _report("inverse_like_t3", ctx, table, mm, {"s": s, "d": d})


def _v_quarter(ctx, threads=None):
    fam = predict_quarter_family(ctx.p, ctx.n, ctx)
    F = Monomial(fam.d)
    row = sozd_row_monomial(F, ctx, threads)
    from .spectra import SpectrumTable

    table = SpectrumTable(ctx, "FBCT", F.describe(), row=row)
    u = table.uniformity()
    ok = u <= fam.bound and u % 2 == 0
    extra = {"d": fam.d, "bound": fam.bound, "chi2": fam.chi2, "even": u % 2 == 0, "pass": ok}
    rep = _report("quarter_family", ctx, table, [], extra)
    rep.cells_checked = ctx.q
    return rep


def _v_characterization(name):
    def run(ctx, func, threads=None):
        if name == "pn_char":
            verdict = is_pn(func, ctx, threads)
        else:
            if ctx.p != 2:
                raise WrongCharacteristic("APN characterization is stated for characteristic 2")
            verdict = is_apn(func, ctx, threads)
        table = sozd_table(func, ctx, threads)
        mm = _compare(ctx, lambda a, b: predict_characterization(ctx, a, b), table.entries, threads)
        # equivalence: APN/PN iff all nontrivial cells vanish
        all_zero = table.uniformity() == 0
        extra = {
            "func": func.describe(),
            "classified": verdict.holds,
            "differential_uniformity": verdict.value,
            "pass": verdict.holds == all_zero,
        }
        if not verdict.holds:
            mm = []  # the lemma predicts nothing cellwise for non-members
        return _report(name, ctx, table, mm, extra)

    return run


def _v_nabla1(ctx, exponents=None, threads=None):
    """Sweep monomials X^d; every odd/even one with uniformity 1 must be APN."""
    if ctx.p == 2:
        raise WrongCharacteristic("odd characteristic required")
    if exponents is None:
        exponents = range(1, ctx.q - 1)
    hits, violations, checked = [], [], 0
    spectrum: dict = {}
    for d in exponents:
        F = Monomial(d)
        par = parity_of(F, ctx)
        if par is None:
            continue
        checked += 1
        row = sozd_row_monomial(F, ctx, threads)
        nab = int(row[1:].max())
        spectrum[str(nab)] = spectrum.get(str(nab), 0) + 1
        if nab == 1:
            du = differential_uniformity(F, ctx, threads).value
            hits.append([d, par, du])
            if du != 2:
                violations.append([d, par, du])
    return VerifyReport(
        theorem="nabla1_apn",
        field=_field_desc(ctx),
        cells_checked=checked,
        mismatches=violations,
        uniformity=None,
        spectrum=dict(sorted(spectrum.items(), key=lambda kv: int(kv[0]))),
        extra={"functions_checked": checked, "nabla1_functions": hits},
    )


_VERIFIERS = {
    TheoremId.BINOMIAL: _v_binomial,
    TheoremId.TERNARY_GOLD: _v_ternary_gold,
    TheoremId.QUARTER_FAMILY: _v_quarter,
    TheoremId.X21_ODD: _v_x21("x21_odd"),
    TheoremId.X21_EVEN: _v_x21("x21_even"),
    TheoremId.CUBIC_GENERAL: _v_cubic,
    TheoremId.DO_POLY: _v_do,
    TheoremId.INVERSE_LIKE: _v_inverse_like,
    TheoremId.INVERSE_LIKE_T3: _v_inverse_like_t3,
    TheoremId.APN_CHAR: _v_characterization("apn_char"),
    TheoremId.PN_CHAR: _v_characterization("pn_char"),
    TheoremId.NABLA1_APN: _v_nabla1,
}
