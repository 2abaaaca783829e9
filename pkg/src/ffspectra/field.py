"""Exact arithmetic in GF(p^n) for q = p^n <= 2^22.

Elements are encoded as base-p integers, little-endian in the polynomial
basis: the element ``c_0 + c_1 x + ... + c_{n-1} x^{n-1}`` has encoding
``c_0 + c_1 p + ... + c_{n-1} p^{n-1}``.  All arithmetic on a
:class:`FieldCtx` is available at two levels:

* scalar methods on plain ``int`` encodings (``ctx.mul(x, y)``), used by the
  solvers and closed forms, and wrapped by :class:`FieldElement` for
  operator syntax;
* vectorised methods on numpy integer arrays (``ctx.vmul(X, Y)``), used by the
  brute-force sweeps.

Discrete-log, antilog and Zech-log tables are built eagerly for q <= 2^16 and
on demand (``ctx.ensure_tables()``) up to 2^22.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property

import numpy as np

from .errors import (
    ContextMismatch,
    DegreeMismatch,
    DivisionByZero,
    EvenCharacteristic,
    FieldTooLarge,
    NotADivisor,
    NotPrime,
    ReducibleModulus,
)

MAX_Q = 1 << 22
EAGER_TABLE_Q = 1 << 16
SCALAR_LIST_Q = 1 << 18

__all__ = [
    "FieldCtx",
    "FieldElement",
    "mk_field",
    "is_prime",
    "prime_factors",
    "smallest_irreducible",
    "is_irreducible",
    "MAX_Q",
    "EAGER_TABLE_Q",
]


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` in increasing order (trial division)."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low-degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int):
    for low in itertools.product(range(p), repeat=d):
        yield list(reversed(low)) + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= n/2."""
    m = list(modulus)
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if m[0] % p == 0:
        return False
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_rem(m, f, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``n`` whose lower coefficients have the
    smallest base-p little-endian encoding."""
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class FieldCtx:
    """Immutable description of GF(p^n).

    Construct through :func:`mk_field`.  ``modulus`` is stored low-degree
    first and includes the leading 1.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...], tables: bool | None = None):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._pows = [p**i for i in range(n + 1)]
        self._log = None
        self._antilog = None
        self._zech = None
        # char 2: reduction polynomial as a bit mask
        self._mod_int = sum(c << i for i, c in enumerate(self.modulus)) if p == 2 else None
        self.generator = self._find_generator()
        if tables is None:
            tables = self.q <= EAGER_TABLE_Q
        if tables:
            self.ensure_tables()

    # -- identity -------------------------------------------------------------

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus_str()})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.p, self.n, self.modulus)

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(terms)

    @property
    def has_tables(self) -> bool:
        return self._log is not None

    # -- encoding helpers -----------------------------------------------------

    def digits(self, x: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        return sum(int(c) * w for c, w in zip(ds, self._pows))

    def elem(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse_element(value))
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"encoding {value} outside [0, {self.q})")
        return FieldElement(self, value)

    def check(self, x: FieldElement):
        if x.ctx is not self and x.ctx != self:
            raise ContextMismatch(f"element of {x.ctx!r} used in {self!r}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        return FieldElement(self, self.generator)

    def elements(self):
        return (FieldElement(self, v) for v in range(self.q))

    def from_int(self, k: int) -> int:
        """Encoding of the integer ``k`` (an element of the prime subfield)."""
        return k % self.p

    _ELEM_RE = re.compile(r"^\s*(?:(\d+)|g\s*\^\s*(-?\d+)|g)\s*$")

    def parse_element(self, text: str) -> int:
        """Parse ``"17"`` (encoding) or ``"g^k"`` (generator power) to an encoding."""
        m = self._ELEM_RE.match(text)
        if not m:
            raise ValueError(f"bad element syntax {text!r}; expected an integer or g^k")
        if m.group(1) is not None:
            v = int(m.group(1))
            if v >= self.q:
                raise ValueError(f"encoding {v} outside [0, {self.q})")
            return v
        k = int(m.group(2)) if m.group(2) is not None else 1
        return self.pow(self.generator, k)

    # -- polynomial-basis arithmetic (no tables) ------------------------------

    def _mul_poly(self, x: int, y: int) -> int:
        if self.p == 2:
            n, mod = self.n, self._mod_int
            r = 0
            while y:
                if y & 1:
                    r ^= x
                y >>= 1
                x <<= 1
                if (x >> n) & 1:
                    x ^= mod
            return r
        p, n = self.p, self.n
        if n == 1:
            return x * y % p
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * m[i]
            prod[k] = 0
        return self.from_digits(c % p for c in prod[:n])

    def _pow_poly(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_poly(r, x)
            x = self._mul_poly(x, x)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        exps = [(q - 1) // r for r in prime_factors(q - 1)]
        for g in range(2, q):
            if all(self._pow_poly(g, e) != 1 for e in exps):
                return g
        raise AssertionError("no generator found")  # pragma: no cover

    # -- vectorised digit arithmetic (used to build tables) -------------------

    def _vdigits(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        out = np.empty(X.shape + (self.n,), dtype=np.int64)
        for i in range(self.n):
            X, out[..., i] = np.divmod(X, self.p)
        return out

    def _vfrom_digits(self, D: np.ndarray) -> np.ndarray:
        w = np.array(self._pows[: self.n], dtype=np.int64)
        return D @ w

    def _vmul_poly(self, X: np.ndarray, y: int) -> np.ndarray:
        """Multiply every element of ``X`` by the scalar ``y`` without tables."""
        p, n = self.p, self.n
        if n == 1:
            return np.asarray(X, dtype=np.int64) * y % p
        if p == 2:
            X = np.asarray(X, dtype=np.int64)
            acc = np.zeros_like(X)
            for j in range(n):
                if (y >> j) & 1:
                    acc ^= X << j
            for k in range(2 * n - 2, n - 1, -1):
                acc ^= ((acc >> k) & 1) * (self._mod_int << (k - n))
            return acc
        A = self._vdigits(X)
        b = self.digits(y)
        prod = np.zeros(A.shape[:-1] + (2 * n - 1,), dtype=np.int64)
        for j, bj in enumerate(b):
            if bj:
                prod[..., j : j + n] += A * bj
        m = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[..., k] % p
            for i in range(n):
                if m[i]:
                    prod[..., k - n + i] -= c * m[i]
        return self._vfrom_digits(prod[..., :n] % p)

    # -- tables ---------------------------------------------------------------

    def ensure_tables(self) -> FieldCtx:
        """Build log/antilog/Zech tables if absent.  Returns ``self``."""
        if self._log is not None:
            return self
        if self.q > MAX_Q:  # pragma: no cover - mk_field rejects these
            raise FieldTooLarge(f"q={self.q} exceeds table limit {MAX_Q}")
        q, g = self.q, self.generator
        # antilog by doubling: [g^0..g^{k-1}] -> [.., g^k * (g^0..g^{k-1})]
        antilog = np.array([1], dtype=np.int64)
        while len(antilog) < q - 1:
            h = self._pow_poly(g, len(antilog))
            antilog = np.concatenate([antilog, self._vmul_poly(antilog, h)])
        antilog = antilog[: q - 1]
        log = np.full(q, -1, dtype=np.int64)
        log[antilog] = np.arange(q - 1, dtype=np.int64)
        if (log[1:] < 0).any():  # pragma: no cover - generator is verified
            raise AssertionError("generator does not span the multiplicative group")
        one_plus = self._vadd_digits(antilog, np.ones_like(antilog))
        zech = log[one_plus]
        self._antilog, self._log, self._zech = antilog, log, zech
        if q <= SCALAR_LIST_Q:
            self._slog, self._santilog, self._szech = log.tolist(), antilog.tolist(), zech.tolist()
        else:
            self._slog, self._santilog, self._szech = log, antilog, zech
        return self

    @property
    def log_table(self) -> np.ndarray:
        self.ensure_tables()
        return self._log

    @property
    def antilog_table(self) -> np.ndarray:
        self.ensure_tables()
        return self._antilog

    def dlog(self, x: int) -> int:
        """Discrete logarithm base ``generator`` of a nonzero element."""
        if x == 0:
            raise DivisionByZero("log of zero")
        self.ensure_tables()
        return int(self._slog[x])

    # -- scalar arithmetic on encodings ---------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self.n == 1:
            return (x + y) % self.p
        if x == 0:
            return y
        if y == 0:
            return x
        if self._log is not None:
            lx = self._slog[x]
            z = self._szech[(self._slog[y] - lx) % (self.q - 1)]
            if z < 0:
                return 0
            return int(self._santilog[(lx + z) % (self.q - 1)])
        p = self.p
        r, w = 0, 1
        for _ in range(self.n):
            x, a = divmod(x, p)
            y, b = divmod(y, p)
            r += ((a + b) % p) * w
            w *= p
        return r

    def neg(self, x: int) -> int:
        if self.p == 2 or x == 0:
            return x
        if self.n == 1:
            return self.p - x
        p = self.p
        r, w = 0, 1
        for _ in range(self.n):
            x, a = divmod(x, p)
            r += ((-a) % p) * w
            w *= p
        return r

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._log is not None:
            return int(self._santilog[(self._slog[x] + self._slog[y]) % (self.q - 1)])
        return self._mul_poly(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        if self._log is not None:
            return int(self._santilog[(-self._slog[x]) % (self.q - 1)])
        return self._pow_poly(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        """``x**e`` with 0^0 = 1 and 0^e = 0 for e > 0 (e taken as an integer)."""
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        e %= self.q - 1
        if self._log is not None:
            return int(self._santilog[(self._slog[x] * e) % (self.q - 1)])
        return self._pow_poly(x, e)

    def frob(self, x: int, i: int = 1) -> int:
        """``x^(p^i)``."""
        i %= self.n
        if i == 0 or x == 0:
            return x
        return self.pow(x, self.p**i)

    def abs_trace(self, x: int) -> int:
        """Absolute trace to GF(p); returned as an encoding in [0, p)."""
        return self.rel_trace(x, 1)

    def rel_trace(self, x: int, d: int) -> int:
        if d <= 0 or self.n % d:
            raise NotADivisor(f"{d} does not divide {self.n}")
        t, y = 0, x
        for _ in range(self.n // d):
            t = self.add(t, y)
            y = self.frob(y, d)
        return t

    def in_subfield(self, x: int, d: int) -> bool:
        return self.frob(x, d) == x

    def quad_char(self, x: int) -> int:
        if self.p == 2:
            raise EvenCharacteristic("quadratic character needs odd characteristic")
        if x == 0:
            return 0
        if self._log is not None:
            return -1 if self._slog[x] & 1 else 1
        return self.quad_char_pow(x)

    def quad_char_pow(self, x: int) -> int:
        """Quadratic character by Euler's criterion, bypassing the log tables."""
        if self.p == 2:
            raise EvenCharacteristic("quadratic character needs odd characteristic")
        if x == 0:
            return 0
        return 1 if self._pow_poly(x, (self.q - 1) // 2) == 1 else -1

    # -- vectorised arithmetic on encoding arrays -----------------------------

    def _vadd_digits(self, X, Y):
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        p = self.p
        if self.n == 1:
            return (X + Y) % p
        out = np.zeros(np.broadcast(X, Y).shape, dtype=np.int64)
        w = 1
        for _ in range(self.n):
            X, a = np.divmod(X, p)
            Y, b = np.divmod(Y, p)
            s = a + b
            out += np.where(s >= p, s - p, s) * w
            w *= p
        return out

    def vadd(self, X, Y):
        if self.p == 2:
            return np.bitwise_xor(np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64))
        return self._vadd_digits(X, Y)

    def vneg(self, X):
        X = np.asarray(X, dtype=np.int64)
        if self.p == 2:
            return X.copy()
        return self.neg_table[X]

    def vsub(self, X, Y):
        return self.vadd(X, self.vneg(Y))

    @cached_property
    def neg_table(self) -> np.ndarray:
        if self.p == 2:
            return np.arange(self.q, dtype=np.int64)
        D = self._vdigits(np.arange(self.q))
        return self._vfrom_digits((-D) % self.p)

    def vmul(self, X, Y):
        self.ensure_tables()
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        lx, ly = self._log[X], self._log[Y]
        r = self._antilog[(lx + ly) % (self.q - 1)]
        return np.where((X == 0) | (Y == 0), 0, r)

    def vpow(self, X, e: int):
        """Elementwise ``X**e`` under the same conventions as :meth:`pow`."""
        self.ensure_tables()
        X = np.asarray(X, dtype=np.int64)
        if e < 0:
            raise ValueError("negative exponent in vpow")
        r = self._antilog[(self._log[X] * (e % (self.q - 1))) % (self.q - 1)]
        zero_val = 1 if e == 0 else 0
        return np.where(X == 0, zero_val, r)

    def shift_table(self) -> np.ndarray:
        """q x q matrix ``T[b, x] = x + b``."""
        xs = np.arange(self.q, dtype=np.int64)
        return self.vadd(xs[None, :], xs[:, None])


def mk_field(p: int, n: int, modulus=None, tables: bool | None = None) -> FieldCtx:
    """Build GF(p^n).

    ``modulus`` is a coefficient sequence, low degree first, monic of degree
    ``n`` (the leading 1 included).  When omitted the smallest monic
    irreducible (by little-endian base-p encoding of its lower coefficients)
    is used.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise DegreeMismatch(f"degree must be >= 1, got {n}")
    if p**n > MAX_Q:
        raise FieldTooLarge(f"q = {p}^{n} exceeds {MAX_Q}")
    if modulus is None:
        modulus = smallest_irreducible(p, n)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] % p != 1:
            raise DegreeMismatch(f"modulus must be monic of degree {n}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {p})")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
    return FieldCtx(p, n, modulus, tables=tables)


class FieldElement:
    """An element of a specific :class:`FieldCtx` with operator syntax."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(self.ctx, v)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.sub(o, self.value))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.div(o, self.value))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.pow(self.value, int(e)))

    def inv(self) -> FieldElement:
        return self._wrap(self.ctx.inv(self.value))

    def frob(self, i: int = 1) -> FieldElement:
        return self._wrap(self.ctx.frob(self.value, i))

    def trace(self) -> int:
        return self.ctx.abs_trace(self.value)

    def rel_trace(self, d: int) -> FieldElement:
        return self._wrap(self.ctx.rel_trace(self.value, d))

    def quad_char(self) -> int:
        return self.ctx.quad_char(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and (other.ctx is self.ctx or other.ctx == self.ctx)
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.ctx.p}^{self.ctx.n})({self.value})"

    def poly_str(self, var: str = "x") -> str:
        ds = self.ctx.digits(self.value)
        terms = []
        for i in range(len(ds) - 1, -1, -1):
            c = ds[i]
            if not c:
                continue
            mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
            terms.append(mono if c == 1 and i else (str(c) if i == 0 else f"{c}*{mono}"))
        return " + ".join(terms) or "0"

