"""Exhaustive root-finding oracles shared by the test modules."""

import numpy as np


def roots_of(ctx, values: np.ndarray) -> list[int]:
    return np.flatnonzero(values == 0).tolist()


def trinomial_roots(ctx, k, A, B):
    xs = np.arange(ctx.q)
    v = ctx.vsub(ctx.vsub(ctx.vpow(xs, ctx.p**k), ctx.vmul(xs, np.full(ctx.q, A))), B)
    return roots_of(ctx, v)


def quadratic_roots(ctx, a, b):
    xs = np.arange(ctx.q)
    v = ctx.vadd(ctx.vadd(ctx.vmul(xs, xs), ctx.vmul(xs, np.full(ctx.q, a))), b)
    return roots_of(ctx, v)


def cubic_roots(ctx, a):
    xs = np.arange(ctx.q)
    v = ctx.vadd(ctx.vadd(ctx.vpow(xs, 3), xs), a)
    return roots_of(ctx, v)


def linearized_values(ctx, terms, offset=0):
    xs = np.arange(ctx.q)
    out = np.full(ctx.q, offset)
    for c, i in terms:
        out = ctx.vadd(out, ctx.vmul(ctx.vpow(xs, ctx.p**i), np.full(ctx.q, c)))
    return out
