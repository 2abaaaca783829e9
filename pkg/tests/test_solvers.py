"""Structured solvers against exhaustive search."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffspectra.errors import (
    DegenerateA,
    OddCharacteristic,
    ZeroConstant,
    ZeroLeadingCoefficient,
    ZeroLinearCoefficient,
)
from ffspectra.field import mk_field
from ffspectra.solvers import (
    LinearizedMap,
    QuadraticExtension,
    TrinomialInstance,
    affine_solution_count,
    classify_cubic_char2,
    companion_rank_kernel,
    field_matrix_rank,
    gfp_rank,
    linearized_kernel,
    solve_quadratic_char2,
    solve_trinomial,
)

from oracles import cubic_roots, linearized_values, quadratic_roots, trinomial_roots

TRINOMIAL_FIELDS = [(2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2), (2, 5), (3, 3)]


@pytest.mark.parametrize("p,n", TRINOMIAL_FIELDS)
def test_trinomial_matches_exhaustive(p, n):
    ctx = mk_field(p, n)
    rng = np.random.default_rng(100 * p + n)
    for _ in range(150):
        k = int(rng.integers(1, n + 1))
        A = int(rng.integers(1, ctx.q))
        B = int(rng.integers(0, ctx.q))
        out = solve_trinomial(TrinomialInstance(ctx, k, A, B))
        assert out.roots == trinomial_roots(ctx, k, A, B)
        assert len(out.roots) == out.predicted


def test_trinomial_family_case_is_reached():
    # A a (p^k - 1)-th power with alpha_{m-1} = 1 and B = 0 forces the family case
    ctx = mk_field(2, 6)
    out = solve_trinomial(TrinomialInstance(ctx, 2, 1, 0))
    assert out.case == "p^d-family"
    assert out.roots == trinomial_roots(ctx, 2, 1, 0)
    assert len(out.roots) == 4


def test_trinomial_alpha_recursion_matches_closed_form():
    ctx = mk_field(3, 4)
    inst = TrinomialInstance(ctx, 1, 5, 7)
    alphas, betas = inst.alphas_betas
    for r in range(inst.m):
        assert alphas[r] == inst.alpha_direct(r)
        assert betas[r] == inst.beta_direct(r)


def test_trinomial_rejects_zero_A():
    with pytest.raises(ZeroLeadingCoefficient):
        TrinomialInstance(mk_field(2, 3), 1, 0, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_quadratic_char2_exhaustive(n):
    ctx = mk_field(2, n)
    step = 1 if ctx.q <= 32 else 7
    for a in range(1, ctx.q, step):
        for b in range(0, ctx.q, step):
            assert solve_quadratic_char2(ctx, a, b).roots == quadratic_roots(ctx, a, b)


def test_quadratic_guards():
    with pytest.raises(OddCharacteristic):
        solve_quadratic_char2(mk_field(3, 2), 1, 1)
    with pytest.raises(ZeroLinearCoefficient):
        solve_quadratic_char2(mk_field(2, 3), 0, 1)


@pytest.mark.parametrize("n", range(1, 10))
def test_cubic_shape_and_roots(n):
    ctx = mk_field(2, n)
    for a in range(1, ctx.q):
        out = classify_cubic_char2(ctx, a)
        roots = cubic_roots(ctx, a)
        assert out.roots == roots
        assert {0: (3,), 1: (1, 2), 3: (1, 1, 1)}[len(roots)] == out.shape
    with pytest.raises(ZeroConstant):
        classify_cubic_char2(ctx, 0)


def test_quadratic_extension_arithmetic():
    ctx = mk_field(2, 5)
    ext = QuadraticExtension(ctx)
    # the multiplicative group of GF(2^10) has order 1023
    for s in [(1, 1), (3, 7), (0, 1)]:
        assert ext.pow(s, ext.order) == (1, 0)
    for alpha in range(1, ctx.q):
        t1, t2 = ext.quadratic_roots(alpha)
        assert ext.mul(t1, t2) == (1, 0)
        assert (t1[0] ^ t2[0], t1[1] ^ t2[1]) == (alpha, 0)


@pytest.mark.parametrize("p,n", [(2, 5), (2, 6), (3, 3), (5, 2), (3, 4)])
def test_linearized_kernel_and_affine_count(p, n):
    ctx = mk_field(p, n)
    rng = np.random.default_rng(7 * p + n)
    for _ in range(60):
        terms = tuple((int(rng.integers(0, ctx.q)), i) for i in range(n) if rng.random() < 0.6)
        L = LinearizedMap(terms)
        vals = linearized_values(ctx, terms)
        kern = linearized_kernel(ctx, L)
        assert sorted(kern.elements(ctx)) == np.flatnonzero(vals == 0).tolist()
        delta = int(rng.integers(0, ctx.q))
        count, sol = affine_solution_count(ctx, L, delta)
        assert count == int(np.count_nonzero(vals == delta))
        if count:
            assert L(ctx, sol) == delta


@pytest.mark.parametrize("n", range(3, 9))
def test_companion_rank_equals_linearized_kernel(n):
    ctx = mk_field(2, n)
    for t in range(2, n + 1):
        for A in range(0, ctx.q, 3):
            if A == 1:
                continue
            L = LinearizedMap(((1, t), (A, 1), (A ^ 1, 0)))
            assert companion_rank_kernel(ctx, A, t) == linearized_kernel(ctx, L).dim


def test_companion_rejects_A_one():
    with pytest.raises(DegenerateA):
        companion_rank_kernel(mk_field(2, 5), 1, 3)


def test_rank_helpers():
    assert gfp_rank(np.array([[1, 2], [2, 4]]), 5) == 1
    assert gfp_rank(np.eye(3, dtype=np.int64), 2) == 3
    ctx = mk_field(2, 3)
    g = ctx.generator
    # rows (1, g) and (g, g^2) are dependent over GF(8), not over GF(2)
    assert field_matrix_rank(ctx, [[1, g], [g, ctx.mul(g, g)]]) == 1


@settings(max_examples=120, deadline=None)
@given(st.sampled_from([(2, 7), (3, 5), (5, 3)]), st.data())
def test_trinomial_roots_satisfy_equation(pn, data):
    ctx = mk_field(*pn)
    k = data.draw(st.integers(1, pn[1]))
    A = data.draw(st.integers(1, ctx.q - 1))
    B = data.draw(st.integers(0, ctx.q - 1))
    inst = TrinomialInstance(ctx, k, A, B)
    out = solve_trinomial(inst)
    assert all(inst.evaluate(x) == 0 for x in out.roots)
    assert len(out.roots) in (0, 1, ctx.p ** inst.d)
