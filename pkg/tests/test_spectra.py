"""DDT / FBCT tables, classifiers and structural invariants."""

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ffspectra.errors import (
    EvenCharacteristic,
    NotAMonomial,
    NotAPermutation,
    OddCharacteristic,
    ParityMismatch,
    ZeroDirection,
)
from ffspectra.field import mk_field
from ffspectra.spectra import (
    AffineMap,
    CubicForm,
    DOPoly,
    Lut,
    Monomial,
    SparsePoly,
    ddt_entry,
    ddt_table,
    differential_uniformity,
    ea_transform,
    eval_func,
    fbct_table,
    is_apn,
    is_partial_apn,
    is_pn,
    parity_of,
    random_affine,
    random_affine_permutation,
    sozd_entry,
    sozd_row_monomial,
    sozd_table,
    sozd_uniformity,
    validated_parity,
)


def naive_sozd(F, ctx):
    """Four-term count with scalar arithmetic only -- the independent oracle."""
    q = ctx.q
    T = [eval_func(F, ctx, x) for x in range(q)]
    E = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            c = 0
            for x in range(q):
                s = ctx.sub(ctx.sub(T[ctx.add(ctx.add(x, a), b)], T[ctx.add(x, b)]), T[ctx.add(x, a)])
                c += ctx.add(s, T[x]) == 0
            E[a, b] = c
    return E


def naive_ddt(F, ctx):
    q = ctx.q
    T = [eval_func(F, ctx, x) for x in range(q)]
    E = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for x in range(q):
            E[a, ctx.sub(T[ctx.add(x, a)], T[x])] += 1
    return E


SMALL = [
    (2, 3, Monomial(3)),
    (2, 4, SparsePoly(((1, 3), (3, 5)))),
    (3, 2, Monomial(5)),
    (5, 1, SparsePoly(((2, 3), (1, 2)))),
    (7, 1, Monomial(4)),
    (3, 2, SparsePoly(((8, 2), (1, 1)))),
]


@pytest.mark.parametrize("p,n,F", SMALL)
def test_tables_match_naive_oracle(p, n, F):
    ctx = mk_field(p, n)
    assert np.array_equal(sozd_table(F, ctx).entries, naive_sozd(F, ctx))
    assert np.array_equal(ddt_table(F, ctx).entries, naive_ddt(F, ctx))


@pytest.mark.parametrize("p,n,d", [(2, 5, 3), (2, 6, 21), (3, 3, 5), (5, 2, 7), (7, 2, 10)])
def test_monomial_row_expands_to_full_table(p, n, d):
    ctx = mk_field(p, n)
    F = Monomial(d)
    full = sozd_table(F, ctx).entries
    row_backed = fbct_table(F, ctx)
    assert row_backed.entries is None
    assert np.array_equal(row_backed.full(), full)
    assert row_backed.summary() == sozd_table(F, ctx).summary()


def test_remark_counterexamples():
    ctx = mk_field(5, 3)
    F = Monomial(14)
    assert is_apn(F, ctx).holds
    assert sozd_uniformity(F, ctx).value == 4
    ctx = mk_field(11, 1)
    G = SparsePoly(((1, 9), (1, 4)))
    assert differential_uniformity(G, ctx).value == 3
    assert sozd_uniformity(G, ctx).value == 1


def test_single_entries():
    ctx = mk_field(2, 3)
    F = Monomial(3)
    assert sozd_entry(F, ctx, 0, 5) == 8
    assert sozd_entry(F, ctx, 3, 3) == 8
    assert sozd_entry(F, ctx, 1, 2) == 0
    assert ddt_entry(F, ctx, 1, 1) == 2
    with pytest.raises(ZeroDirection):
        ddt_entry(F, ctx, 0, 1)


def test_classifiers():
    assert is_pn(Monomial(2), mk_field(3, 3)).holds
    assert not is_pn(Monomial(3), mk_field(5, 1)).holds
    assert is_apn(Monomial(3), mk_field(2, 5)).holds
    with pytest.raises(EvenCharacteristic):
        is_pn(Monomial(2), mk_field(2, 3))
    # 0-APN facts for X^21
    for n, expected in [(3, True), (4, True), (5, True), (6, False), (7, True)]:
        assert is_partial_apn(Monomial(21), mk_field(2, n), 0).holds is expected
    with pytest.raises(OddCharacteristic):
        is_partial_apn(Monomial(2), mk_field(3, 2), 0)


def test_parity():
    ctx = mk_field(5, 2)
    assert parity_of(Monomial(3), ctx) == "odd"
    assert parity_of(Monomial(4), ctx) == "even"
    assert parity_of(SparsePoly(((1, 2), (1, 3))), ctx) is None
    assert parity_of(Monomial(3), mk_field(2, 3)) is None
    assert validated_parity(Monomial(3, parity_hint="odd"), ctx) == "odd"
    with pytest.raises(ParityMismatch):
        validated_parity(Monomial(3, parity_hint="even"), ctx)


def test_row_requires_monomial():
    with pytest.raises(NotAMonomial):
        sozd_row_monomial(SparsePoly(((1, 3),)), mk_field(2, 3))


def test_structured_functions_agree_with_sparse():
    ctx = mk_field(3, 3)
    C = CubicForm((((1, 2), 2),))
    assert np.array_equal(C.table(ctx), SparsePoly(((2, 13),)).table(ctx))
    D = DOPoly((((0, 1), 1), ((1, 1), 2)))
    assert np.array_equal(D.table(ctx), SparsePoly(((1, 4), (2, 6))).table(ctx))
    L = Lut.of(Monomial(5), ctx)
    assert L.describe().startswith("lut:") and np.array_equal(L.table(ctx), Monomial(5).table(ctx))


# -- serialization ------------------------------------------------------------


def test_csv_and_json_are_deterministic():
    ctx = mk_field(3, 2)
    F = SparsePoly(((1, 8), (2, 2)))
    a, b = sozd_table(F, ctx), sozd_table(F, mk_field(3, 2))
    assert a.to_csv() == b.to_csv()
    lines = a.to_csv().splitlines()
    assert lines[0] == "a,b,count" and len(lines) == 82
    assert lines[1:4] == ["0,0,9", "0,1,9", "0,2,9"]
    doc = json.loads(a.to_json())
    assert set(doc) == {"p", "n", "modulus", "func", "kind", "summary", "uniformity"}
    assert doc["summary"]["trivial"] == {"9": 17}
    assert a.to_json() == b.to_json()


def test_threads_do_not_change_results():
    ctx = mk_field(2, 6)
    F = SparsePoly(((1, 3), (5, 7)))
    assert np.array_equal(sozd_table(F, ctx, threads=1).entries, sozd_table(F, ctx, threads=4).entries)
    assert np.array_equal(sozd_row_monomial(Monomial(13), ctx, 1), sozd_row_monomial(Monomial(13), ctx, 3))


# -- structural invariants ------------------------------------------------------

INVARIANT_FIELDS = [(3, 2), (5, 2), (7, 1), (2, 5), (3, 3), (2, 4), (2, 6)]


@pytest.mark.parametrize("p,n", INVARIANT_FIELDS)
def test_table_invariants(p, n):
    ctx = mk_field(p, n)
    rng = np.random.default_rng(p * 31 + n)
    for _ in range(3):
        terms = tuple((int(rng.integers(1, ctx.q)), int(rng.integers(1, ctx.q))) for _ in range(2))
        F = SparsePoly(terms)
        E = sozd_table(F, ctx).entries
        assert np.array_equal(E, E.T)
        assert (E[0] == ctx.q).all() and (E[:, 0] == ctx.q).all()
        D = ddt_table(F, ctx).entries
        assert (D.sum(axis=1) == ctx.q).all()
        if p == 2:
            assert (np.diag(E) == ctx.q).all()
            assert (E % 4 == 0).all()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 3), (7, 1)]), st.data())
def test_solution_set_closed_under_reflection(pn, data):
    """For odd or even F, X -> -(X+a+b) maps solutions to solutions."""
    ctx = mk_field(*pn)
    d = data.draw(st.integers(1, ctx.q - 2))
    F = Monomial(d)
    par = parity_of(F, ctx)
    a = data.draw(st.integers(1, ctx.q - 1))
    b = data.draw(st.integers(1, ctx.q - 1))
    T = F.table(ctx)
    xs = np.arange(ctx.q)
    s = ctx.vadd(ctx.vsub(ctx.vsub(T[ctx.vadd(ctx.vadd(xs, a), b)], T[ctx.vadd(xs, b)]), T[ctx.vadd(xs, a)]), T)
    sols = set(np.flatnonzero(s == 0).tolist())
    if par is not None:
        assert {ctx.neg(ctx.add(ctx.add(x, a), b)) for x in sols} == sols
    if par == "odd":
        # X = -(a+b)/2 always solves the odd-F equation
        x0 = ctx.neg(ctx.div(ctx.add(a, b), 2 % ctx.p))
        assert x0 in sols


@pytest.mark.parametrize("p,n,F", [(3, 3, DOPoly((((0, 1), 1), ((1, 2), 2)))), (2, 5, DOPoly((((0, 2), 3),)))])
def test_do_cells_are_zero_or_q(p, n, F):
    ctx = mk_field(p, n)
    assert set(np.unique(sozd_table(F, ctx).entries).tolist()) <= {0, ctx.q}


# -- EA equivalence -------------------------------------------------------------


@pytest.mark.parametrize("p,n,F", [(2, 5, Monomial(3)), (3, 3, SparsePoly(((1, 2), (1, 10))))])
def test_ea_invariance(p, n, F):
    ctx = mk_field(p, n)
    rng = np.random.default_rng(2024 + p)
    du = differential_uniformity(F, ctx).value
    base = sozd_table(F, ctx).summary()
    for _ in range(5):
        P = random_affine_permutation(ctx, rng)
        Q = random_affine_permutation(ctx, rng)
        G = ea_transform(F, ctx, P, Q, random_affine(ctx, rng))
        assert differential_uniformity(G, ctx).value == du
        assert sozd_table(G, ctx).summary() == base


def test_ea_rejects_singular_maps():
    ctx = mk_field(2, 3)
    zero = AffineMap(((0, 0, 0),) * 3)
    ident = AffineMap(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(NotAPermutation):
        ea_transform(Monomial(3), ctx, zero, ident, ident)
