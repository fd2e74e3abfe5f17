from __future__ import annotations

import numpy as np
import pytest

from agdist.errors import FieldError
from agdist.ff import (
    Elt,
    FieldCtx,
    coords_over_subfield,
    frobenius,
    from_subfield_coords,
    trace_to_base,
)
from oracles import NaiveTower

TOWERS = [(3, 1, 2), (2, 2, 2), (2, 1, 4), (3, 1, 6), (5, 1, 2), (2, 4, 2), (17, 1, 3), (3, 2, 2)]


def naive_for(ctx: FieldCtx) -> NaiveTower:
    return NaiveTower(ctx.p, ctx.d, ctx.m, ctx.modulus_q, ctx.modulus_qm)


def test_f9_trace_examples(f9):
    alpha = f9.element(3)  # coordinates (0, 1)
    assert trace_to_base(alpha).value == 1
    assert trace_to_base(f9.element(1)).value == 2
    assert trace_to_base(f9.element(0)).value == 0


def test_f9_frobenius_example(f9):
    alpha = f9.element(3)
    assert (alpha * alpha).value == (alpha + 1).value
    assert frobenius(alpha, 1).coords == (1, 2)  # 2 alpha + 1
    assert frobenius(alpha, 0) == alpha
    assert frobenius(alpha, 2) == alpha


def test_trace_of_one_is_m(f729):
    assert trace_to_base(f729.element(1)).value == 6 % 3


@pytest.mark.parametrize("tower", TOWERS)
def test_multiplication_matches_schoolbook(tower, rng):
    ctx = FieldCtx(*tower)
    T = naive_for(ctx)
    F = ctx.ext
    a = F.random(rng, 60)
    b = F.random(rng, 60)
    prod = F.mul(a, b)
    summ = F.add(a, b)
    for x, y, p_, s_ in zip(a.tolist(), b.tolist(), prod.tolist(), summ.tolist()):
        assert p_ == T.mul(x, y)
        assert s_ == T.add(x, y)


@pytest.mark.parametrize("tower", TOWERS)
def test_field_axioms(tower, rng):
    F = FieldCtx(*tower).ext
    a, b, c = (F.random(rng, 200) for _ in range(3))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    nz = a[a != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(a, F.neg(a)) == 0)
    assert np.array_equal(F.sub(F.add(a, b), b), a)


@pytest.mark.parametrize("tower", TOWERS)
def test_trace_properties(tower, rng):
    ctx = FieldCtx(*tower)
    F = ctx.ext
    x, y = F.random(rng, 100), F.random(rng, 100)
    lam = rng.integers(0, ctx.q, 100)
    lhs = ctx.trace(F.add(F.mul(lam, x), y))
    rhs = F.add(F.mul(lam, ctx.trace(x)), ctx.trace(y))
    assert np.array_equal(lhs, rhs)
    assert np.array_equal(ctx.trace(ctx.frobenius(x, 1)), ctx.trace(x))
    assert np.all(ctx.trace(x) < ctx.q)
    everything = ctx.trace(np.arange(ctx.order))
    assert set(everything.tolist()) == set(range(ctx.q))


def test_trace_matches_naive(f9, rng):
    ctx = FieldCtx(2, 2, 2)
    T = naive_for(ctx)
    for v in range(ctx.order):
        assert int(ctx.trace(v)) == T.trace(v)


@pytest.mark.parametrize("tower", [(3, 1, 2), (2, 2, 2), (3, 1, 6), (2, 1, 4)])
def test_frobenius_fixes_exactly_subfield(tower):
    ctx = FieldCtx(*tower)
    x = np.arange(ctx.order)
    fx = ctx.frobenius(x, 1)
    assert sorted(fx.tolist()) == x.tolist()  # bijection
    fixed = np.flatnonzero(fx == x)
    assert fixed.tolist() == list(range(ctx.q))
    # automorphism
    F = ctx.ext
    y = x[::-1]
    assert np.array_equal(ctx.frobenius(F.mul(x, y), 1), F.mul(fx, ctx.frobenius(y, 1)))
    assert np.array_equal(ctx.frobenius(x, ctx.m), x)


def test_coordinates_round_trip(rng):
    ctx = FieldCtx(2, 2, 2)
    for v in ctx.ext.random(rng, 50).tolist():
        e = Elt(v, ctx)
        assert from_subfield_coords(ctx, coords_over_subfield(e)) == e
    assert coords_over_subfield(ctx.element(ctx.basis[0])) == (1, 0)
    assert coords_over_subfield(ctx.element(0)) == (0, 0)
    assert ctx.element(ctx.basis[1]).coords_p == ((0, 0), (1, 0))


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FieldCtx(3, 1, 2, modulus_qm=(2, 0, 1))  # x^2 - 1
    with pytest.raises(FieldError):
        FieldCtx(4)


def test_elt_operators(f9):
    a = f9.element(5)
    assert (a / a).value == 1
    assert (a**-1 * a).value == 1
    assert (a - a).is_zero()
    assert (-a + a).is_zero()
    assert (2 * a).value == (a + a).value


def test_default_tables_cover_reference_fields():
    for tower in [(3, 1, 6), (11, 1, 2), (13, 1, 2), (2, 4, 2), (17, 1, 3), (2, 1, 12)]:
        ctx = FieldCtx(*tower)
        assert ctx.order == (tower[0] ** tower[1]) ** tower[2]
