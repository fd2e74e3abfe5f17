from __future__ import annotations

import numpy as np
import pytest

from agdist import linalg
from agdist.bounds import leading_exponents, split_degree
from agdist.cab import hermitian_curve
from agdist.errors import ZeroFunction
from agdist.ff import FieldCtx
from agdist.goppa import random_goppa_function
from agdist.ring import (
    CurveFunction,
    from_raw,
    goppa_power,
    in_remainder_space,
    monomial_basis,
    normal_form,
    random_function,
    remainder_space_basis,
    trace_reduce,
    weighted_divide,
)
from oracles import riemann_roch_monomials


def values(f, curve):
    X, Y = curve.point_arrays()
    return f.evaluate_many(X, Y)


def test_normal_form_of_y_squared(ell3):
    f = normal_form(ell3, {(0, 2): 1})
    # y^2 = x^3 + x + 2 - y
    assert f.terms == {(3, 0): 1, (1, 0): 1, (0, 1): 2, (0, 0): 2}


def test_normal_form_is_identity_on_normal_input(ell9):
    terms = {(5, 1): 4, (0, 0): 1, (2, 0): 7}
    assert normal_form(ell9, terms).terms == terms


def test_normal_form_agrees_on_points(herm4):
    ya = CurveFunction.monomial(herm4, 0, herm4.a)
    f = ya * ya
    assert all(v < herm4.a for _, v in f.terms)
    X, Y = herm4.point_arrays()
    F = herm4.ctx.ext
    assert np.array_equal(values(f, herm4), F.power(Y, 2 * herm4.a))


def test_curve_equation_is_zero(ell729):
    f = from_raw(ell729, ell729.coeffs)
    assert not f
    assert all(f.evaluate(P) == 0 for P in ell729.affine_points[:20])


def test_evaluate_example(ell3):
    f = CurveFunction.monomial(ell3, 2, 1)
    assert f.evaluate((2, 2)) == 2
    one = CurveFunction.constant(ell3, 1)
    assert all(one.evaluate(P) == 1 for P in ell3.affine_points)


def test_monomial_basis_examples(ell3):
    assert monomial_basis(ell3, 4) == [(0, 0), (1, 0), (0, 1), (2, 0)]
    assert monomial_basis(ell3, 0) == [(0, 0)]


@pytest.mark.parametrize("q0,p,m", [(2, 2, 2), (4, 2, 4), (3, 3, 2)])
def test_riemann_roch_counts(q0, p, m):
    H = hermitian_curve(FieldCtx(p, 1, m))
    g = H.genus
    assert len(monomial_basis(H, 2 * g - 1)) == g
    for s in range(0, 4 * g + 8):
        basis = monomial_basis(H, s)
        assert set(basis) == riemann_roch_monomials(H.a, H.b, s)
        assert set(basis) <= set(monomial_basis(H, s + 1))
        if s >= 2 * g - 1:
            assert len(basis) == s + 1 - g


def test_remainder_space_examples(ell9, rng):
    g = CurveFunction(ell9, {(1, 1): 1, (0, 0): 3})
    assert set(remainder_space_basis(g)) == {(0, 0), (1, 0), (2, 0), (3, 0), (0, 1)}
    h = CurveFunction(ell9, {(3, 0): 1, (1, 1): 2})
    assert len(remainder_space_basis(h)) == 2 * 3 == h.weighted_degree
    cube = CurveFunction(ell9, {(3, 0): 1, (0, 0): 1}) ** 3
    assert cube.leading_monomial == (9, 0)
    assert set(remainder_space_basis(cube)) == {(u, v) for u in range(9) for v in range(2)}
    with pytest.raises(ZeroFunction):
        remainder_space_basis(CurveFunction.zero(ell9))


@pytest.mark.parametrize("sprime", [5, 6, 7, 11])
def test_remainder_space_dimension(ell9, sprime):
    g = random_goppa_function(ell9, sprime, sprime)
    assert len(remainder_space_basis(g)) == sprime


def test_divide_exact_and_reduced(ell9):
    g = random_goppa_function(ell9, 5, 1)
    x = CurveFunction.x(ell9)
    f1, f2 = weighted_divide(x * g, g)
    assert f1 == x and not f2
    r = CurveFunction(ell9, {(3, 0): 2, (0, 1): 1})
    f1, f2 = weighted_divide(r, g)
    assert not f1 and f2 == r
    with pytest.raises(ZeroFunction):
        weighted_divide(r, CurveFunction.zero(ell9))


@pytest.mark.parametrize("curve_name", ["ell729", "herm16"])
def test_division_contract_random(curve_name, request, rng):
    curve = request.getfixturevalue(curve_name)
    F = curve.ctx.ext
    for trial in range(40):
        sg = int(rng.integers(max(2 * curve.genus, 2), 3 * curve.a * curve.b + 4))
        try:
            split_degree(sg, curve.a, curve.b)
        except ValueError:
            continue
        g = random_goppa_function(curve, sg, int(rng.integers(1 << 30)))
        f = random_function(curve, int(rng.integers(0, 31)), rng)
        f1, f2 = weighted_divide(f, g)
        lhs = values(f, curve)
        rhs = F.add(F.mul(values(f1, curve), values(g, curve)), values(f2, curve))
        assert np.array_equal(lhs, rhs)
        assert in_remainder_space(f2, g)
        if f2:
            assert f2.weighted_degree <= f.weighted_degree


def test_degree_multiplicative_and_leading_terms(ell729, rng):
    for _ in range(30):
        f = random_function(ell729, int(rng.integers(0, 25)), rng)
        h = random_function(ell729, int(rng.integers(0, 25)), rng)
        if not f or not h:
            continue
        fh = f * h
        assert fh.weighted_degree == f.weighted_degree + h.weighted_degree
        (u1, v1), (u2, v2) = f.leading_monomial, h.leading_monomial
        lt = CurveFunction.monomial(ell729, u1 + u2, v1 + v2)
        assert fh.leading_monomial == lt.leading_monomial


def _span_dim(curve, funcs, s_total):
    index = {m: i for i, m in enumerate(monomial_basis(curve, s_total))}
    M = np.zeros((len(funcs), len(index)), dtype=np.int64)
    for r, f in enumerate(funcs):
        for mono, c in f.terms.items():
            M[r, index[mono]] = c
    return linalg.rank(curve.ctx.ext, M)


@pytest.mark.parametrize("s,sp", [(3, 2), (4, 5), (6, 3)])
def test_product_of_bases_elliptic(ell9, s, sp):
    B1 = [CurveFunction.monomial(ell9, u, v) for u, v in monomial_basis(ell9, s)]
    B2 = [CurveFunction.monomial(ell9, u, v) for u, v in monomial_basis(ell9, sp)]
    prods = [f * h for f in B1 for h in B2]
    assert _span_dim(ell9, prods, s + sp) == len(monomial_basis(ell9, s + sp))


def test_product_of_bases_hermitian(herm16):
    g = herm16.genus
    s, sp = 2 * g + 1, 2 * g
    B1 = [CurveFunction.monomial(herm16, u, v) for u, v in monomial_basis(herm16, s)]
    B2 = [CurveFunction.monomial(herm16, u, v) for u, v in monomial_basis(herm16, sp)]
    prods = [f * h for f in B1 for h in B2]
    assert _span_dim(herm16, prods, s + sp) == len(monomial_basis(herm16, s + sp))


def test_leading_term_of_goppa_powers(ell729):
    q = ell729.ctx.q
    for seed in range(4):
        for sprime in (5, 6, 8):
            g = random_goppa_function(ell729, sprime, seed)
            beta, alpha = g.leading_monomial
            for i in (1, 2):
                alpha_i, beta_i = leading_exponents(i, sprime, 2, 3, alpha, beta, q)
                assert goppa_power(g, q, i).leading_monomial == (beta_i, alpha_i)


@pytest.mark.parametrize("i", [1, 2])
def test_trace_reduction_identity(ell729, rng, i):
    ctx = ell729.ctx
    F, q = ctx.ext, ctx.q
    X, Y = ell729.point_arrays()
    for seed in range(3):
        g = random_goppa_function(ell729, 5, seed)
        gv = g.evaluate_many(X, Y)
        keep = gv != 0
        denom = F.inv(F.power(gv[keep], q**i + 1))
        f = random_function(ell729, 5 * (q**i + 1) - 1, rng)
        fr = trace_reduce(f, g, q, i)
        assert in_remainder_space(fr, goppa_power(g, q, i))
        a = ctx.trace(F.mul(f.evaluate_many(X, Y)[keep], denom))
        b = ctx.trace(F.mul(fr.evaluate_many(X, Y)[keep], denom))
        assert np.array_equal(a, b)


def test_function_protocol(ell9):
    f = CurveFunction(ell9, {(1, 0): 1, (0, 1): 2})
    assert f == CurveFunction(ell9, {(0, 1): 2, (1, 0): 1})
    assert hash(f) == hash(CurveFunction(ell9, {(0, 1): 2, (1, 0): 1}))
    assert (f - f).weighted_degree is None
    assert f.in_L(3) and not f.in_L(2)
    assert "x^1" in repr(f)
    with pytest.raises(ValueError):
        f ** -1
