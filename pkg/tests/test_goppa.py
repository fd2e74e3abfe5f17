from __future__ import annotations

import itertools

import numpy as np
import pytest

from agdist import lincode
from agdist.cab import rational_curve
from agdist.errors import DegenerateRank, GOnEvaluationPoint, UnrepresentableDegree
from agdist.ff import FieldCtx
from agdist.goppa import (
    INF,
    ExplicitDivisor,
    build,
    c1_dimension,
    classical_goppa,
    default_points,
    floor_divisor,
    random_goppa_function,
    rational_zeros,
)
from agdist.lincode import LinearCode
from agdist.ring import CurveFunction, monomial_basis


def poly_in_x(curve, roots_with_mult):
    """prod (x - r)^e as a curve function."""
    F = curve.ctx.ext
    f = CurveFunction.constant(curve, 1)
    for r, e in roots_with_mult:
        f = f * CurveFunction(curve, {(1, 0): 1, (0, 0): F.sneg(r)}) ** e
    return f


@pytest.fixture(scope="module")
def f729_s4(ell729):
    return build(ell729, 4, random_goppa_function(ell729, 5, 76))


def test_f729_reference_dimensions(ell729, f729_s4):
    assert f729_s4.n == 781 and f729_s4.gamma.dim == 757
    inst = build(ell729, 10, random_goppa_function(ell729, 11, 76))
    assert inst.n == 781 and inst.gamma.dim == 721


def test_instance_invariants(f729_s4):
    inst = f729_s4
    ctx = inst.ctx
    assert inst.k == inst.s + 1 - inst.curve.genus
    assert inst.gamma.dim >= inst.n - ctx.m * inst.k
    assert inst.gamma.dual() == inst.gamma_dual
    assert inst.sprime == 5
    assert inst.g.leading_monomial == (1, 1)


@pytest.mark.parametrize("i", [0, 1, 2])
def test_product_lands_in_twisted_code(f729_s4, i):
    inst = f729_s4
    ctx, q, s = inst.ctx, inst.ctx.q, inst.s
    P = lincode.schur_product(inst.C, lincode.power_code(inst.C, ctx, i))
    big = LinearCode(ctx.ext, inst.twisted_rows(monomial_basis(inst.curve, s * (q**i + 1)),
                                                q**i + 1), inst.n)
    assert big.contains(P)
    T = lincode.trace_code(P, ctx)
    assert T.dim <= ctx.m * (s * (q**i + 1) + 1 - inst.curve.genus)


def test_random_goppa_function(ell9):
    g = random_goppa_function(ell9, 5, 11)
    assert g == random_goppa_function(ell9, 5, 11)
    assert g.leading_monomial == (1, 1) and g.leading_coefficient == 1
    assert set(g.terms) <= {(1, 1), (0, 0), (1, 0), (0, 1), (2, 0)}
    for seed in range(100):
        assert random_goppa_function(ell9, 7, seed).weighted_degree == 7
    with pytest.raises(UnrepresentableDegree):
        random_goppa_function(ell9, 1, 0)


def test_floor_divisor_examples():
    P, Q = (0, 1), (2, 0)
    assert floor_divisor(ExplicitDivisor({P: 7, Q: -2}), 3).parts == {P: 2, Q: -2}
    assert floor_divisor(ExplicitDivisor({INF: 4}), 3).parts == {INF: 1}
    Z = ExplicitDivisor({P: 1, Q: 1, INF: -3})
    assert floor_divisor(Z, 2).parts == {INF: -3}
    assert Z.degree == -1


def test_rational_zeros(ell3, ell9, rng):
    x = CurveFunction.x(ell3)
    zs = rational_zeros(x)
    assert [(P.x, P.y) for P, _ in zs] == [(0, 1)] and zs[0][1] is False
    assert rational_zeros(CurveFunction.constant(ell9, 4)) == []
    for seed in range(30):
        sp = int(rng.integers(3, 12))
        g = random_goppa_function(ell9, sp, seed)
        assert len(rational_zeros(g)) <= sp


def test_c1_all_simple_rational(ell9):
    g = poly_in_x(ell9, [(1, 1), (2, 1)])
    zs = rational_zeros(g)
    assert len(zs) == 4 and all(simple for _, simple in zs)
    inst = build(ell9, 3, g)
    assert c1_dimension(inst) == 0


def _brute_c1(curve, s, points):
    """Count f in L(sP_inf) vanishing to order >= 2 at each point, by exhaustion."""
    F = curve.ctx.ext
    monos = monomial_basis(curve, s)
    Q = F.order
    coeffs = np.array(list(itertools.product(range(Q), repeat=len(monos))), dtype=np.int64)
    ok = np.ones(len(coeffs), dtype=bool)
    for P in points:
        fx_c, fy_c = (int(v[0]) for v in curve.partials(np.array([P.x]), np.array([P.y])))
        val = np.zeros(len(coeffs), dtype=np.int64)
        der = np.zeros(len(coeffs), dtype=np.int64)
        for col, (u, v) in enumerate(monos):
            mono = CurveFunction.monomial(curve, u, v)
            dx, dy = mono.partials()
            d = F.ssub(F.smul(dx.evaluate(P), fy_c), F.smul(dy.evaluate(P), fx_c))
            val = F.add(val, F.mul(coeffs[:, col], mono.evaluate(P)))
            der = F.add(der, F.mul(coeffs[:, col], d))
        ok &= (val == 0) & (der == 0)
    count = int(ok.sum())
    dim = 0
    while Q**dim < count:
        dim += 1
    assert Q**dim == count
    return dim


def test_c1_supplied_divisor(ell9):
    g = poly_in_x(ell9, [(1, 3)])
    assert g.weighted_degree == 6
    inst = build(ell9, 4, g)
    zeros = {(1, 3): 3, (1, 8): 3}
    expected = _brute_c1(ell9, 4, [P for P in ell9.affine_points if P.x == 1])
    assert expected == 1
    assert c1_dimension(inst, zeros) == expected
    # without the divisor the zeros are not simple, so nothing can be certified
    assert c1_dimension(inst) is None
    # a divisor that does not add up to s' is rejected
    assert c1_dimension(inst, {(1, 3): 3}) is None


def test_c1_indeterminate_for_nonrational_zeros(f729_s4):
    assert c1_dimension(f729_s4) is None


def test_build_errors(ell9):
    g = poly_in_x(ell9, [(1, 1), (2, 1)])
    zero_pt = next(i for i, P in enumerate(ell9.affine_points) if P.x == 1)
    with pytest.raises(GOnEvaluationPoint):
        build(ell9, 3, g, [zero_pt, 0])
    with pytest.raises(DegenerateRank):
        build(ell9, 3, g, [0, 5, 6])


def test_default_points_skip_zeros(ell9):
    g = poly_in_x(ell9, [(1, 1), (2, 1)])
    pts = default_points(ell9, g)
    assert len(pts) == 11 and all(P.x not in (1, 2) for P in pts)


def _genus0_gamma(ctx, support, gpoly, rng_seed=None):
    curve = rational_curve(ctx)
    F = ctx.ext
    g = CurveFunction(curve, {(i, 0): c for i, c in enumerate(gpoly)})
    idx = {P.x: i for i, P in enumerate(curve.affine_points)}
    return build(curve, len(gpoly) - 2, g, [idx[x] for x in support])


def test_genus_zero_matches_classical_goppa(rng):
    ctx = FieldCtx(2, 1, 4)
    F = ctx.ext
    from agdist import _poly

    done = 0
    while done < 5:
        r = int(rng.integers(2, 4))
        gpoly = F.random(rng, r).tolist() + [1]
        if any(_poly.evaluate(F, gpoly, x) == 0 for x in range(ctx.order)):
            continue
        support = sorted(rng.choice(ctx.order, size=int(rng.integers(r + 2, 17)), replace=False).tolist())
        inst = _genus0_gamma(ctx, support, gpoly)
        ref = classical_goppa(ctx, support, gpoly)
        assert np.array_equal(inst.gamma.gen, ref.gen)
        done += 1
