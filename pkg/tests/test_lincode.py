from __future__ import annotations

import numpy as np
import pytest

from agdist import linalg
from agdist.errors import FieldMismatch, LengthMismatch
from agdist.ff import FieldCtx
from agdist.lincode import (
    LinearCode,
    dual,
    full_code,
    power_code,
    schur_product,
    schur_square,
    subfield_subcode,
    trace_code,
    zero_code,
)
from oracles import NaiveTower, rank_naive


def random_code(F, k, n, rng):
    return LinearCode(F, F.random(rng, (k, n)), n)


def naive_for(ctx):
    return NaiveTower(ctx.p, ctx.d, ctx.m, ctx.modulus_q, ctx.modulus_qm)


def test_dual_examples(f9):
    F3 = f9.base
    C = LinearCode(F3, [[1, 1, 1]])
    D = dual(C)
    assert D.dim == 2
    assert not F3.matmul(D.gen, C.gen.T).any()
    assert dual(full_code(F3, 4)).dim == 0
    assert dual(dual(C)) is C


@pytest.mark.parametrize("tower", [(3, 1, 2), (2, 2, 2), (5, 1, 1)])
def test_dual_random(tower, rng):
    F = FieldCtx(*tower).ext
    for _ in range(20):
        n = int(rng.integers(1, 12))
        C = random_code(F, int(rng.integers(0, n + 2)), n, rng)
        D = C.dual()
        assert C.dim + D.dim == n
        assert not F.matmul(C.gen, D.gen.T).any()
        fresh = LinearCode(F, D.gen).dual()
        assert fresh == C


def test_rank_matches_naive(rng):
    ctx = FieldCtx(2, 2, 2)
    T = naive_for(ctx)
    F = ctx.ext
    for _ in range(15):
        M = F.random(rng, (int(rng.integers(1, 8)), int(rng.integers(1, 8))))
        M[rng.random(M.shape) < 0.4] = 0
        assert linalg.rank(F, M) == rank_naive(T, M.tolist())


def test_rref_is_canonical(f9, rng):
    F = f9.ext
    C = random_code(F, 4, 9, rng)
    mix = F.random(rng, (6, 4))
    D = LinearCode(F, F.matmul(mix, C.gen))
    assert D.dim == 4 and np.array_equal(C.gen, D.gen)
    piv = C.pivots
    assert piv == sorted(piv)


def test_subfield_subcode_examples(f9):
    F = f9.ext
    assert subfield_subcode(full_code(F, 3), f9) == full_code(f9.base, 3)
    alpha = 3
    assert subfield_subcode(LinearCode(F, [[1, alpha]]), f9).dim == 0
    C = subfield_subcode(LinearCode(F, [[1, 1]]), f9)
    assert C.dim == 1 and C.gen.tolist() == [[1, 1]]


def test_subfield_subcode_dimension_bound(f9, rng):
    for _ in range(20):
        n = int(rng.integers(2, 12))
        k = int(rng.integers(1, n + 1))
        C = random_code(f9.ext, k, n, rng)
        S = subfield_subcode(C, f9)
        assert S.dim >= n - f9.m * (n - C.dim)
        assert np.all(S.gen < f9.q)
        lifted = LinearCode(f9.ext, S.gen, n) if S.dim else zero_code(f9.ext, n)
        assert C.contains(lifted)


def test_trace_code_examples(f9):
    T = trace_code(LinearCode(f9.ext, [[1, 1, 1]]), f9)
    assert T.contains(LinearCode(f9.base, [[2, 2, 2]]))
    assert trace_code(zero_code(f9.ext, 4), f9).dim == 0


@pytest.mark.parametrize("tower", [(3, 1, 2), (2, 2, 2)])
def test_delsarte_random(tower, rng):
    ctx = FieldCtx(*tower)
    for _ in range(30):
        n = int(rng.integers(1, 13))
        C = random_code(ctx.ext, int(rng.integers(0, n + 1)), n, rng)
        lhs = trace_code(C.dual(), ctx)
        rhs = subfield_subcode(C, ctx).dual()
        assert lhs == rhs
        assert trace_code(C, ctx).dim <= min(ctx.m * C.dim, n)


def test_schur_examples(f9):
    F = f9.ext
    E = LinearCode(F, [[1, 0, 0], [0, 1, 0]])
    assert schur_square(E) == E
    xs = np.array([0, 1, 3, 4])
    RS2 = LinearCode(F, np.stack([F.power(xs, i) for i in range(2)]))
    RS3 = LinearCode(F, np.stack([F.power(xs, i) for i in range(3)]))
    sq = schur_square(RS2)
    assert sq.dim == 3 and sq == RS3


def test_schur_properties(f9, rng):
    F = f9.ext
    for _ in range(20):
        n = int(rng.integers(2, 12))
        C = random_code(F, int(rng.integers(1, 5)), n, rng)
        D = random_code(F, int(rng.integers(1, 5)), n, rng)
        CD = schur_product(C, D)
        assert CD == schur_product(D, C)
        assert CD.dim <= min(C.dim * D.dim, n)
        assert schur_square(C).dim <= min(n, C.dim * (C.dim + 1) // 2)
        assert schur_product(C + D, D).contains(CD)


def test_schur_errors(f9):
    with pytest.raises(LengthMismatch):
        schur_product(full_code(f9.ext, 3), full_code(f9.ext, 4))
    with pytest.raises(FieldMismatch):
        schur_product(full_code(f9.ext, 3), full_code(f9.base, 3))


def test_power_code(f9, rng):
    C = random_code(f9.ext, 3, 8, rng)
    assert power_code(C, f9, 0) == C
    assert power_code(C, f9, f9.m) == C
    P = power_code(C, f9, 1)
    assert P.dim == C.dim
    assert np.array_equal(P.rows, f9.frobenius(C.basis, 1))


def test_large_square_reaches_full_length(f729, rng):
    F = f729.base
    C = LinearCode(F, F.random(rng, (60, 300)))
    assert schur_square(C).dim == 300


def test_json_export(f9):
    C = LinearCode(f9.ext, [[1, 3]])
    out = C.to_json(f9)
    assert out["k"] == 1 and out["gen"] == [[[1, 0], [0, 1]]]
