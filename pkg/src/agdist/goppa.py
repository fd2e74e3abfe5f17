"""One-point Goppa-like codes on C_{a,b} curves.

For D = s P_inf and a function g of weighted degree s' > s, the inner code is

    C = { (f(P) / g(P))_P : f in L(s P_inf) }   over F_{q^m},

and the Goppa-like code is Gamma = (C^perp) ∩ F_q^n, whose dual is Tr(C).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import lincode
from . import _poly
from .bounds import leading_exponents, split_degree
from .cab import AffinePoint, CabCurve
from .errors import (
    DegenerateRank,
    GOnEvaluationPoint,
    PreconditionViolated,
    UnrepresentableDegree,
    ZeroFunction,
)
from .ff import FieldCtx
from .lincode import LinearCode
from .ring import CurveFunction, monomial_basis, weight

INF = "P_inf"


def _eval_monomials(curve: CabCurve, monos, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    F = curve.ctx.ext
    xp: dict[int, np.ndarray] = {}
    yp: dict[int, np.ndarray] = {}
    rows = np.empty((len(monos), X.size), dtype=np.int64)
    for r, (u, v) in enumerate(monos):
        if u not in xp:
            xp[u] = F.power(X, u)
        if v not in yp:
            yp[v] = F.power(Y, v)
        rows[r] = F.mul(xp[u], yp[v])
    return rows


def random_goppa_function(curve: CabCurve, sprime: int, seed) -> CurveFunction:
    """x^beta y^alpha plus a uniformly random element of L((s'-1) P_inf)."""
    try:
        alpha, beta = split_degree(sprime, curve.a, curve.b)
    except ValueError as exc:
        raise UnrepresentableDegree(str(exc)) from None
    rng = np.random.default_rng(seed)
    monos = monomial_basis(curve, sprime - 1)
    coeffs = curve.ctx.ext.random(rng, len(monos)).tolist()
    terms = dict(zip(monos, coeffs))
    terms[(beta, alpha)] = 1
    return CurveFunction(curve, terms, normalized=True)


@dataclass
class GoppaLikeInstance:
    curve: CabCurve
    s: int
    g: CurveFunction
    points: list[AffinePoint]
    g_values: np.ndarray = field(repr=False)
    C: LinearCode = field(repr=False)

    @property
    def ctx(self) -> FieldCtx:
        return self.curve.ctx

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def sprime(self) -> int:
        return self.g.weighted_degree

    @property
    def k(self) -> int:
        return self.C.dim

    @cached_property
    def point_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self.curve.point_arrays(self.points)

    @cached_property
    def gamma(self) -> LinearCode:
        return lincode.subfield_subcode(self.C.dual(), self.ctx)

    @cached_property
    def gamma_dual(self) -> LinearCode:
        return lincode.trace_code(self.C, self.ctx)

    def verify_delsarte(self) -> bool:
        return self.gamma.dual() == self.gamma_dual

    def twisted_rows(self, monos, power: int) -> np.ndarray:
        """Rows (h(P) / g(P)^power) for monomials h."""
        F = self.ctx.ext
        X, Y = self.point_arrays
        inv = F.inv(F.power(self.g_values, power))
        return F.mul(_eval_monomials(self.curve, monos, X, Y), inv[None, :])

    def m_i_monomials(self, i: int) -> list[tuple[int, int]]:
        """Monomial basis of R(g^(q^i-q^(i-1)+1)) ∩ L(s(q^i+1) P_inf)."""
        curve, q = self.curve, self.ctx.q
        beta, alpha = self.g.leading_monomial
        alpha_i, beta_i = leading_exponents(i, self.sprime, curve.a, curve.b, alpha, beta, q)
        S = self.s * (q**i + 1)
        return [(u, v) for v in range(curve.a) for u in range(beta_i + curve.b)
                if not (u >= beta_i and v >= alpha_i) and weight(curve, (u, v)) <= S]

    def t_space(self, i: int) -> LinearCode:
        q = self.ctx.q
        if i == 0:
            monos = monomial_basis(self.curve, 2 * self.s)
            power = 2
        else:
            monos = self.m_i_monomials(i)
            power = q**i + 1
        rows = self.twisted_rows(monos, power)
        return lincode.trace_code(LinearCode(self.ctx.ext, rows, self.n), self.ctx)


def default_points(curve: CabCurve, g: CurveFunction) -> list[AffinePoint]:
    X, Y = curve.point_arrays()
    vals = g.evaluate_many(X, Y)
    return [P for P, v in zip(curve.affine_points, vals) if v != 0]


def build(curve: CabCurve, s: int, g: CurveFunction,
          points: Sequence[AffinePoint] | Sequence[int] | None = None,
          *, verify: bool = True) -> GoppaLikeInstance:
    if not g:
        raise ZeroFunction("g must be non-zero")
    if s < 2 * curve.genus - 1:
        raise PreconditionViolated(f"s={s} < 2g-1={2 * curve.genus - 1}")
    if g.weighted_degree <= s:
        raise PreconditionViolated(f"deg g = {g.weighted_degree} must exceed s = {s}")
    if points is None or isinstance(points, str):
        pts = default_points(curve, g)
    else:
        pts = [curve.affine_points[p] if isinstance(p, (int, np.integer)) else p for p in points]
    F = curve.ctx.ext
    X, Y = curve.point_arrays(pts)
    gv = g.evaluate_many(X, Y)
    bad = np.flatnonzero(gv == 0)
    if bad.size:
        P = pts[int(bad[0])]
        raise GOnEvaluationPoint(f"g vanishes at evaluation point ({P.x}, {P.y})")
    monos = monomial_basis(curve, s)
    if len(pts) <= s:
        raise DegenerateRank(f"n={len(pts)} <= s={s}")
    rows = F.mul(_eval_monomials(curve, monos, X, Y), F.inv(gv)[None, :])
    C = LinearCode(F, rows, len(pts))
    if C.dim != len(monos):
        raise DegenerateRank(f"evaluation map has rank {C.dim} < {len(monos)}")
    inst = GoppaLikeInstance(curve, s, g, list(pts), gv, C)
    if verify and not inst.verify_delsarte():
        raise AssertionError("dual of Gamma differs from the trace code of C")
    return inst


# ---- divisors -------------------------------------------------------------

@dataclass(frozen=True)
class ExplicitDivisor:
    """Finite formal sum of rational places; keys are (x, y) pairs or ``INF``."""

    parts: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for place, mult in dict(self.parts).items():
            key = place if place == INF else (int(place[0]), int(place[1]))
            if key in clean:
                raise ValueError(f"duplicate place {key}")
            if mult:
                clean[key] = int(mult)
        object.__setattr__(self, "parts", clean)

    @property
    def degree(self) -> int:
        return sum(self.parts.values())

    def __getitem__(self, place) -> int:
        return self.parts.get(place, 0)

    def positive(self) -> ExplicitDivisor:
        return ExplicitDivisor({p: v for p, v in self.parts.items() if v > 0})

    def negative(self) -> ExplicitDivisor:
        return ExplicitDivisor({p: v for p, v in self.parts.items() if v < 0})

    def __add__(self, other: ExplicitDivisor) -> ExplicitDivisor:
        out = dict(self.parts)
        for p, v in other.parts.items():
            out[p] = out.get(p, 0) + v
        return ExplicitDivisor(out)


def floor_divisor(G: ExplicitDivisor, q: int) -> ExplicitDivisor:
    return ExplicitDivisor({p: (v // q if v > 0 else v) for p, v in G.parts.items()})


def rational_zeros(g: CurveFunction) -> list[tuple[AffinePoint, bool]]:
    """Rational affine zeros of g; simple iff det Jacobian(f_ab, g) != 0."""
    if not g:
        raise ZeroFunction("the zero function vanishes everywhere")
    curve = g.curve
    F = curve.ctx.ext
    X, Y = curve.point_arrays()
    hit = np.flatnonzero(g.evaluate_many(X, Y) == 0)
    if hit.size == 0:
        return []
    Xh, Yh = X[hit], Y[hit]
    fx, fy = curve.partials(Xh, Yh)
    gx_f, gy_f = g.partials()
    gx, gy = gx_f.evaluate_many(Xh, Yh), gy_f.evaluate_many(Xh, Yh)
    det = F.sub(F.mul(fx, gy), F.mul(fy, gx))
    pts = curve.affine_points
    return [(pts[int(j)], bool(d != 0)) for j, d in zip(hit, det)]


# ---- local expansions for C_1 ----------------------------------------------

def _series_mul(F, A: list[int], B: list[int], R: int) -> list[int]:
    out = [0] * R
    for i, a in enumerate(A[:R]):
        if a == 0:
            continue
        for j, b in enumerate(B[: R - i]):
            if b:
                out[i + j] = F.sadd(out[i + j], F.smul(a, b))
    return out


def _series_pow(F, A: list[int], e: int, R: int) -> list[int]:
    out = [1] + [0] * (R - 1)
    for _ in range(e):
        out = _series_mul(F, out, A, R)
    return out


def _local_coordinates(curve: CabCurve, P: AffinePoint, R: int) -> tuple[list[int], list[int]]:
    """Power series (x(t), y(t)) mod t^R in a local parameter t at P."""
    F = curve.ctx.ext
    fx, fy = (int(v[0]) for v in curve.partials(np.array([P.x]), np.array([P.y])))
    if fy == 0 and fx == 0:
        raise ValueError("singular point")
    along_x = fy != 0
    base = [P.x, 1] + [0] * (R - 2) if along_x else [P.y, 1] + [0] * (R - 2)
    base = base[:R]
    other = [P.y if along_x else P.x] + [0] * (R - 1)
    d_inv = F.sinv(fy if along_x else fx)
    # Hensel lifting: other <- other - f(x, y) / f_other(P), one coefficient per pass
    for _ in range(R):
        xs, ys = (base, other) if along_x else (other, base)
        val = [0] * R
        for (i, j), c in curve.coeffs.items():
            term = _series_mul(F, _series_pow(F, xs, i, R), _series_pow(F, ys, j, R), R)
            val = [F.sadd(v, F.smul(c, t)) for v, t in zip(val, term)]
        if not any(val):
            break
        other = [F.ssub(o, F.smul(d_inv, v)) for o, v in zip(other, val)]
    return (base, other) if along_x else (other, base)


def vanishing_subspace(curve: CabCurve, s: int, orders: Mapping[AffinePoint, int]) -> np.ndarray:
    """Coefficient vectors (over monomial_basis(s)) of f in L(s P_inf) with
    ord_P(f) >= orders[P] for every listed point."""
    from . import linalg

    F = curve.ctx.ext
    monos = monomial_basis(curve, s)
    conds = []
    for P, r in orders.items():
        if r <= 0:
            continue
        xs, ys = _local_coordinates(curve, P, r)
        cols = [_series_mul(F, _series_pow(F, xs, u, r), _series_pow(F, ys, v, r), r)
                for (u, v) in monos]
        conds.append(np.array(cols, dtype=np.int64).T)
    if not conds:
        return np.eye(len(monos), dtype=np.int64)
    return linalg.nullspace(F, np.vstack(conds))


def c1_dimension(inst: GoppaLikeInstance,
                 zero_divisor: ExplicitDivisor | Mapping | None = None) -> int | None:
    """dim C_L(X, P, [ (sP_inf + (g)) / q ]), or ``None`` when the zero
    divisor of g cannot be certified."""
    curve, g, q = inst.curve, inst.g, inst.ctx.q
    sprime = inst.sprime
    if zero_divisor is None:
        zeros = rational_zeros(g)
        if len(zeros) == sprime and all(simple for _, simple in zeros):
            return 0
        return None
    Z = zero_divisor if isinstance(zero_divisor, ExplicitDivisor) else ExplicitDivisor(zero_divisor)
    if Z.degree != sprime or any(v < 0 or p == INF for p, v in Z.parts.items()):
        return None
    by_xy = {(P.x, P.y): P for P in curve.affine_points}
    orders = {}
    for (x, y), mult in Z.parts.items():
        P = by_xy.get((x, y))
        if P is None or g.evaluate(P) != 0:
            return None
        orders[P] = mult - mult // q
    G = ExplicitDivisor({INF: inst.s - sprime}) + Z
    if floor_divisor(G, q).degree < 0:
        return 0
    K = vanishing_subspace(curve, inst.s, orders)
    if K.shape[0] == 0:
        return 0
    F = curve.ctx.ext
    X, Y = inst.point_arrays
    ev = _eval_monomials(curve, monomial_basis(curve, inst.s), X, Y)
    rows = F.mul(F.matmul(K, ev), F.inv(inst.g_values)[None, :])
    return LinearCode(F, rows, inst.n).dim


# ---- genus-0 oracle ----------------------------------------------------------

def classical_goppa(ctx: FieldCtx, support: Sequence[int], gpoly: Sequence[int]) -> LinearCode:
    """Classical Goppa code {c in F_q^n : sum c_j / (X - x_j) = 0 mod g(X)},
    built from the syndrome definition.  ``gpoly`` is low-degree-first over
    F_{q^m}."""
    F = ctx.ext
    g = _poly.trim(list(gpoly))
    r = len(g) - 1
    cols = []
    for xj in support:
        inv = _poly.inverse_mod(F, [F.sneg(int(xj)), 1], g)
        cols.append(inv + [0] * (r - len(inv)))
    H = np.array(cols, dtype=np.int64).T
    return lincode.subfield_subcode(LinearCode(F, H, len(support)).dual(), ctx)
