"""C_{a,b} curves  f(x, y) = sum c_ij x^i y^j = 0  over F_{q^m}."""

from __future__ import annotations

from functools import cached_property
from math import gcd, isqrt
from typing import Mapping, NamedTuple

import numpy as np

from .errors import BadLeadingCoefficient, NotCoprime, SingularPoint, WeightViolation
from .ff import FieldCtx

_GRID_LIMIT = 1024


class AffinePoint(NamedTuple):
    x: int
    y: int
    smooth: bool = True


class CabCurve:
    """Plane model of a C_{a,b} curve with its unique point at infinity.

    ``coeffs`` maps exponent pairs ``(i, j)`` to coefficients of ``x^i y^j``,
    given as encoded elements of ``ctx.ext``.  Zero coefficients are dropped.
    """

    def __init__(self, a: int, b: int, coeffs: Mapping[tuple[int, int], int], ctx: FieldCtx):
        self.a = int(a)
        self.b = int(b)
        self.ctx = ctx
        self.coeffs = {(int(i), int(j)): int(c) for (i, j), c in coeffs.items() if int(c) != 0}
        self._validated = False

    def __repr__(self) -> str:
        return f"CabCurve(a={self.a}, b={self.b}, field=GF({self.ctx.order}))"

    @property
    def genus(self) -> int:
        return (self.a - 1) * (self.b - 1) // 2

    def check_equation(self) -> None:
        a, b = self.a, self.b
        if a < 1 or b < 1 or gcd(a, b) != 1:
            raise NotCoprime(f"a={a} and b={b} must be coprime positive integers")
        if self.coeffs.get((0, a), 0) == 0 or self.coeffs.get((b, 0), 0) == 0:
            raise BadLeadingCoefficient("coefficients of y^a and x^b must be non-zero")
        for (i, j) in self.coeffs:
            if (i, j) in ((0, a), (b, 0)):
                continue
            if i < 0 or j < 0 or a * i + b * j >= a * b:
                raise WeightViolation(f"term x^{i} y^{j} has weight {a * i + b * j} >= {a * b}")

    def validate(self) -> int:
        """Check the defining equation and smoothness at rational points."""
        self.check_equation()
        for P in self.affine_points:
            if not P.smooth:
                raise SingularPoint((P.x, P.y))
        self._validated = True
        return self.genus

    # ---- evaluation --------------------------------------------------
    def _eval_terms(self, terms, X, Y):
        F = self.ctx.ext
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        out = np.zeros(np.broadcast(X, Y).shape, dtype=np.int64)
        xp: dict[int, np.ndarray] = {}
        yp: dict[int, np.ndarray] = {}
        for (i, j), c in terms:
            if i not in xp:
                xp[i] = F.power(X, i)
            if j not in yp:
                yp[j] = F.power(Y, j)
            out = F.add(out, F.mul(c, F.mul(xp[i], yp[j])))
        return out

    def equation(self, X, Y):
        return self._eval_terms(self.coeffs.items(), X, Y)

    def partials(self, X, Y):
        """(df/dx, df/dy) evaluated elementwise."""
        F = self.ctx.ext
        dx, dy = [], []
        for (i, j), c in self.coeffs.items():
            if i % F.p:
                dx.append(((i - 1, j), F.smul(F.from_int(i), c)))
            if j % F.p:
                dy.append(((i, j - 1), F.smul(F.from_int(j), c)))
        return self._eval_terms(dx, X, Y), self._eval_terms(dy, X, Y)

    @cached_property
    def affine_points(self) -> list[AffinePoint]:
        """All rational affine points, ordered by (x, y) encoding."""
        Q = self.ctx.order
        ys = np.arange(Q, dtype=np.int64)
        xs_found, ys_found = [], []
        if Q <= _GRID_LIMIT:
            X, Y = np.meshgrid(ys, ys, indexing="ij")
            xi, yi = np.nonzero(self.equation(X, Y) == 0)
            xs_found, ys_found = xi, yi
        else:
            for x in range(Q):
                hit = np.flatnonzero(self.equation(x, ys) == 0)
                xs_found.extend([x] * hit.size)
                ys_found.extend(hit.tolist())
            xs_found = np.array(xs_found, dtype=np.int64)
            ys_found = np.array(ys_found, dtype=np.int64)
        fx, fy = self.partials(xs_found, ys_found)
        smooth = (np.asarray(fx) != 0) | (np.asarray(fy) != 0)
        return [AffinePoint(int(x), int(y), bool(s)) for x, y, s in zip(xs_found, ys_found, smooth)]

    def point_arrays(self, points=None) -> tuple[np.ndarray, np.ndarray]:
        pts = self.affine_points if points is None else points
        return (np.array([P.x for P in pts], dtype=np.int64),
                np.array([P.y for P in pts], dtype=np.int64))

    def hasse_weil_ok(self, count_with_infinity: int) -> bool:
        return hasse_weil_ok(self.ctx.order, self.genus, count_with_infinity)

    def describe(self) -> dict:
        ctx = self.ctx
        return {
            "a": self.a,
            "b": self.b,
            "coeffs": [
                {"i": i, "j": j, "c": ctx.coords(c).tolist()}
                for (i, j), c in sorted(self.coeffs.items())
            ],
        }


def hasse_weil_ok(order: int, genus: int, count_with_infinity: int) -> bool:
    """|N - (Q + 1)| <= 2 g sqrt(Q), compared in integers."""
    dev = count_with_infinity - (order + 1)
    return dev * dev <= 4 * genus * genus * order


def elliptic_curve(ctx: FieldCtx, a1: int = 1, a0: int = 2, lin: int = 1) -> CabCurve:
    """y^2 + y = x^3 + lin*x + a0 with prime-field integer coefficients."""
    F = ctx.ext
    return CabCurve(2, 3, {
        (0, 2): 1,
        (0, 1): F.from_int(a1),
        (3, 0): F.from_int(-1),
        (1, 0): F.from_int(-lin),
        (0, 0): F.from_int(-a0),
    }, ctx)


def hermitian_curve(ctx: FieldCtx) -> CabCurve:
    """y^q0 + y = x^(q0+1) over F_{q0^2}; requires q^m to be a square."""
    q0 = isqrt(ctx.order)
    if q0 * q0 != ctx.order:
        raise ValueError("the Hermitian curve needs a field of square order")
    F = ctx.ext
    return CabCurve(q0, q0 + 1, {(0, q0): 1, (0, 1): 1, (q0 + 1, 0): F.from_int(-1)}, ctx)


def rational_curve(ctx: FieldCtx) -> CabCurve:
    """The genus-0 curve y + x = 0, i.e. the affine line with a=b=1."""
    return CabCurve(1, 1, {(0, 1): 1, (1, 0): 1}, ctx)
