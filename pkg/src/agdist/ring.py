"""The ring O_{P_inf} of functions with poles only at infinity.

A :class:`CurveFunction` is a bivariate polynomial in normal form: every
monomial ``x^u y^v`` has ``v < a``, obtained by rewriting ``y^a`` with the
curve equation.  Monomials are compared by weighted degree ``a*u + b*v``,
ties broken by the exponent of ``x``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .cab import AffinePoint, CabCurve
from .errors import GroebnerAssertionFailure, ZeroFunction

Monomial = tuple[int, int]


def weight(curve: CabCurve, mono: Monomial) -> int:
    return curve.a * mono[0] + curve.b * mono[1]


def order_key(curve: CabCurve, mono: Monomial) -> tuple[int, int]:
    return (weight(curve, mono), mono[0])


@lru_cache(maxsize=None)
def _ya_rewrite(curve: CabCurve) -> tuple[tuple[int, int, int], ...]:
    """Terms (i, j, c) with y^a = sum c x^i y^j on the curve."""
    F = curve.ctx.ext
    lead = curve.coeffs[(0, curve.a)]
    scale = F.sneg(F.sinv(lead))
    return tuple((i, j, F.smul(scale, c)) for (i, j), c in sorted(curve.coeffs.items())
                 if (i, j) != (0, curve.a))


def _normalize(curve: CabCurve, terms: dict[Monomial, int]) -> dict[Monomial, int]:
    a = curve.a
    F = curve.ctx.ext
    rewrite = _ya_rewrite(curve)
    while True:
        high = [mono for mono in terms if mono[1] >= a]
        if not high:
            break
        high.sort(key=lambda mono: -mono[1])
        for mono in high:
            c = terms.pop(mono, 0)
            if c == 0:
                continue
            u, v = mono
            for i, j, cc in rewrite:
                key = (u + i, v - a + j)
                val = F.sadd(terms.get(key, 0), F.smul(c, cc))
                if val:
                    terms[key] = val
                else:
                    terms.pop(key, None)
    return terms


class CurveFunction:
    """Immutable element of O_{P_inf} in normal form."""

    __slots__ = ("curve", "terms", "_hash")

    def __init__(self, curve: CabCurve, terms: Mapping[Monomial, int] | None = None,
                 *, normalized: bool = False):
        self.curve = curve
        t = {(int(u), int(v)): int(c) for (u, v), c in (terms or {}).items() if int(c) != 0}
        if any(u < 0 or v < 0 for u, v in t):
            raise ValueError("negative exponent")
        if not normalized:
            t = _normalize(curve, t)
        self.terms = t
        self._hash = None

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls, curve: CabCurve) -> CurveFunction:
        return cls(curve, {}, normalized=True)

    @classmethod
    def constant(cls, curve: CabCurve, c: int) -> CurveFunction:
        return cls(curve, {(0, 0): c})

    @classmethod
    def monomial(cls, curve: CabCurve, u: int, v: int, c: int = 1) -> CurveFunction:
        return cls(curve, {(u, v): c})

    @classmethod
    def x(cls, curve: CabCurve) -> CurveFunction:
        return cls.monomial(curve, 1, 0)

    @classmethod
    def y(cls, curve: CabCurve) -> CurveFunction:
        return cls.monomial(curve, 0, 1)

    # ---- basic protocol -----------------------------------------------
    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (u, v) in sorted(self.terms, key=lambda m: order_key(self.curve, m), reverse=True):
            c = self.terms[(u, v)]
            mono = "*".join(s for s in (f"x^{u}" if u else "", f"y^{v}" if v else "") if s)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return self.curve is other.curve and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.curve), frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def field(self):
        return self.curve.ctx.ext

    # ---- arithmetic ---------------------------------------------------
    def _combine(self, other: CurveFunction, sign: int) -> CurveFunction:
        F = self.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            c = c if sign > 0 else F.sneg(c)
            val = F.sadd(out.get(mono, 0), c)
            if val:
                out[mono] = val
            else:
                out.pop(mono, None)
        return CurveFunction(self.curve, out, normalized=True)

    def __add__(self, other: CurveFunction) -> CurveFunction:
        return self._combine(other, 1)

    def __sub__(self, other: CurveFunction) -> CurveFunction:
        return self._combine(other, -1)

    def __neg__(self) -> CurveFunction:
        F = self.field
        return CurveFunction(self.curve, {m: F.sneg(c) for m, c in self.terms.items()},
                             normalized=True)

    def scale(self, c: int) -> CurveFunction:
        F = self.field
        if c == 0:
            return CurveFunction.zero(self.curve)
        return CurveFunction(self.curve, {m: F.smul(c, v) for m, v in self.terms.items()},
                             normalized=True)

    def __mul__(self, other: CurveFunction) -> CurveFunction:
        F = self.field
        out: dict[Monomial, int] = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                key = (u1 + u2, v1 + v2)
                val = F.sadd(out.get(key, 0), F.smul(c1, c2))
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return CurveFunction(self.curve, out)

    def mul_monomial(self, u: int, v: int, c: int = 1) -> CurveFunction:
        F = self.field
        out = {(u + mu, v + mv): F.smul(c, val) for (mu, mv), val in self.terms.items()}
        return CurveFunction(self.curve, out)

    def __pow__(self, e: int) -> CurveFunction:
        if e < 0:
            raise ValueError("negative powers leave O_{P_inf}")
        result = CurveFunction.constant(self.curve, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius_power(self, k: int = 1) -> CurveFunction:
        """f^(p^k) computed coefficientwise (characteristic p)."""
        F = self.field
        e = F.p**k
        return CurveFunction(self.curve, {(u * e, v * e): F.spow(c, e)
                                          for (u, v), c in self.terms.items()})

    # ---- degree and leading term -------------------------------------
    @property
    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ZeroFunction("the zero function has no leading term")
        return max(self.terms, key=lambda m: order_key(self.curve, m))

    @property
    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial]

    @property
    def weighted_degree(self) -> int | None:
        """deg_{a,b}; ``None`` for the zero function."""
        if not self.terms:
            return None
        return weight(self.curve, self.leading_monomial)

    def in_L(self, s: int) -> bool:
        return all(weight(self.curve, m) <= s for m in self.terms)

    # ---- evaluation ----------------------------------------------------
    def evaluate(self, P: AffinePoint | tuple[int, int]) -> int:
        F = self.field
        x, y = P[0], P[1]
        acc = 0
        for (u, v), c in self.terms.items():
            acc = F.sadd(acc, F.smul(c, F.smul(F.spow(x, u), F.spow(y, v))))
        return acc

    def evaluate_many(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self.curve._eval_terms(self.terms.items(), X, Y)

    def partials(self) -> tuple[CurveFunction, CurveFunction]:
        """Formal partial derivatives of the normal-form representative."""
        F = self.field
        dx = {(u - 1, v): F.smul(F.from_int(u), c) for (u, v), c in self.terms.items() if u % F.p}
        dy = {(u, v - 1): F.smul(F.from_int(v), c) for (u, v), c in self.terms.items() if v % F.p}
        return (CurveFunction(self.curve, dx, normalized=True),
                CurveFunction(self.curve, dy, normalized=True))


def from_raw(curve: CabCurve, terms: Mapping[Monomial, int]) -> CurveFunction:
    """Normal form of an arbitrary bivariate polynomial."""
    return CurveFunction(curve, terms)


normal_form = from_raw


def evaluate(f: CurveFunction, P: AffinePoint) -> int:
    return f.evaluate(P)


def monomial_basis(curve: CabCurve, s: int) -> list[Monomial]:
    """Monomials x^i y^j with j < a and a*i + b*j <= s, increasing in the order."""
    if s < 0:
        return []
    a, b = curve.a, curve.b
    monos = [(i, j) for j in range(a) for i in range(max(0, (s - b * j) // a + 1))
             if a * i + b * j <= s]
    return sorted(monos, key=lambda m: order_key(curve, m))


def remainder_region(a: int, b: int, beta: int, alpha: int) -> list[Monomial]:
    """Monomials of R(g) for LT(g) = x^beta y^alpha."""
    return [(u, v) for v in range(a) for u in range(beta + b)
            if not (u >= beta and v >= alpha)]


def remainder_space_basis(g: CurveFunction) -> list[Monomial]:
    if not g:
        raise ZeroFunction("R(0) is undefined")
    beta, alpha = g.leading_monomial
    curve = g.curve
    return sorted(remainder_region(curve.a, curve.b, beta, alpha),
                  key=lambda m: order_key(curve, m))


def in_remainder_space(f: CurveFunction, g: CurveFunction) -> bool:
    beta, alpha = g.leading_monomial
    b = g.curve.b
    return all(u < beta + b and not (u >= beta and v >= alpha) for (u, v) in f.terms)


# ---- weighted division ------------------------------------------------

@lru_cache(maxsize=256)
def _completed_basis(g: CurveFunction) -> tuple[tuple[CurveFunction, Monomial], ...]:
    """Close {g} under multiplication by y^(a - alpha), which wraps the leading
    monomial past y^a and produces the missing leading term x^(beta+b).

    Returns pairs (generator, multiplier-exponent of y relative to g).
    """
    a = g.curve.a
    gens: list[tuple[CurveFunction, Monomial]] = [(g, (0, 0))]
    pending = [(g, 0)]
    while pending:
        h, yshift = pending.pop()
        beta, alpha = h.leading_monomial
        if alpha == 0:
            continue
        wrapped = h.mul_monomial(0, a - alpha)
        lm = wrapped.leading_monomial
        if any(lm[0] >= m[0] and lm[1] >= m[1] for m in (k.leading_monomial for k, _ in gens)):
            continue
        gens.append((wrapped, (0, yshift + a - alpha)))
        pending.append((wrapped, yshift + a - alpha))
    return tuple(gens)


def _reduce(f: CurveFunction, gens, quotient: dict[Monomial, int]) -> CurveFunction:
    """Cancel reducible terms from the top down; accumulates the quotient (as
    a multiple of g) into ``quotient``."""
    curve = f.curve
    F = f.field
    lead = [(h.leading_monomial, F.sinv(h.leading_coefficient), h, shift) for h, shift in gens]
    terms = dict(f.terms)
    done: set[Monomial] = set()
    while True:
        candidates = [m for m in terms if m not in done]
        if not candidates:
            break
        mono = max(candidates, key=lambda m: order_key(curve, m))
        hit = next(((lm, inv, h, shift) for lm, inv, h, shift in lead
                    if mono[0] >= lm[0] and mono[1] >= lm[1]), None)
        if hit is None:
            done.add(mono)
            continue
        lm, inv, h, shift = hit
        c = F.smul(terms[mono], inv)
        du, dv = mono[0] - lm[0], mono[1] - lm[1]
        sub = h.mul_monomial(du, dv, c)
        for key, val in sub.terms.items():
            new = F.ssub(terms.get(key, 0), val)
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        if mono in terms:
            raise GroebnerAssertionFailure(f"leading term {mono} was not cancelled")
        qkey = (du + shift[0], dv + shift[1])
        val = F.sadd(quotient.get(qkey, 0), c)
        if val:
            quotient[qkey] = val
        else:
            quotient.pop(qkey, None)
    return CurveFunction(curve, terms, normalized=True)


def weighted_divide(f: CurveFunction, g: CurveFunction) -> tuple[CurveFunction, CurveFunction]:
    """Return (f1, f2) with f = f1*g + f2 on the curve and f2 in R(g)."""
    if not g:
        raise ZeroFunction("division by the zero function")
    if f.curve is not g.curve:
        raise ValueError("functions live on different curves")
    quotient: dict[Monomial, int] = {}
    f2 = _reduce(f, ((g, (0, 0)),), quotient)
    if not in_remainder_space(f2, g):
        f2 = _reduce(f2, _completed_basis(g), quotient)
    if not in_remainder_space(f2, g):
        raise GroebnerAssertionFailure(f"remainder escaped R(g): {f2}")
    deg_f, deg_r = f.weighted_degree, f2.weighted_degree
    if deg_r is not None and (deg_f is None or deg_r > deg_f):
        raise GroebnerAssertionFailure("remainder has larger weighted degree than dividend")
    return CurveFunction(f.curve, quotient), f2


@lru_cache(maxsize=256)
def goppa_power(g: CurveFunction, q: int, i: int) -> CurveFunction:
    """g^(q^i - q^(i-1) + 1), cached per (g, q, i)."""
    if i < 1:
        raise ValueError("i must be at least 1")
    return g ** (q**i - q ** (i - 1) + 1)


def trace_reduce(f: CurveFunction, g: CurveFunction, q: int, i: int) -> CurveFunction:
    """Iterated division: returns f' in R(g^(q^i-q^(i-1)+1)) such that
    Tr(f / g^(q^i+1)) = Tr(f' / g^(q^i+1)) pointwise.

    ``f`` must lie in L((s'(q^i+1) - 1) P_inf) where s' = deg g.
    """
    sp = g.weighted_degree
    if f and f.weighted_degree >= sp * (q**i + 1):
        raise ValueError("f has too large a weighted degree for the trace reduction")
    G = goppa_power(g, q, i)
    d = f.field.p
    frob_k = 0
    while d ** frob_k != q:
        frob_k += 1
    acc = CurveFunction.zero(f.curve)
    cur = f
    limit = (f.weighted_degree or 0) + 1
    for _ in range(limit + 1):
        if not cur:
            return acc
        f1, f2 = weighted_divide(cur, G)
        acc = acc + f2
        if not f1:
            return acc
        nxt = f1.frobenius_power(frob_k) * g
        if nxt.weighted_degree >= cur.weighted_degree:
            raise GroebnerAssertionFailure("weighted degree failed to decrease")
        cur = nxt
    raise GroebnerAssertionFailure("iterated division did not terminate")


def random_function(curve: CabCurve, s: int, rng: np.random.Generator) -> CurveFunction:
    """Uniform element of L(s P_inf)."""
    monos = monomial_basis(curve, s)
    coeffs = curve.ctx.ext.random(rng, len(monos))
    return CurveFunction(curve, dict(zip(monos, coeffs.tolist())), normalized=True)


def function_from_terms(curve: CabCurve, terms: Iterable[tuple[int, int, int]]) -> CurveFunction:
    return CurveFunction(curve, {(u, v): c for u, v, c in terms})
