"""Finite fields F_p, F_q = F_{p^d} and F_{q^m}, built as a tower.

Elements are encoded as integers.  An element of F_{p^k} written
``sum(e_l * gamma**l)`` over F_p is stored as ``sum(e_l * p**l)``; the same rule
applied one level up means an element ``sum(c_j * beta**j)`` of F_{q^m} with
F_q-coordinates ``c_j`` is stored as ``sum(c_j * q**j)``.  The embedded copy of
F_q is therefore exactly the integers below ``q``.

Arithmetic uses exp/log tables, so field orders are capped at 2**16.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _poly
from .errors import FieldError

MAX_ORDER = 1 << 16
_ADD_TABLE_LIMIT = 1024

# Primitive moduli, low degree first.  Keys are (p, d, m) for the top level of
# the tower, (p, d) for the base field F_q over F_p.
DEFAULT_MODULI_Q: dict[tuple[int, int], list[int]] = {
    (2, 2): [1, 1, 1],
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (3, 2): [2, 1, 1],
    (5, 2): [2, 1, 1],
}


def _is_prime(n: int) -> bool:
    return n >= 2 and _poly.prime_factors(n) == [n]


class GF:
    """A finite field of order ``p**k`` with integer-encoded elements.

    Array methods (``add``, ``mul``, ...) accept numpy arrays or ints; the
    ``s``-prefixed methods are plain-Python scalar versions used by the
    polynomial code.
    """

    def __init__(self, p: int, k: int, exp: list[int] | None, modulus: list[int] | None = None,
                 subfield: GF | None = None):
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = modulus
        self.subfield = subfield
        Q = self.order
        self.is_prime = k == 1
        if exp is None:  # prime field: find a primitive root
            g = next(c for c in range(1, p) if _mult_order_mod(c, p) == p - 1) if p > 2 else 1
            exp, x = [], 1
            for _ in range(p - 1):
                exp.append(x)
                x = x * g % p
        self.generator = exp[1] if Q > 2 else 1
        # exp has a zero tail so that log(0) = 2Q lands on zeros for any sum
        zero_log = 2 * Q
        exp_full = exp * 2 + [0] * (2 * Q + 4)
        log = [zero_log] * Q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp_l = exp_full
        self._log_l = log
        self._exp = np.array(exp_full, dtype=np.int64)
        self._log = np.array(log, dtype=np.int64)
        digits = np.array([_digits(v, p, k) for v in range(Q)], dtype=np.int64).reshape(Q, k)
        neg = (((-digits) % p) * (p ** np.arange(k))).sum(axis=1)
        self._neg = neg.astype(np.int64)
        self._neg_l = self._neg.tolist()
        self._add_tab = None
        if p != 2 and not self.is_prime and Q <= _ADD_TABLE_LIMIT:
            s = (digits[:, None, :] + digits[None, :, :]) % p
            self._add_tab = (s * (p ** np.arange(k))).sum(axis=2).astype(np.int64)
            self._add_tab_l = self._add_tab.tolist()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    # ---- vectorized -------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_tab is not None:
            return self._add_tab[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.k):
            out += ((a // pw + b // pw) % self.p) * pw
            pw *= self.p
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        if self.is_prime:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime:
            return (a * b) % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        res = self._exp[(self._log[a] % (2 * self.order) * e) % (self.order - 1)]
        return np.where(a == 0, 0, res)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        if self.is_prime and A.shape[1] * (self.p - 1) ** 2 < 2**52:
            prod = A.astype(np.float64) @ B.astype(np.float64)
            return (prod % self.p).astype(np.int64)
        if self.is_prime:
            return (A.astype(object) @ B.astype(object) % self.p).astype(np.int64)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            col = A[:, j : j + 1]
            if col.any():
                out = self.add(out, self.mul(col, B[j : j + 1, :]))
        return out

    # ---- scalar -----------------------------------------------------
    def sadd(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_tab is not None:
            return self._add_tab_l[a][b]
        return int(self.add(a, b))

    def sneg(self, a: int) -> int:
        return (-a) % self.p if self.is_prime else self._neg_l[a]

    def ssub(self, a: int, b: int) -> int:
        if self.is_prime:
            return (a - b) % self.p
        return self.sadd(a, self._neg_l[b])

    def smul(self, a: int, b: int) -> int:
        if self.is_prime:
            return a * b % self.p
        return self._exp_l[self._log_l[a] + self._log_l[b]]

    def sinv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp_l[(self.order - 1 - self._log_l[a]) % (self.order - 1)]

    def spow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp_l[(self._log_l[a] * e) % (self.order - 1)]

    def from_int(self, c: int) -> int:
        """Image of the integer ``c`` under Z -> F_p -> this field."""
        return c % self.p

    def random(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.order, size=size, dtype=np.int64)


def _mult_order_mod(c: int, p: int) -> int:
    x, k = c % p, 1
    while x != 1:
        x = x * c % p
        k += 1
    return k


def _digits(v: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(v % base)
        v //= base
    return out


def prime_field(p: int) -> GF:
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    return GF(p, 1, None)


def extension_field(sub: GF, modulus: Sequence[int]) -> GF:
    """Build sub[x]/(modulus); ``modulus`` is monic, low degree first."""
    mod = [int(c) for c in modulus]
    if any(not 0 <= c < sub.order for c in mod):
        raise FieldError(f"modulus coefficients must lie in [0, {sub.order})")
    if len(mod) < 2 or mod[-1] != 1:
        raise FieldError("modulus must be monic of degree >= 1")
    deg = len(mod) - 1
    Q = sub.order**deg
    if Q > MAX_ORDER:
        raise FieldError(f"field order {Q} exceeds the table limit {MAX_ORDER}")
    if not _poly.is_irreducible(sub, mod):
        raise FieldError(f"modulus {mod} is not irreducible over GF({sub.order})")

    qs = sub.order

    def enc(f: list[int]) -> int:
        return sum(c * qs**j for j, c in enumerate(f))

    def dec(v: int) -> list[int]:
        return _poly.trim(_digits(v, qs, deg))

    def slow_mul(u: int, v: int) -> int:
        return enc(_poly.mod(sub, _poly.mul(sub, dec(u), dec(v)), mod))

    def slow_pow(u: int, e: int) -> int:
        return enc(_poly.powmod(sub, dec(u), e, mod))

    factors = _poly.prime_factors(Q - 1)

    def is_primitive(c: int) -> bool:
        return c != 0 and all(slow_pow(c, (Q - 1) // r) != 1 for r in factors)

    x_code = qs if deg > 1 else None
    candidates = ([x_code] if x_code is not None else []) + list(range(1, Q))
    gen = next(c for c in candidates if is_primitive(c))
    exp = []
    cur = [1]
    if gen == x_code:
        # multiplication by x is a shift followed by one reduction step
        for _ in range(Q - 1):
            exp.append(enc(cur))
            nxt = [0] + cur + [0] * (deg - len(cur))
            top = nxt[deg] if len(nxt) > deg else 0
            nxt = nxt[:deg]
            if top:
                for j in range(deg):
                    nxt[j] = sub.ssub(nxt[j], sub.smul(top, mod[j]))
            cur = _poly.trim(nxt)
    else:
        v = 1
        for _ in range(Q - 1):
            exp.append(v)
            v = slow_mul(v, gen)
    return GF(sub.p, sub.k * deg, exp, modulus=mod, subfield=sub)


def find_primitive_modulus(sub: GF, deg: int) -> list[int]:
    """Lexicographically first monic primitive polynomial of degree ``deg``."""
    qs = sub.order
    for code in range(qs**deg):
        low = _digits(code, qs, deg)
        f = low + [1]
        if low[0] == 0 or not _poly.is_irreducible(sub, f):
            continue
        if deg == 1 or extension_field(sub, f).generator == qs:
            return f
    raise FieldError("no primitive polynomial found")


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The tower F_p ⊂ F_q ⊂ F_{q^m} with fixed moduli.

    ``modulus_q`` has coefficients in F_p; ``modulus_qm`` has coefficients in
    F_q (encoded as integers below q).  Both default to a deterministic
    primitive polynomial.
    """

    p: int
    d: int = 1
    m: int = 1
    modulus_q: tuple[int, ...] | None = None
    modulus_qm: tuple[int, ...] | None = None
    prime: GF = field(init=False, repr=False)
    base: GF = field(init=False, repr=False)
    ext: GF = field(init=False, repr=False)

    def __post_init__(self):
        if self.d < 1 or self.m < 1:
            raise FieldError("d and m must be positive")
        prime = prime_field(self.p)
        if self.d == 1:
            base = prime
            mq = None
        else:
            mq = self.modulus_q or default_modulus_q(self.p, self.d)
            base = extension_field(prime, mq)
        if self.m == 1:
            ext = base
            mqm = None
        else:
            mqm = self.modulus_qm or default_modulus_qm(self.p, self.d, self.m)
            ext = extension_field(base, mqm)
        object.__setattr__(self, "modulus_q", tuple(mq) if mq else None)
        object.__setattr__(self, "modulus_qm", tuple(mqm) if mqm else None)
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "ext", ext)

    @property
    def q(self) -> int:
        return self.p**self.d

    @property
    def order(self) -> int:
        return self.ext.order

    @property
    def basis(self) -> list[int]:
        """Polynomial F_q-basis 1, beta, ..., beta^(m-1) of F_{q^m}."""
        return [self.q**j for j in range(self.m)]

    @cached_property
    def frobenius_table(self) -> np.ndarray:
        return self.ext.power(np.arange(self.order), self.q)

    @cached_property
    def trace_table(self) -> np.ndarray:
        x = np.arange(self.order, dtype=np.int64)
        acc = x.copy()
        cur = x
        for _ in range(self.m - 1):
            cur = self.frobenius_table[cur]
            acc = self.ext.add(acc, cur)
        if np.any(acc >= self.q):
            raise FieldError("trace escaped the base field; moduli are inconsistent")
        return acc

    def frobenius(self, x, i: int = 1):
        """x -> x^(q^i), elementwise."""
        x = np.asarray(x, dtype=np.int64)
        for _ in range(i % self.m):
            x = self.frobenius_table[x]
        return x

    def trace(self, x):
        return self.trace_table[np.asarray(x, dtype=np.int64)]

    def coords(self, x) -> np.ndarray:
        """F_q-coordinates in the polynomial basis; shape ``x.shape + (m,)``."""
        x = np.asarray(x, dtype=np.int64)
        q = self.q
        return np.stack([(x // q**j) % q for j in range(self.m)], axis=-1)

    def from_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        return (c * (self.q ** np.arange(self.m))).sum(axis=-1)

    def in_subfield(self, x) -> np.ndarray:
        return np.asarray(x) < self.q

    def element(self, value: int) -> Elt:
        return Elt(int(value), self)

    def describe(self) -> dict:
        out = {"p": self.p, "d": self.d, "m": self.m}
        if self.modulus_q:
            out["modulus_q"] = list(self.modulus_q)
        if self.modulus_qm:
            out["modulus_qm"] = list(self.modulus_qm)
        return out


@dataclass(frozen=True)
class Elt:
    """A scalar of F_{q^m} with operator support, for interactive use."""

    value: int
    ctx: FieldCtx = field(compare=False, repr=False)

    def _wrap(self, v) -> Elt:
        return Elt(int(v), self.ctx)

    def _val(self, other) -> int:
        if isinstance(other, Elt):
            return other.value
        return self.ctx.ext.from_int(int(other))

    def __add__(self, other):
        return self._wrap(self.ctx.ext.sadd(self.value, self._val(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.ctx.ext.ssub(self.value, self._val(other)))

    def __rsub__(self, other):
        return self._wrap(self.ctx.ext.ssub(self._val(other), self.value))

    def __neg__(self):
        return self._wrap(self.ctx.ext.sneg(self.value))

    def __mul__(self, other):
        return self._wrap(self.ctx.ext.smul(self.value, self._val(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.ctx.ext.smul(self.value, self.ctx.ext.sinv(self._val(other))))

    def __pow__(self, e: int):
        if e < 0:
            return self._wrap(self.ctx.ext.spow(self.ctx.ext.sinv(self.value), -e))
        return self._wrap(self.ctx.ext.spow(self.value, e))

    def inverse(self) -> Elt:
        return self._wrap(self.ctx.ext.sinv(self.value))

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.ctx.coords(self.value))

    @property
    def coords_p(self) -> tuple[tuple[int, ...], ...]:
        """Coordinates as length-d vectors over F_p."""
        return tuple(tuple(_digits(c, self.ctx.p, self.ctx.d)) for c in self.coords)

    def is_zero(self) -> bool:
        return self.value == 0


def trace_to_base(x: Elt) -> Elt:
    t = int(x.ctx.trace(x.value))
    assert t < x.ctx.q
    return Elt(t, x.ctx)


def frobenius(x: Elt, i: int) -> Elt:
    if i < 0:
        raise ValueError("i must be non-negative")
    return Elt(int(x.ctx.frobenius(x.value, i)), x.ctx)


def coords_over_subfield(x: Elt) -> tuple[int, ...]:
    return x.coords


def from_subfield_coords(ctx: FieldCtx, coords: Sequence[int]) -> Elt:
    return Elt(int(ctx.from_coords(coords)), ctx)


def default_modulus_q(p: int, d: int) -> list[int]:
    if (p, d) in DEFAULT_MODULI_Q:
        return DEFAULT_MODULI_Q[(p, d)]
    return find_primitive_modulus(prime_field(p), d)


def default_modulus_qm(p: int, d: int, m: int) -> list[int]:
    if (p, d, m) in DEFAULT_MODULI_QM:
        return DEFAULT_MODULI_QM[(p, d, m)]
    base = prime_field(p) if d == 1 else extension_field(prime_field(p), default_modulus_q(p, d))
    return find_primitive_modulus(base, m)


DEFAULT_MODULI_QM: dict[tuple[int, int, int], list[int]] = {
    (2, 1, 2): [1, 1, 1],
    (2, 1, 3): [1, 1, 0, 1],
    (2, 1, 4): [1, 1, 0, 0, 1],
    (2, 1, 5): [1, 0, 1, 0, 0, 1],
    (2, 1, 6): [1, 1, 0, 0, 0, 0, 1],
    (2, 1, 7): [1, 1, 0, 0, 0, 0, 0, 1],
    (2, 1, 8): [1, 0, 1, 1, 1, 0, 0, 0, 1],
    (2, 1, 9): [1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    (2, 1, 10): [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    (2, 1, 11): [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    (2, 1, 12): [1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1],
    (2, 1, 13): [1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    (2, 1, 14): [1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    (2, 1, 15): [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    (2, 1, 16): [1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    (2, 2, 2): [2, 1, 1],
    (2, 2, 4): [3, 2, 1, 0, 1],
    (2, 3, 2): [3, 1, 1],
    (2, 4, 2): [9, 1, 1],
    (2, 4, 4): [4, 2, 1, 0, 1],
    (3, 1, 2): [2, 1, 1],
    (3, 1, 3): [1, 2, 0, 1],
    (3, 1, 4): [2, 1, 0, 0, 1],
    (3, 1, 5): [1, 2, 0, 0, 0, 1],
    (3, 1, 6): [2, 1, 0, 0, 0, 0, 1],
    (3, 1, 7): [1, 2, 1, 0, 0, 0, 0, 1],
    (3, 1, 8): [2, 0, 0, 1, 0, 0, 0, 0, 1],
    (3, 1, 9): [1, 0, 1, 2, 0, 0, 0, 0, 0, 1],
    (3, 1, 10): [2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    (3, 2, 2): [4, 1, 1],
    (5, 1, 2): [2, 1, 1],
    (5, 1, 3): [2, 3, 0, 1],
    (5, 1, 4): [2, 2, 1, 0, 1],
    (5, 1, 5): [2, 4, 0, 0, 0, 1],
    (5, 1, 6): [2, 1, 0, 0, 0, 0, 1],
    (7, 1, 2): [3, 1, 1],
    (7, 1, 3): [2, 3, 0, 1],
    (7, 1, 4): [5, 3, 1, 0, 1],
    (7, 1, 5): [4, 1, 0, 0, 0, 1],
    (11, 1, 2): [7, 1, 1],
    (13, 1, 2): [2, 1, 1],
    (17, 1, 3): [3, 1, 0, 1],
}
