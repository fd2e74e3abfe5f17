"""Dense univariate polynomials over a finite field.

Polynomials are lists of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  ``F`` is any object exposing
the scalar operations ``sadd``, ``ssub``, ``smul`` and ``sinv``.
"""

from __future__ import annotations


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def add(F, f: list[int], g: list[int]) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.sadd(out[i], c)
    return trim(out)


def sub(F, f: list[int], g: list[int]) -> list[int]:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = F.ssub(out[i], c)
    return trim(out)


def mul(F, f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.sadd(out[i + j], F.smul(a, b))
    return trim(out)


def divmod_(F, f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lc = F.sinv(g[-1])
    quo = [0] * max(0, len(r) - dg)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = F.smul(r[-1], inv_lc)
        quo[shift] = c
        for j, b in enumerate(g):
            r[shift + j] = F.ssub(r[shift + j], F.smul(c, b))
        trim(r)
    return trim(quo), r


def mod(F, f: list[int], g: list[int]) -> list[int]:
    return divmod_(F, f, g)[1]


def powmod(F, f: list[int], e: int, m: list[int]) -> list[int]:
    result = [1]
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return result


def monic(F, f: list[int]) -> list[int]:
    if not f:
        return f
    inv = F.sinv(f[-1])
    return [F.smul(c, inv) for c in f]


def gcd(F, f: list[int], g: list[int]) -> list[int]:
    f, g = trim(list(f)), trim(list(g))
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def inverse_mod(F, f: list[int], m: list[int]) -> list[int]:
    """Inverse of ``f`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = list(m), mod(F, f, m)
    s0, s1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("polynomial is not invertible modulo m")
    c = F.sinv(r0[0])
    return trim([F.smul(x, c) for x in s0])


def evaluate(F, f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.sadd(F.smul(acc, x), c)
    return acc


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f: list[int]) -> bool:
    """Rabin's test for a monic ``f`` over the field ``F`` of order ``F.order``."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.order
    x = [0, 1]

    def frob_iter(k: int) -> list[int]:
        h = x
        for _ in range(k):
            h = powmod(F, h, q, f)
        return h

    if frob_iter(n) != mod(F, x, f):
        return False
    for r in prime_factors(n):
        h = sub(F, frob_iter(n // r), x)
        if len(gcd(F, h, f)) != 1:
            return False
    return True
