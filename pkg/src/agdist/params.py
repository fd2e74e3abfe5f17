"""McEliece-style parameter rows: Prange work factor, key sizes, Hermitian
rows and the elliptic largest-distinguishable search."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, log2
from typing import Callable

from . import bounds
from .errors import HypothesisNotMet, InfeasibleWeight, PreconditionViolated

GaussModel = Callable[[int, int, int], int]


def gauss_cost(n: int, k: int, q: int) -> int:
    """Default Gauss-Jordan cost model n(n-k)."""
    return n * (n - k)


def _log2_fraction(x: Fraction) -> float:
    # split off powers of two so huge binomials never overflow a float
    num, den = x.numerator, x.denominator
    shift = num.bit_length() - den.bit_length()
    scaled = Fraction(num, den) / Fraction(2) ** shift
    return shift + log2(scaled)


def prange_bits(n: int, k: int, t: int, q: int, gauss: GaussModel = gauss_cost) -> Fraction:
    """log2( C(n,t) / C(n-k,t) * C_Gauss(n,k,q) ), rounded to 0.1 bit."""
    if t < 0 or t > n - k:
        raise InfeasibleWeight(f"t={t} exceeds n-k={n - k}")
    ratio = Fraction(comb(n, t), comb(n - k, t)) * gauss(n, k, q)
    return Fraction(round(_log2_fraction(ratio) * 10), 10)


def key_size_bits(n: int, k: int, q: int, rounding: str = "floor") -> int:
    if not 0 < k < n:
        raise PreconditionViolated("need 0 < k < n")
    if rounding == "floor":
        bits = q.bit_length() - 1
    elif rounding == "ceil":
        bits = (q - 1).bit_length()
    else:
        raise ValueError("rounding must be 'floor' or 'ceil'")
    return k * (n - k) * bits


@dataclass
class ParamRow:
    q: int
    m: int
    s: int
    n: int
    k: int
    t: int
    t_designed: int
    prange_bits: Fraction
    key_size_bits: int
    key_size_bits_ceil: int
    resists_distinguisher: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["prange_bits"] = float(self.prange_bits)
        return d


HERMITIAN_REFERENCE_ROWS = [(11, 265, 1320), (13, 312, 2188), (16, 354, 4078),
                        (13, 490, 2189), (16, 460, 4080)]

ELLIPTIC_REFERENCE_ROWS = [(2, 12, 4218), (2, 13, 6688), (3, 7, 2186), (3, 8, 6393),
                       (5, 5, 3043), (5, 6, 4500), (5, 6, 6688), (7, 4, 2395),
                       (7, 5, 4650), (7, 5, 8192), (17, 3, 4820)]

# published largest distinguishable s, kept for comparison only
ELLIPTIC_PUBLISHED_SMAX = [14, 18, 15, 24, 27, 22, 30, 27, 26, 37, 92]


def hermitian_genus(q0: int) -> int:
    return q0 * (q0 - 1) // 2


def hermitian_row(q0: int, s: int, n: int, gauss: GaussModel = gauss_cost) -> ParamRow:
    """Goppa-like code on y^q0 + y = x^(q0+1) over F_{q0^2}, viewed over F_q0 (m = 2)."""
    g = hermitian_genus(q0)
    if not (2 * g - 1 <= s < n <= q0**3 - 1):
        raise PreconditionViolated(f"need 2g-1 <= s < n <= q0^3-1 (g={g})")
    m = 2
    k = n - m * (s + 1 - g)
    if k <= 0:
        raise PreconditionViolated(f"dimension {k} is not positive")
    t = (s - 2 * g - 1) // 2
    t_designed = (s - 2 * g + 1) // 2
    sprime = s + 1
    k_ag = s + 1 - g
    met = bounds.hypothesis_met(q0, s, sprime, g)
    resists = not bounds.distinguishable(q0, m, k_ag, sprime, n) if met else True
    return ParamRow(q=q0, m=m, s=s, n=n, k=k, t=t, t_designed=t_designed,
                    prange_bits=prange_bits(n, k, t, q0, gauss),
                    key_size_bits=key_size_bits(n, k, q0, "floor"),
                    key_size_bits_ceil=key_size_bits(n, k, q0, "ceil"),
                    resists_distinguisher=resists)


def elliptic_max_distinguishable_s(q: int, m: int, n: int) -> tuple[int | None, Fraction]:
    """Largest s (with s' = s+1, k = s) that the one-point bound distinguishes."""
    Q = q**m
    dev = n - (Q - 1)
    if dev > 0 and dev * dev > 4 * Q:
        raise PreconditionViolated(f"n={n} exceeds the genus-1 Hasse-Weil bound")
    best = None
    for s in range(q + 1, n // m + 1):
        if bounds.distinguishable(q, m, s, s + 1, n, bounds.hypothesis_met(q, s, s + 1, 1)):
            best = s
    rate = Fraction(n - m * best, n) if best is not None else Fraction(0)
    return best, rate


def hermitian_field(q0: int, m: int) -> int:
    """q with q^(m/2) = q0."""
    if m < 2 or m % 2:
        raise PreconditionViolated("m must be even")
    half = m // 2
    q = 2
    while q**half < q0:
        q += 1
    if q**half == q0:
        return q
    raise PreconditionViolated(f"{q0} is not a {half}-th power")


def hermitian_B(q: int, m: int, k: int, sprime: int, e: int) -> int:
    """m s' (q^e - q^(e-1) + 1) + (m/2 - e) m k^2."""
    return m * sprime * bounds.frob_exponent(q, e) + (m // 2 - e) * m * k * k


def hermitian_resists(q0: int, m: int, s: int, sprime: int) -> bool:
    q = hermitian_field(q0, m)
    g = hermitian_genus(q0)
    if not bounds.hypothesis_met(q, s, sprime, g):
        raise HypothesisNotMet(f"s={s} < (s'-s)q + 2g - 1")
    k = s + 1 - g
    e = bounds.e_star(q, m, k, sprime)
    ok = hermitian_B(q, m, k, sprime, e) >= q0**3 - 1
    if not ok:
        raise AssertionError(f"resistance inequality fails at q0={q0}, m={m}, s={s}, s'={sprime}")
    return ok


def hermitian_sweep_grid() -> list[tuple[int, int, int, int]]:
    """(q0, m, s, s') over q0 in {2,3,4,5,8,9,11,13,16}, every admissible even m,
    s' = s+1 and s up to 3 q0^2."""
    grid = []
    for q0 in (2, 3, 4, 5, 8, 9, 11, 13, 16):
        g = hermitian_genus(q0)
        for m in range(2, 2 * q0.bit_length() + 1, 2):
            try:
                q = hermitian_field(q0, m)
            except PreconditionViolated:
                continue
            for s in range(max(0, q + 2 * g - 1), 3 * q0 * q0 + 1):
                grid.append((q0, m, s, s + 1))
    return grid
