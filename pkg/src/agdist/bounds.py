"""Upper bounds on the dimension of the square of a Goppa-like dual code.

Everything here is exact integer / rational arithmetic; logarithms are taken
by comparing powers.  The measured side (T_i spaces) lives at the bottom and
needs a built :class:`~agdist.goppa.GoppaLikeInstance`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

from .errors import CaseClassificationMismatch, HypothesisNotMet, NonIntegerResult


# ---- integer logarithms -------------------------------------------------

def floor_log(q: int, r) -> int:
    """Largest t with q**t <= r, for rational r > 0."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("logarithm of a non-positive number")
    t = 0
    if r >= 1:
        while Fraction(q) ** (t + 1) <= r:
            t += 1
    else:
        while Fraction(q) ** t > r:
            t -= 1
    return t


def ceil_log(q: int, r) -> int:
    """Smallest t with q**t >= r, for rational r > 0."""
    r = Fraction(r)
    t = floor_log(q, r)
    return t if Fraction(q) ** t == r else t + 1


def _half_m_times(m: int, inner) -> int:
    val = Fraction(m, 2) * inner
    if val.denominator != 1:
        raise NonIntegerResult(f"{val} is not an integer")
    return int(val)


def frob_exponent(q: int, i: int) -> int:
    """N_i = q^i - q^(i-1) + 1 (i >= 1)."""
    return q**i - q ** (i - 1) + 1


# ---- closed-form bounds -------------------------------------------------

def generic_bound(m: int, k: int, s: int) -> int:
    return comb(m * k + 1, 2) - _half_m_times(m, k * (k - 1) - 2 * s)


def goppa_like_e(q: int, m: int, k: int, s: int) -> int:
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    return max(0, min(m // 2, floor_log(q, Fraction(k * k, s))))


def goppa_like_value(q: int, m: int, k: int, s: int, e: int) -> int:
    geom = (q ** (e + 1) - 1) // (q - 1)
    return comb(m * k + 1, 2) - _half_m_times(m, k * (k - 1) * (2 * e + 1) - 2 * s * geom)


def goppa_like_bound(q: int, m: int, k: int, s: int) -> tuple[int, int]:
    e = goppa_like_e(q, m, k, s)
    return e, goppa_like_value(q, m, k, s, e)


def leading_exponents(i: int, sprime: int, a: int, b: int, alpha: int, beta: int,
                      q: int) -> tuple[int, int]:
    """Leading exponents (alpha_i, beta_i) of g^(q^i - q^(i-1) + 1)."""
    if a * beta + b * alpha != sprime or not 0 <= alpha < a:
        raise ValueError("(alpha, beta) does not match s'")
    N = frob_exponent(q, i)
    alpha_i = (alpha * N) % a
    num = sprime * N - b * alpha_i
    if num % a:
        raise NonIntegerResult("beta_i is not an integer")
    return alpha_i, num // a


def split_degree(sprime: int, a: int, b: int) -> tuple[int, int]:
    """The unique (alpha, beta) with alpha < a, a*beta + b*alpha = s'; raises
    ValueError when s' is a gap of the semigroup <a, b>."""
    alpha = (sprime * pow(b, -1, a)) % a if a > 1 else 0
    rest = sprime - b * alpha
    if rest < 0:
        raise ValueError(f"{sprime} is not a non-negative combination of {a} and {b}")
    return alpha, rest // a


def _ell(S: int, a: int, b: int, v: int) -> int:
    """Number of u >= 0 with a*u + b*v <= S (i.e. l_v + 1, clamped at 0)."""
    return max(0, (S - b * v) // a + 1) if S - b * v >= 0 else 0


def m_i_exact(q: int, i: int, s: int, a: int, b: int, alpha_i: int, beta_i: int) -> int:
    S = s * (q**i + 1)
    return (sum(min(beta_i + b, _ell(S, a, b, v)) for v in range(alpha_i))
            + sum(min(beta_i, _ell(S, a, b, v)) for v in range(alpha_i, a)))


def m_i_brute(q: int, i: int, s: int, a: int, b: int, alpha_i: int, beta_i: int) -> int:
    """Count monomials lying in both R(g^N) and L(s(q^i+1) P_inf)."""
    S = s * (q**i + 1)
    count = 0
    for v in range(a):
        for u in range(beta_i + b):
            if u >= beta_i and v >= alpha_i:
                continue
            if a * u + b * v <= S:
                count += 1
    return count


def m_i_case(q: int, i: int, s: int, a: int, b: int, alpha_i: int,
             beta_i: int) -> tuple[int, int | None, int]:
    """Case classification (1-4), the witness v* and the closed-form value.

    The closed forms for cases 3 and 4 count ``l_v + 1`` monomials on the
    truncated rows and ``beta_i`` (resp. ``beta_i + b``) on the full ones.
    """
    S = s * (q**i + 1)
    X = a * beta_i + b * alpha_i
    genus = (a - 1) * (b - 1) // 2

    def F(v):
        return S + a - b * (a + v - alpha_i)

    def G(v):
        return S + a - b * (v - alpha_i)

    ell = lambda v: _ell(S, a, b, v)  # noqa: E731
    if X > G(alpha_i):
        return 1, None, sum(ell(v) for v in range(a))
    if X <= S + 1 - 2 * genus:
        return 2, None, X
    for v in range(1, alpha_i):
        if F(v) < X <= F(v - 1):
            val = v * (beta_i + b) + sum(ell(w) for w in range(v, alpha_i)) + (a - alpha_i) * beta_i
            return 3, v, val
    for v in range(alpha_i + 1, a + 1):
        if G(v) < X <= G(v - 1):
            val = (sum(ell(w) for w in range(alpha_i)) + (v - alpha_i) * beta_i
                   + sum(ell(w) for w in range(v, a)))
            return 4, v, val
    raise CaseClassificationMismatch(f"no case applies (X={X}, S={S})")


def m_i_printed_closed_form(q: int, i: int, s: int, a: int, b: int, alpha_i: int,
                          beta_i: int) -> int:
    """The case-3/4 closed forms exactly as printed, kept for comparison only."""
    S = s * (q**i + 1)
    case, v, val = m_i_case(q, i, s, a, b, alpha_i, beta_i)
    if case in (1, 2):
        # both are set equalities (M_i = L(...) resp. R(...)); nothing to compare
        return val
    tail = sum((S - b * w) // a for w in range(v, a))
    if case == 3:
        return tail + v * (beta_i + b) + a - v
    return tail + v * beta_i + alpha_i * b + a - v


def m_i_dimension(q: int, i: int, s: int, sprime: int, a: int, b: int,
                  alpha: int | None = None, beta: int | None = None) -> int:
    """dim M_i(s, g) = dim R(g^N) ∩ L(s(q^i+1) P_inf), N = q^i - q^(i-1) + 1."""
    if i < 1:
        raise ValueError("i must be at least 1")
    if alpha is None or beta is None:
        alpha, beta = split_degree(sprime, a, b)
    alpha_i, beta_i = leading_exponents(i, sprime, a, b, alpha, beta, q)
    exact = m_i_exact(q, i, s, a, b, alpha_i, beta_i)
    _, _, closed = m_i_case(q, i, s, a, b, alpha_i, beta_i)
    if closed != exact:
        raise CaseClassificationMismatch(f"closed form {closed} != direct sum {exact}")
    return exact


def i_star(q: int, m: int, s: int, sprime: int, genus: int) -> int | None:
    if not sprime > s >= 0:
        raise ValueError("need s' > s >= 0")
    for i in range(max(0, m // 2)):
        if s * q**i >= (sprime - s) * (q ** (i + 1) - q**i + 1) + 2 * genus - 1:
            return i
    return None


def hypothesis_met(q: int, s: int, sprime: int, genus: int) -> bool:
    return s >= (sprime - s) * q + 2 * genus - 1


def e_star(q: int, m: int, k: int, sprime: int) -> int:
    """min(floor(m/2), ceil log_q(k^2 / (s'(q-1)^2)) + 1), clamped to >= 1."""
    c = ceil_log(q, Fraction(k * k, sprime * (q - 1) ** 2)) if k else 0
    return max(1, min(m // 2, c + 1))


def distinguisher_objective(q: int, m: int, k: int, sprime: int, e: int) -> int:
    """(m/2)(2 s' N_e + k^2 (m - 1 - 2e)), the quantity minimised over e."""
    return _half_m_times(m, 2 * sprime * frob_exponent(q, e) + k * k * (m - 1 - 2 * e))


def valid_objective(q: int, m: int, k: int, sprime: int, e: int) -> int:
    """As :func:`distinguisher_objective`, except at e = m/2 (m even) where the
    chain stops and only the m s' N_e term survives."""
    if m % 2 == 0 and e == m // 2:
        return m * sprime * frob_exponent(q, e)
    return distinguisher_objective(q, m, k, sprime, e)


def one_point_bound(q: int, m: int, k: int, s: int, sprime: int,
                    genus: int) -> tuple[int, int]:
    if not hypothesis_met(q, s, sprime, genus):
        raise HypothesisNotMet(f"s={s} < (s'-s)q + 2g - 1 = {(sprime - s) * q + 2 * genus - 1}")
    e = e_star(q, m, k, sprime)
    return e, valid_objective(q, m, k, sprime, e)


def best_objective(q: int, m: int, k: int, sprime: int) -> tuple[int, int]:
    """(e, value) minimising the valid objective over e in 1..floor(m/2)."""
    es = range(1, max(1, m // 2) + 1)
    vals = {e: valid_objective(q, m, k, sprime, e) for e in es}
    e = min(vals, key=lambda x: (vals[x], x))
    return e, vals[e]


def distinguishable(q: int, m: int, k: int, sprime: int, n: int,
                    genus_hypothesis_met: bool = True) -> bool:
    if not genus_hypothesis_met:
        raise HypothesisNotMet("the one-point bound does not apply")
    es = range(1, max(1, m // 2) + 1)
    printed = [distinguisher_objective(q, m, k, sprime, e) for e in es]
    e = e_star(q, m, k, sprime)
    if distinguisher_objective(q, m, k, sprime, e) != min(printed):
        raise AssertionError("closed-form e* does not minimise the objective")
    return best_objective(q, m, k, sprime)[1] < n


# ---- report --------------------------------------------------------------

@dataclass
class BoundReport:
    q: int
    m: int
    n: int
    s: int
    sprime: int
    genus: int
    k: int
    e: int
    e_star: int
    i_star: int | None
    generic_bound: int
    goppa_like_bound: int
    one_point_bound: int | None
    hypothesis_met: bool
    distinguishable: bool | None
    warnings: list[str] = field(default_factory=list)
    dims: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(q: int, m: int, n: int, s: int, sprime: int, genus: int) -> BoundReport:
    k = s + 1 - genus
    e, gl = goppa_like_bound(q, m, k, s)
    met = hypothesis_met(q, s, sprime, genus)
    warnings = []
    if met:
        es, op = one_point_bound(q, m, k, s, sprime, genus)
        dist = distinguishable(q, m, k, sprime, n)
    else:
        es, op, dist = e_star(q, m, k, sprime), None, None
        warnings.append("HypothesisNotMet: s < (s'-s)q + 2g - 1; one-point bound not applicable")
    return BoundReport(q=q, m=m, n=n, s=s, sprime=sprime, genus=genus, k=k, e=e, e_star=es,
                       i_star=i_star(q, m, s, sprime, genus),
                       generic_bound=generic_bound(m, k, s), goppa_like_bound=gl,
                       one_point_bound=op, hypothesis_met=met, distinguishable=dist,
                       warnings=warnings)


# ---- measured T_i spaces -------------------------------------------------

def t_i_dimensions(inst, i_max: int | None = None, *, with_products: bool = True) -> dict:
    """Measured dims of T_0..T_{i_max}, their cumulative sums and, optionally,
    of Tr(C * C^{q^i}).  Also reports chain inclusions T_i ⊆ T_{i+1}."""
    from . import lincode

    ctx = inst.ctx
    m = ctx.m
    if i_max is None:
        i_max = m // 2
    spaces = [inst.t_space(i) for i in range(i_max + 1)]
    dims = [T.dim for T in spaces]
    cumulative, acc = [], None
    for T in spaces:
        acc = T if acc is None else acc + T
        cumulative.append(acc.dim)
    chain = [spaces[i + 1].contains(spaces[i]) for i in range(len(spaces) - 1)]
    out = {"t_i": dims, "cumulative": cumulative, "chain": chain}
    if with_products:
        C = inst.C
        prods = []
        for i in range(i_max + 1):
            P = lincode.schur_product(C, lincode.power_code(C, ctx, i))
            prods.append(lincode.trace_code(P, ctx))
        out["trace_products"] = [P.dim for P in prods]
        out["products_in_t"] = [spaces[i].contains(prods[i]) for i in range(i_max + 1)]
    return out
