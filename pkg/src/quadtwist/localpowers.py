"""m-th power tests: modulo primes, in Q_p, in completions of Q(sqrt d), and
globally, together with a scanner for Grunwald-Wang style failures of the
local-global principle.

Local tests at a prime reduce to a finite residue ring.  A unit u of a
complete DVR with uniformizer pi is an m-th power iff x^m = u modulo
pi^(2 v(m) + 1) for some unit x (Hensel, since v(f'(x)) = v(m)).  When the
residue characteristic does not divide m this is the residue field test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .exactmath import (
    INF,
    RatLike,
    factorize,
    integer_root,
    is_prime,
    is_squarefree,
    iter_primes,
    legendre_symbol,
    valuation,
)


@dataclass(frozen=True)
class Field:
    """Q when d is None, otherwise Q(sqrt d) with d squarefree."""

    d: Optional[int] = None

    def __post_init__(self):
        if self.d is not None and (self.d in (0, 1) or not is_squarefree(self.d)):
            raise ValueError(f"d = {self.d} must be squarefree and not 0 or 1")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t == "q":
            return cls(None)
        if t.startswith("qsqrt:"):
            try:
                d = int(t.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad field descriptor {text!r}; expected Q or qsqrt:<d>") from None
            return cls(d)
        raise ValueError(f"bad field descriptor {text!r}; expected Q or qsqrt:<d>")

    @property
    def label(self) -> str:
        return "Q" if self.d is None else f"qsqrt:{self.d}"


def _nonzero(alpha: RatLike) -> Fraction:
    alpha = Fraction(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    return alpha


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError("m must be a positive integer")


def _mod(c: Fraction, M: int) -> int:
    if math.gcd(c.denominator, M) != 1:
        raise ValueError(f"{c} is not integral modulo {M}")
    return c.numerator * pow(c.denominator, -1, M) % M


# ---------------------------------------------------------------------------
# Q


def is_power_mod_prime(alpha: int, m: int, q: int) -> bool:
    """Whether alpha is an m-th power in F_q, q an odd prime not dividing alpha."""
    _check_m(m)
    if q == 2 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")
    if alpha % q == 0:
        raise ValueError(f"{q} divides {alpha}; use is_power_in_Qp")
    g = math.gcd(m, q - 1)
    return pow(alpha % q, (q - 1) // g, q) == 1


def _unit_power_exists(u: int, m: int, p: int, k: int) -> bool:
    M = p**k
    u %= M
    return any(pow(x, m, M) == u for x in range(1, M) if x % p)


def hensel_exponent(m: int, p: int) -> int:
    return 2 * valuation(m, p) + 1


def is_power_in_Qp(alpha: RatLike, m: int, p: int, precision: Optional[int] = None,
                   exhaustive: bool = False) -> bool:
    """Whether alpha lies in (Q_p^x)^m.

    ``precision`` overrides the residue exponent (it may only be raised above
    the Hensel bound); ``exhaustive`` forces a residue search even where the
    Euler criterion would do.
    """
    alpha = _nonzero(alpha)
    _check_m(m)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = valuation(alpha, p)
    if v % m:
        return False
    u = alpha / Fraction(p) ** v
    k = hensel_exponent(m, p)
    if precision is not None:
        if precision < k:
            raise ValueError(f"precision {precision} is below the Hensel bound {k}")
        k = precision
    elif p != 2 and m % p and not exhaustive:
        return is_power_mod_prime(_mod(u, p), m, p)
    return _unit_power_exists(_mod(u, p**k), m, p, k)


def _rational_root(beta: Fraction, m: int) -> Optional[Fraction]:
    if beta < 0 and m % 2 == 0:
        return None
    sign = -1 if beta < 0 else 1
    rn, ok_n = integer_root(abs(beta.numerator), m)
    rd, ok_d = integer_root(beta.denominator, m)
    return Fraction(sign * rn, rd) if ok_n and ok_d else None


# ---------------------------------------------------------------------------
# Q(sqrt d)
#
# O_K = Z[w] with w^2 = t w + c: w = (1 + sqrt d)/2, (t, c) = (1, (d-1)/4)
# when d = 1 (mod 4), and w = sqrt d, (t, c) = (0, d) otherwise.  Elements of
# K are written a + b sqrt d; residues are pairs (x, y) meaning x + y w.


def _order_params(d: int) -> Tuple[int, int]:
    return (1, (d - 1) // 4) if d % 4 == 1 else (0, d)


def _to_omega(a: Fraction, b: Fraction, d: int) -> Tuple[Fraction, Fraction]:
    # sqrt d = 2w - 1 in the first case
    return (a - b, 2 * b) if d % 4 == 1 else (a, b)


def _qmul(u, v, d):
    return (u[0] * v[0] + d * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _qpow(u, e, d):
    result = (Fraction(1), Fraction(0))
    while e:
        if e & 1:
            result = _qmul(result, u, d)
        u = _qmul(u, u, d)
        e >>= 1
    return result


def _wmul(u, v, t, c, M):
    x1, y1 = u
    x2, y2 = v
    yy = y1 * y2
    return ((x1 * x2 + c * yy) % M, (x1 * y2 + x2 * y1 + t * yy) % M)


def _wpow(u, e, t, c, M):
    result = (1 % M, 0)
    while e:
        if e & 1:
            result = _wmul(result, u, t, c, M)
        u = _wmul(u, u, t, c, M)
        e >>= 1
    return result


def _wnorm(x: int, y: int, t: int, c: int) -> int:
    return x * x + t * x * y - c * y * y


def splitting_type(d: int, q: int) -> str:
    """'split', 'inert' or 'ramified' for the prime q in Q(sqrt d)."""
    if q == 2:
        if d % 4 in (2, 3):
            return "ramified"
        return "split" if d % 8 == 1 else "inert"
    if d % q == 0:
        return "ramified"
    return "split" if legendre_symbol(d, q) == 1 else "inert"


def _uniformizer(d: int, q: int, kind: str) -> Tuple[Fraction, Fraction]:
    if kind == "inert":
        return (Fraction(q), Fraction(0))
    if q == 2 and d % 4 == 3:
        return (Fraction(1), Fraction(1))  # norm 1 - d, exactly divisible by 2
    return (Fraction(0), Fraction(1))


def _residue_field_test(u, m, q, kind, d, t, c) -> bool:
    if kind == "ramified":
        # w reduces to 1/2 or 0 modulo the prime above q
        w0 = (q + 1) // 2 if d % 4 == 1 else 0
        r = (u[0] + u[1] * w0) % q
        return pow(r, (q - 1) // math.gcd(m, q - 1), q) == 1
    size = q * q
    return _wpow(u, (size - 1) // math.gcd(m, size - 1), t, c, q) == (1, 0)


def _residue_search(u, m, q, e, f, N, t, c) -> bool:
    """Some unit x of O_K/q^k with v_P(x^m - u) >= N, where k = ceil(N/e)."""
    k = -(-N // e)
    M = q**k
    u = (u[0] % M, u[1] % M)
    for x in range(M):
        for y in range(M):
            if _wnorm(x, y, t, c) % q == 0:
                continue
            w = _wpow((x, y), m, t, c, M)
            dx, dy = (w[0] - u[0]) % M, (w[1] - u[1]) % M
            if dx == 0 and dy == 0:
                return True
            if valuation(_wnorm(dx, dy, t, c), q) // f >= N:
                return True
    return False


def _unique_prime_test(alpha: Fraction, m: int, d: int, q: int, kind: str,
                       precision: Optional[int], exhaustive: bool) -> bool:
    e, f = (2, 1) if kind == "ramified" else (1, 2)
    v = e * valuation(alpha, q)
    if v % m:
        return False
    pi = _uniformizer(d, q, kind)
    conj = (pi[0], -pi[1])
    npi = pi[0] ** 2 - d * pi[1] ** 2
    # alpha / pi^v, using 1/pi = conj(pi)/N(pi)
    scaled = _qpow(conj, v, d)
    scale = alpha / npi**v
    a, b = scaled[0] * scale, scaled[1] * scale
    t, c = _order_params(d)
    x, y = _to_omega(a, b, d)
    N = 2 * e * valuation(m, q) + 1
    if precision is not None:
        if precision < N:
            raise ValueError(f"precision {precision} is below the Hensel bound {N}")
        N = precision
    M = q ** (-(-N // e))
    u = (_mod(x, M), _mod(y, M))
    if _wnorm(u[0], u[1], t, c) % q == 0:
        raise AssertionError("scaled element is not a unit")
    if precision is None and m % q and not exhaustive:
        return _residue_field_test(u, m, q, kind, d, t, c)
    return _residue_search(u, m, q, e, f, N, t, c)


def is_power_in_quadratic_completion(alpha: RatLike, m: int, d: int, q,
                                     precision: Optional[int] = None,
                                     exhaustive: bool = False) -> bool:
    """Whether the rational alpha is an m-th power in Q(sqrt d) completed at q.

    q is a prime or :data:`INF`.  At a split prime both completions are Q_q.
    """
    alpha = _nonzero(alpha)
    _check_m(m)
    Field(d)
    if q == INF:
        return d < 0 or alpha > 0 or m % 2 == 1
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    kind = splitting_type(d, q)
    if kind == "split":
        return is_power_in_Qp(alpha, m, q, precision, exhaustive)
    return _unique_prime_test(alpha, m, d, q, kind, precision, exhaustive)


# ---------------------------------------------------------------------------
# global


def _divides_x_power_minus(m: int, A: int, s: int, t: int) -> bool:
    """Whether x^2 - s x + t divides x^m - A over Z."""
    # x^k mod (x^2 - s x + t) as (coefficient of x, constant)
    def mul(u, v):
        a1, a0 = u
        b1, b0 = v
        hi = a1 * b1
        return (a1 * b0 + a0 * b1 + hi * s, a0 * b0 - hi * t)

    result, base, e = (0, 1), (1, 0), m
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result == (0, A)


def _is_mth_power(beta: Fraction, m: int, d: Optional[int]) -> bool:
    if _rational_root(beta, m) is not None:
        return True
    if d is None or m == 1:
        return False
    # beta = N/D is an m-th power iff A = N D^(m-1) is, and a root of x^m - A
    # is an algebraic integer all of whose conjugates have size |A|^(1/m)
    A = beta.numerator * beta.denominator ** (m - 1)
    R, exact = integer_root(abs(A), m)
    if not exact:
        R += 1
    for s in range(-2 * R, 2 * R + 1):
        for t in range(-R * R, R * R + 1):
            disc = s * s - 4 * t
            if disc == 0 or disc % d:
                continue
            k2 = disc // d
            if k2 <= 0 or not integer_root(k2, 2)[1]:
                continue
            if _divides_x_power_minus(m, A, s, t):
                return True
    return False


def is_global_pm_power(alpha: RatLike, m: int, field: Field = Field()) -> Tuple[bool, bool]:
    """(alpha is an m-th power in the field, -alpha is)."""
    alpha = _nonzero(alpha)
    _check_m(m)
    return _is_mth_power(alpha, m, field.d), _is_mth_power(-alpha, m, field.d)


# ---------------------------------------------------------------------------
# scanner


@dataclass(frozen=True)
class LocalPowerReport:
    alpha: Fraction
    m: int
    field: Field
    places: Tuple[Tuple[str, bool], ...]
    global_plus: bool
    global_minus: bool

    @property
    def all_local(self) -> bool:
        return all(r for _, r in self.places)

    @property
    def violation(self) -> bool:
        return self.all_local and not (self.global_plus or self.global_minus)

    def failing_places(self) -> List[str]:
        return [pl for pl, r in self.places if not r]

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "m": self.m,
            "field": self.field.label,
            "places": [{"place": pl, "result": r} for pl, r in self.places],
            "global": {"plus": self.global_plus, "minus": self.global_minus},
            "violation": self.violation,
        }


def _scan_primes(alpha: Fraction, field: Field, prime_bound: int) -> List[int]:
    extra = {2}
    for z in (alpha.numerator, alpha.denominator, field.d or 1):
        if abs(z) > 1:
            extra.update(factorize(abs(z)).primes)
    return sorted(set(iter_primes(2, prime_bound)) | extra)


def _local_places(alpha: Fraction, m: int, field: Field, q) -> Iterable[Tuple[str, bool]]:
    d = field.d
    if d is None:
        if q == INF:
            yield INF, alpha > 0 or m % 2 == 1
        else:
            yield str(q), is_power_in_Qp(alpha, m, q)
        return
    r = is_power_in_quadratic_completion(alpha, m, d, q)
    if q == INF:
        labels = [f"{INF}.1", f"{INF}.2"] if d > 0 else [INF]
    elif splitting_type(d, q) == "split":
        labels = [f"{q}.1", f"{q}.2"]
    else:
        labels = [str(q)]
    for label in labels:
        yield label, r


def gw_scan(alpha: RatLike, m: int, field: Field = Field(), prime_bound: int = 100) -> LocalPowerReport:
    """Local m-th power verdicts at the archimedean places and every prime up
    to ``prime_bound`` (plus the primes of 2, d and alpha), and the global test."""
    alpha = _nonzero(alpha)
    _check_m(m)
    places: List[Tuple[str, bool]] = []
    for q in [INF] + _scan_primes(alpha, field, prime_bound):
        places.extend(_local_places(alpha, m, field, q))
    plus, minus = is_global_pm_power(alpha, m, field)
    return LocalPowerReport(alpha, m, field, tuple(places), plus, minus)
