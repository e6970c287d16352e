"""Exact integer and rational number theory.

Rationals are :class:`fractions.Fraction`; nothing in this package ever
rounds.  Primality is decided by Miller-Rabin with a fixed base set that is
deterministic below :data:`SUPPORTED_BOUND`; larger inputs are rejected.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Rat = Fraction
RatLike = Union[int, Fraction]

#: The archimedean place of Q.
INF = "inf"

#: Miller-Rabin with the first 12 primes as bases is exact below 3.3e24.
SUPPORTED_BOUND = 2**64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class UnsupportedMagnitude(ValueError):
    """Input beyond the range where answers are guaranteed exact."""


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for q, e in self.factors:
            if e < 1:
                raise ValueError("exponents must be positive")
            prod *= q**e
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _check_bound(n: int) -> None:
    if n >= SUPPORTED_BOUND:
        raise UnsupportedMagnitude(f"unsupported magnitude: {n} >= 2^64")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    _check_bound(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    # n odd composite, not a prime power of a small prime
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@lru_cache(maxsize=8192)
def factorize(n: int) -> Factorization:
    """Complete factorization of ``1 <= n < 2^64``."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    _check_bound(n)
    counts: dict[int, int] = {}
    m = n
    for q in range(2, 1000):
        if q * q > m:
            break
        while m % q == 0:
            counts[q] = counts.get(q, 0) + 1
            m //= q
    # fixed seed: the factorization is unique, only the route is random
    rng = random.Random(n)
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_prime(k):
            counts[k] = counts.get(k, 0) + 1
            continue
        r = math.isqrt(k)
        if r * r == k:
            stack += [r, r]
            continue
        g = _pollard_brent(k, rng)
        stack += [g, k // g]
    return Factorization(n, tuple(sorted(counts.items())))


@lru_cache(maxsize=8192)
def euler_phi(n: int) -> int:
    result = n
    for q, _ in factorize(n):
        result = result // q * (q - 1)
    return result


def squarefree_part(n: int) -> int:
    """Squarefree integer in the square class of nonzero ``n`` (sign kept)."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s = -1 if n < 0 else 1
    for q, e in factorize(abs(n)):
        if e % 2:
            s *= q
    return s


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(abs(n)))


def valuation(x: RatLike, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def multiplicative_order(a: int, n: int) -> int:
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    order = euler_phi(n)
    for q, _ in factorize(order):
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def integer_root(x: int, m: int) -> Tuple[int, bool]:
    """floor(x ** (1/m)) for x >= 0, and whether the root is exact."""
    if x < 0 or m < 1:
        raise ValueError("integer_root needs x >= 0, m >= 1")
    if x < 2:
        return x, True
    r = 1 << ((x.bit_length() + m - 1) // m)
    while True:
        s = ((m - 1) * r + x // r ** (m - 1)) // m
        if s >= r:
            break
        r = s
    while r**m > x:
        r -= 1
    while (r + 1) ** m <= x:
        r += 1
    return r, r**m == x


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre_symbol(a: int, p: int) -> int:
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive n")
    a %= n
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def kronecker_symbol(D: int, a: int) -> int:
    """Kronecker symbol (D/a) for a >= 1."""
    if a < 1:
        raise ValueError("kronecker_symbol needs a >= 1")
    acc = 1
    while a % 2 == 0:
        a //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            acc = -acc
    return acc * jacobi_symbol(D, a) if a > 1 else acc


def _square_class_integer(x: RatLike) -> int:
    # num/den and num*den differ by the square den^2
    x = Fraction(x)
    return x.numerator * x.denominator


def hilbert_symbol(a: RatLike, b: RatLike, v) -> int:
    """Hilbert symbol (a, b)_v over Q; ``v`` is a prime or :data:`INF`.

    Uses the closed formulas of Serre, *A Course in Arithmetic*, III.1.2,
    Theorem 1: with a = p^s u, b = p^t w for units u, w,

    * p odd: (-1)^(s t eps(p)) (u/p)^t (w/p)^s,
    * p = 2: (-1)^(eps(u) eps(w) + s omega(w) + t omega(u)),

    where eps(z) = (z - 1)/2 mod 2 and omega(z) = (z^2 - 1)/8 mod 2.
    """
    a, b = _square_class_integer(a), _square_class_integer(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of 0")
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    p = v
    if not is_prime(p):
        raise ValueError(f"{p} is not a place of Q")
    s = valuation(a, p)
    t = valuation(b, p)
    u = a // p**s
    w = b // p**t
    if p != 2:
        sign = -1 if (s * t * (p - 1) // 2) % 2 else 1
        if t % 2:
            sign *= legendre_symbol(u, p)
        if s % 2:
            sign *= legendre_symbol(w, p)
        return sign

    def eps(z):
        return ((z - 1) // 2) % 2

    def omega(z):
        return ((z * z - 1) // 8) % 2

    e = eps(u) * eps(w) + s * omega(w) + t * omega(u)
    return -1 if e % 2 else 1


def hilbert_support(a: RatLike, b: RatLike) -> list:
    """Places where (a, b)_v can be -1: 2, primes of a and b, and infinity."""
    primes = {2}
    for x in (a, b):
        x = Fraction(x)
        for part in (x.numerator, x.denominator):
            if abs(part) > 1:
                primes.update(factorize(abs(part)).primes)
    return sorted(primes) + [INF]


def is_norm_from_imag_quadratic(t: RatLike, d: int) -> bool:
    """Whether ``t`` is a norm from Q(sqrt(-d)), by the Hasse norm theorem."""
    if d <= 0 or not is_squarefree(d):
        raise ValueError("d must be a positive squarefree integer")
    t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return all(hilbert_symbol(t, -d, v) == 1 for v in hilbert_support(t, -d))


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """A square root of ``a`` mod prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def sqrts_mod_prime_power(a: int, p: int, k: int) -> list:
    """All x in [0, p^k) with x^2 = a (mod p^k), by brute lifting.

    Lifting goes one digit at a time over all p candidates, which also
    covers roots of non-unit ``a`` and p = 2.
    """
    roots = [x for x in range(p) if (x * x - a) % p == 0]
    mod = p
    for _ in range(k - 1):
        nxt = mod * p
        roots = sorted(
            {r + j * mod for r in roots for j in range(p) if ((r + j * mod) ** 2 - a) % nxt == 0}
        )
        mod = nxt
    return roots


def crt(residues: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; returns (x, M)."""
    x, M = 0, 1
    for r, m in residues:
        if m < 1:
            raise ValueError("moduli must be positive")
        if math.gcd(M, m) != 1:
            raise ValueError(f"moduli {M} and {m} are not coprime")
        # x + M*t = r (mod m)
        t = (r - x) * pow(M, -1, m) % m if m > 1 else 0
        x += M * t
        M *= m
        x %= M
    return x, M


def sqrts_mod(a: int, N: int) -> list:
    """All square roots of ``a`` modulo ``N`` in [0, N)."""
    if N == 1:
        return [0]
    per_prime = []
    for q, e in factorize(N):
        per_prime.append((sqrts_mod_prime_power(a, q, e), q**e))
    sols = [(0, 1)]
    for roots, mod in per_prime:
        if not roots:
            return []
        sols = [crt([(x, M), (r, mod)]) for x, M in sols for r in roots]
    return sorted(x for x, _ in sols)


def _cornacchia_primitive(d: int, N: int) -> list:
    """Primitive solutions (gcd(a, b) = 1) of a^2 + d b^2 = N with a, b >= 0."""
    found = {(1, 0)} if N == 1 else set()
    bound = math.isqrt(N)
    for r in sqrts_mod(-d, N):
        # Euclid on (N, r) down to the first remainder <= sqrt(N)
        x, y = N, r
        while y > bound:
            x, y = y, x % y
        rest = N - y * y
        if rest >= 0 and rest % d == 0:
            b, exact = integer_root(rest // d, 2)
            if exact and math.gcd(y, b) == 1:
                found.add((y, b))
    return sorted(found)


def cornacchia(d: int, N: int) -> Optional[Tuple[int, int]]:
    """A solution of a^2 + d b^2 = N with a, b >= 0, smallest b first.

    Imprimitive solutions come from primitive solutions of N / g^2.
    """
    if d < 1 or N < 1:
        raise ValueError("cornacchia needs d >= 1 and N >= 1")
    candidates = []
    g = 1
    while g * g <= N:
        if N % (g * g) == 0:
            for a, b in _cornacchia_primitive(d, N // (g * g)):
                candidates.append((g * b, g * a))
        g += 1
    if not candidates:
        return None
    b, a = min(candidates)
    return a, b


def cornacchia_exhaustive(d: int, N: int) -> Optional[Tuple[int, int]]:
    """Reference search over b <= sqrt(N/d); same tie-break as :func:`cornacchia`."""
    b = 0
    while d * b * b <= N:
        a, exact = integer_root(N - d * b * b, 2)
        if exact:
            return a, b
        b += 1
    return None


def iter_primes(lo: int, hi: int) -> Iterable[int]:
    """Primes in [lo, hi] by a sieve."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]
