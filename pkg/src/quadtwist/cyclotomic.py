"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) as an
integer numerator vector over one positive common denominator, always in
lowest terms, so equal field elements compare equal coefficient-wise.

Products are formed by Kronecker substitution (pack each vector into one
big integer, multiply, unpack) and reduced modulo the cyclotomic polynomial
with a precomputed truncated inverse of Phi_n.  ``_mul_schoolbook`` and the
row-table reduction ``_reduce_table`` are the slow reference routes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .exactmath import euler_phi, factorize, is_prime, legendre_symbol

IntPoly = Tuple[int, ...]


class ConductorMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _poly_divmod_exact(num: Sequence[int], den: Sequence[int]) -> List[int]:
    """Quotient of integer polynomials when ``den`` is monic and divides ``num``."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            q[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ValueError("division is not exact")
    return q


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPoly:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


# ---------------------------------------------------------------------------
# Kronecker substitution


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, length: int, nbytes: int) -> List[int]:
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    raw = (value + offset).to_bytes(nbytes * length, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, nbytes * length, nbytes)
    ]


def _maxbits(v: Sequence[int]) -> int:
    return max((abs(c).bit_length() for c in v), default=0)


def _kron_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    length = len(a) + len(b) - 1
    bits = _maxbits(a) + _maxbits(b) + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    return _unpack(_pack(a, nbytes) * _pack(b, nbytes), length, nbytes)


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> List[int]:
    return _poly_mul_int(a, b)


# ---------------------------------------------------------------------------
# per-conductor data


class _Conductor:
    """Reduction data for one conductor, built once and shared read-only."""

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        self.cyclo = cyclotomic_polynomial(n)
        # 1 / Phi_n as a power series, truncated to the quotient length
        qlen = n - self.phi
        inv = [0] * qlen
        for k in range(qlen):
            acc = 1 if k == 0 else 0
            for j in range(1, min(k, self.phi) + 1):
                acc -= self.cyclo[j] * inv[k - j]
            inv[k] = acc * self.cyclo[0]  # cyclo[0] is +-1
        self.inv_series = inv
        self._rows: Optional[List[List[Tuple[int, int]]]] = None

    @property
    def rows(self) -> List[List[Tuple[int, int]]]:
        """Sparse rows expressing zeta^k, phi <= k < n, in the power basis."""
        if self._rows is None:
            phi = self.phi
            cur = [-c for c in self.cyclo[:phi]]
            rows = []
            for _ in range(phi, self.n):
                rows.append([(j, c) for j, c in enumerate(cur) if c])
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    for j in range(phi):
                        cur[j] -= top * self.cyclo[j]
            self._rows = rows
        return self._rows

    def fold(self, v: Sequence[int]) -> List[int]:
        n = self.n
        if len(v) <= n:
            return list(v)
        out = list(v[:n])
        for k in range(n, len(v)):
            out[k % n] += v[k]
        return out

    def reduce(self, v: Sequence[int]) -> List[int]:
        """Reduce an integer vector modulo (x^n - 1, Phi_n) to length phi."""
        phi = self.phi
        v = self.fold(v)
        if len(v) <= phi:
            return list(v) + [0] * (phi - len(v))
        v = v + [0] * (self.n - len(v))
        if self.n == 1:
            return [sum(v)]
        # Phi_n is palindromic for n >= 2, so rev(Phi_n) = Phi_n
        qlen = self.n - phi
        rq = _kron_mul(v[::-1][:qlen], self.inv_series)[:qlen]
        q = rq[::-1]
        low = _kron_mul(q, self.cyclo)[:phi]
        return [x - y for x, y in zip(v[:phi], low)]

    def reduce_table(self, v: Sequence[int]) -> List[int]:
        phi = self.phi
        v = self.fold(v)
        out = list(v[:phi]) + [0] * (phi - min(phi, len(v)))
        rows = self.rows
        for k in range(phi, len(v)):
            c = v[k]
            if c:
                for j, r in rows[k - phi]:
                    out[j] += c * r
        return out


@lru_cache(maxsize=None)
def _conductor(n: int) -> _Conductor:
    return _Conductor(n)


def _reduce_table(n: int, v: Sequence[int]) -> List[int]:
    return _conductor(n).reduce_table(v)


# ---------------------------------------------------------------------------
# field elements


class CycElem:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, num: Sequence[int], den: int = 1):
        if n < 1:
            raise ValueError("conductor must be positive")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        phi = _conductor(n).phi
        if len(num) != phi:
            raise ValueError(f"expected {phi} coefficients, got {len(num)}")
        if den < 0:
            num, den = [-c for c in num], -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.n = n
        self.num: Tuple[int, ...] = tuple(num)
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def from_coeffs(cls, n: int, coeffs: Sequence) -> "CycElem":
        """Element from power-basis coordinates; a longer vector is reduced."""
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        ints = [c.numerator * (den // c.denominator) for c in fr]
        return cls(n, _conductor(n).reduce(ints), den)

    @classmethod
    def rational(cls, n: int, r) -> "CycElem":
        r = Fraction(r)
        phi = _conductor(n).phi
        return cls(n, [r.numerator] + [0] * (phi - 1), r.denominator)

    @classmethod
    def zero(cls, n: int) -> "CycElem":
        return cls.rational(n, 0)

    @classmethod
    def one(cls, n: int) -> "CycElem":
        return cls.rational(n, 1)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycElem":
        v = [0] * n
        v[k % n] = 1
        return cls(n, _conductor(n).reduce(v))

    # structure
    @property
    def degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def _check(self, other: "CycElem") -> None:
        if self.n != other.n:
            raise ConductorMismatch(f"conductors {self.n} and {other.n} differ")

    def _coerce(self, other) -> "CycElem":
        if isinstance(other, CycElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycElem.rational(self.n, other)
        return NotImplemented

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        da, db = self.den, other.den
        return CycElem(self.n, [x * db + y * da for x, y in zip(self.num, other.num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.n, [-c for c in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return CycElem(self.n, [c * r.numerator for c in self.num], self.den * r.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        cond = _conductor(self.n)
        prod = cond.reduce(_kron_mul(self.num, other.num))
        return CycElem(self.n, prod, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycElem.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inv(self) -> "CycElem":
        return inv(self)

    def galois(self, a: int) -> "CycElem":
        return galois_apply(a, self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            r = is_rational(self)
            return r is not None and r == other
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.num, self.den))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        return f"CycElem[{self.n}]({' + '.join(terms) or '0'})"


# module-level spellings of the ring operations


def add(x: CycElem, y: CycElem) -> CycElem:
    x._check(y)
    return x + y


def mul(x: CycElem, y: CycElem) -> CycElem:
    x._check(y)
    return x * y


def neg(x: CycElem) -> CycElem:
    return -x


def _frac_poly_trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def inv_euclid(x: CycElem) -> CycElem:
    """Inverse by the extended Euclidean algorithm against Phi_n over Q.

    Coefficient growth makes this impractical beyond phi(n) of about 100.
    """
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
    n = x.n
    # invariant: s * x = r (mod Phi_n)
    r0 = [Fraction(c) for c in cyclotomic_polynomial(n)]
    r1 = _frac_poly_trim([Fraction(c) for c in x.num])
    s0: List[Fraction] = []
    s1: List[Fraction] = [Fraction(1)]
    while len(r1) > 1:
        r0, s0 = list(r0), list(s0)
        lead = r1[-1]
        q: dict = {}
        while len(r0) >= len(r1):
            shift = len(r0) - len(r1)
            c = r0[-1] / lead
            q[shift] = c
            for j, v in enumerate(r1):
                if v:
                    r0[shift + j] -= c * v
            r0.pop()
            _frac_poly_trim(r0)
        # s0 - q * s1
        new_s = s0 + [Fraction(0)] * max(0, len(s1) + max(q, default=0) - len(s0))
        for shift, c in q.items():
            for j, v in enumerate(s1):
                if v:
                    new_s[shift + j] -= c * v
        r0, r1 = r1, r0
        s0, s1 = s1, _frac_poly_trim(new_s)
    # s1 * num = c, and x = num / den
    c = r1[0] / x.den
    return CycElem.from_coeffs(n, [v / c for v in s1])


def inv(x: CycElem) -> CycElem:
    """Inverse as (product of the other conjugates) / (absolute norm)."""
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
    from .galois import unit_group

    n = x.n
    cofactor = CycElem.one(n)
    z = x
    current = {1 % n}
    for g, _ in unit_group(n).decomposition:
        r, h = 1, g
        while h not in current:
            h = h * g % n
            r += 1
        if r == 1:
            continue
        # prod_{i<r} sigma_{g^i}(z) = z * sigma_g(prod_{i<r-1} sigma_{g^i}(z))
        rest = galois_apply(g, _twisted_product(z, g, r - 1))
        cofactor = cofactor * rest
        z = z * rest
        current = {pow(g, i, n) * c % n for i in range(r) for c in current}
    norm = is_rational(z)
    if norm is None:
        raise ArithmeticError("absolute norm is not rational")
    return cofactor * (1 / norm)


def galois_apply(a: int, x: CycElem) -> CycElem:
    """The automorphism zeta -> zeta^a."""
    n = x.n
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not coprime to {n}")
    a %= n
    if a == 1 % n:
        return x
    v = [0] * n
    for i, c in enumerate(x.num):
        if c:
            v[a * i % n] += c
    return CycElem(n, _conductor(n).reduce(v), x.den)


def _twisted_product(x: CycElem, g: int, r: int) -> CycElem:
    """prod_{0 <= i < r} sigma_{g^i}(x), by binary doubling."""
    n = x.n
    if r == 0:
        return CycElem.one(n)
    prod, k = x, 1
    for bit in bin(r)[3:]:
        prod = prod * galois_apply(pow(g, k, n), prod)
        k *= 2
        if bit == "1":
            prod = prod * galois_apply(pow(g, k, n), x)
            k += 1
    return prod


def norm_over(C, x: CycElem) -> CycElem:
    """Product of sigma_a(x) over a in the subgroup ``C``.

    ``C`` needs ``gens`` and ``elements``; the norm is built up a tower of
    subgroups, one generator at a time, each step a twisted product.
    """
    n = x.n
    current = {1 % n}
    z = x
    for g in C.gens:
        g %= n
        r, h = 1, g
        while h not in current:
            h = h * g % n
            r += 1
        if r > 1:
            z = _twisted_product(z, g, r)
            powers = [pow(g, i, n) for i in range(r)]
            current = {h * c % n for h in powers for c in current}
    if len(current) != len(C.elements):
        raise ValueError("subgroup generators do not generate its elements")
    return z


def norm_over_naive(elements: Iterable[int], x: CycElem) -> CycElem:
    result = CycElem.one(x.n)
    for a in elements:
        result = result * galois_apply(a, x)
    return result


def is_rational(x: CycElem) -> Optional[Fraction]:
    if any(x.num[1:]):
        return None
    return Fraction(x.num[0], x.den)


def is_fixed_by(C, x: CycElem) -> bool:
    return all(galois_apply(g, x) == x for g in C.gens)


# ---------------------------------------------------------------------------
# E^x / {+-1}


class ProjUnit:
    """A nonzero element up to sign; the stored representative has its
    lowest-index nonzero coefficient positive."""

    __slots__ = ("rep",)

    def __init__(self, x: CycElem):
        if x.is_zero():
            raise ValueError("zero is not a unit")
        lead = next(c for c in x.num if c)
        self.rep = -x if lead < 0 else x

    @property
    def n(self) -> int:
        return self.rep.n

    def __mul__(self, other: "ProjUnit") -> "ProjUnit":
        return ProjUnit(self.rep * other.rep)

    def inv(self) -> "ProjUnit":
        return ProjUnit(self.rep.inv())

    def galois(self, a: int) -> "ProjUnit":
        return ProjUnit(galois_apply(a, self.rep))

    def is_identity(self) -> bool:
        return self.rep == 1

    def __eq__(self, other):
        return isinstance(other, ProjUnit) and self.rep == other.rep

    def __hash__(self):
        return hash(("ProjUnit", self.rep))

    def __repr__(self):
        return f"ProjUnit({self.rep!r})"


def is_fixed_mod_sign(C, u: ProjUnit) -> bool:
    rep = u.rep
    return all(galois_apply(g, rep) in (rep, -rep) for g in C.gens)


# ---------------------------------------------------------------------------
# distinguished elements


def sqrt_minus3(n: int) -> CycElem:
    """zeta_3 - zeta_3^2 with zeta_3 = zeta_n^(n/3); squares to -3."""
    if n % 3:
        raise ValueError(f"3 does not divide {n}")
    k = n // 3
    return CycElem.zeta(n, k) - CycElem.zeta(n, 2 * k)


def gauss_sum(p: int, n: int) -> CycElem:
    """sum_t (t/p) zeta_p^t inside Q(zeta_n); squares to (-1/p) p."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if n % p:
        raise ValueError(f"{p} does not divide {n}")
    k = n // p
    v = [0] * n
    for t in range(1, p):
        v[k * t % n] += legendre_symbol(t, p)
    return CycElem(n, _conductor(n).reduce(v))


def sqrt_of_squarefree(n: int, d: int) -> CycElem:
    """An explicit square root of the squarefree integer ``d`` in Q(zeta_n).

    Built from Gauss sums for the odd primes of d, with zeta_4 and zeta_8
    supplying sqrt(-1) and sqrt(+-2).  Raises if sqrt(d) is not in the field.
    """
    if d in (0, 1):
        raise ValueError("d must be squarefree and different from 0, 1")
    root = CycElem.one(n)
    sign = 1
    for q, e in factorize(abs(d)):
        if e > 1:
            raise ValueError(f"{d} is not squarefree")
        if q == 2:
            if n % 8:
                raise ValueError(f"sqrt(2) is not in Q(zeta_{n})")
            z8 = CycElem.zeta(n, n // 8)
            root = root * (z8 + z8.galois(n - 1))  # sqrt(2)
            continue
        if n % q:
            raise ValueError(f"sqrt({d}) is not in Q(zeta_{n})")
        root = root * gauss_sum(q, n)
        sign *= 1 if q % 4 == 1 else -1
    if (d < 0) != (sign < 0):
        if n % 4:
            raise ValueError(f"sqrt(-1) is not in Q(zeta_{n})")
        root = root * CycElem.zeta(n, n // 4)
    return root
