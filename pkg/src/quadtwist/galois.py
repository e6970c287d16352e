"""The group (Z/nZ)^x = Gal(Q(zeta_n)/Q) and the subgroups the checks need.

Residue a acts as zeta -> zeta^a.  Subgroups are stored as explicit sorted
element tuples plus a generating set; at the sizes used here (phi(n) at most
a few hundred) set operations beat anything cleverer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

from .exactmath import (
    crt,
    euler_phi,
    factorize,
    is_prime,
    kronecker_symbol,
    multiplicative_order,
)


@dataclass(frozen=True)
class ResidueGroup:
    n: int
    decomposition: Tuple[Tuple[int, int], ...]  # (generator, order)

    @property
    def order(self) -> int:
        return math.prod(o for _, o in self.decomposition)

    @property
    def invariants(self) -> Tuple[int, ...]:
        return tuple(o for _, o in self.decomposition)


@dataclass(frozen=True)
class Subgroup:
    n: int
    elements: Tuple[int, ...]
    gens: Tuple[int, ...] = field(compare=False)

    def __post_init__(self):
        elems = set(self.elements)
        if 1 % self.n not in elems:
            raise ValueError("subgroup must contain 1")
        for a in self.gens:
            if a % self.n not in elems:
                raise ValueError(f"generator {a} not in subgroup")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generator(self) -> Optional[int]:
        """An element of full order, or None when the subgroup is not cyclic."""
        return _cyclic_generator(self.n, self.elements)

    @property
    def is_cyclic(self) -> bool:
        return self.generator is not None

    def __contains__(self, a: int) -> bool:
        return a % self.n in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def __repr__(self):
        return f"Subgroup(n={self.n}, order={self.order}, gens={self.gens})"


@lru_cache(maxsize=4096)
def _cyclic_generator(n: int, elements: Tuple[int, ...]) -> Optional[int]:
    m = len(elements)
    for a in elements:
        if multiplicative_order(a, n) == m:
            return a
    return None


def _primitive_root_prime_power(q: int, k: int) -> int:
    """Generator of (Z/q^k)^x for odd prime q."""
    phi = q - 1
    small = factorize(phi).primes
    g = 2
    while any(pow(g, phi // r, q) == 1 for r in small):
        g += 1
    if k > 1 and pow(g, q - 1, q * q) == 1:
        g += q
    return g


@lru_cache(maxsize=None)
def unit_group(n: int) -> ResidueGroup:
    """(Z/nZ)^x as an internal direct product of cyclic factors.

    One factor per odd prime power (a primitive root), and -1, 5 for 2^k.
    Each local generator is lifted by CRT to be 1 at the other primes.
    """
    if n < 1:
        raise ValueError("n must be positive")
    parts = [(q**e, q, e) for q, e in factorize(n)]
    decomposition = []
    for mod, q, e in parts:
        others = n // mod
        if q == 2:
            local = []
            if e >= 2:
                local.append((mod - 1, 2))
            if e >= 3:
                local.append((5, 2 ** (e - 2)))
        else:
            local = [(_primitive_root_prime_power(q, e), (q - 1) * q ** (e - 1))]
        for g, order in local:
            lifted, _ = crt([(g, mod), (1, others)]) if others > 1 else (g % n, n)
            decomposition.append((lifted, order))
    return ResidueGroup(n, tuple(decomposition))


def units(n: int) -> Tuple[int, ...]:
    return tuple(a for a in range(1, n) if math.gcd(a, n) == 1) if n > 1 else (0,)


def is_cyclic_group(n: int) -> bool:
    """Whether (Z/nZ)^x is cyclic, from the exponent of the computed group."""
    orders = unit_group(n).invariants
    return math.lcm(*orders) == euler_phi(n) if orders else True


def subgroup_generated(n: int, gens: Sequence[int]) -> Subgroup:
    gens = tuple(g % n for g in gens)
    for g in gens:
        if math.gcd(g, n) != 1:
            raise ValueError(f"generator {g} is not coprime to {n}")
    elems = {1 % n}
    frontier = [1 % n]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % n
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(n, tuple(sorted(elems)), gens)


def cyclic_subgroup(n: int, a: int) -> Subgroup:
    return subgroup_generated(n, [a])


def whole_group(n: int) -> Subgroup:
    return subgroup_generated(n, [g for g, _ in unit_group(n).decomposition])


def cyclic_subgroups(n: int, within: Optional[Subgroup] = None) -> List[Subgroup]:
    """Distinct cyclic subgroups, each with its least generator."""
    pool = within.elements if within is not None else units(n)
    seen = {}
    for a in pool:
        H = cyclic_subgroup(n, a)
        seen.setdefault(H.elements, H)
    return sorted(seen.values(), key=lambda H: (-H.order, H.elements))


def maximally_cyclic_subgroups(n: int, within: Optional[Subgroup] = None) -> List[Subgroup]:
    """Cyclic subgroups not properly contained in a larger cyclic subgroup.

    With ``within`` the enumeration happens inside that subgroup instead of
    the whole of (Z/nZ)^x.  Ordered by decreasing order, then elements.
    """
    cyc = cyclic_subgroups(n, within)
    sets = [H._set for H in cyc]
    return [H for H, s in zip(cyc, sets) if not any(s < t for t in sets)]


def decomposition_group(n: int, q: int) -> Subgroup:
    """Decomposition group of the prime q in Gal(Q(zeta_n)/Q).

    For q not dividing n it is generated by Frobenius, q mod n.  Otherwise
    with n = q^k m it is the CRT image of (Z/q^k)^x x <q mod m>.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if n % q:
        return cyclic_subgroup(n, q)
    k = 0
    m = n
    while m % q == 0:
        m //= q
        k += 1
    qk = q**k
    gens = []
    for g, _ in unit_group(qk).decomposition:
        gens.append(crt([(g, qk), (1, m)])[0] if m > 1 else g)
    if m > 1:
        gens.append(crt([(1, qk), (q % m, m)])[0])
    return subgroup_generated(n, gens)


def archimedean_subgroup(n: int) -> Subgroup:
    """Complex conjugation, residue n - 1."""
    return cyclic_subgroup(n, n - 1)


def _discriminant(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def quadratic_subfields(n: int) -> List[int]:
    """Squarefree d != 1 with Q(sqrt d) inside Q(zeta_n).

    Q(sqrt d) has conductor |disc(d)|, and lies in Q(zeta_n) exactly when
    that conductor divides n.
    """
    primes = [q for q, _ in factorize(n)] if n > 1 else []
    out = set()
    for mask in range(1 << len(primes)):
        m = math.prod(q for i, q in enumerate(primes) if mask >> i & 1)
        for d in (m, -m):
            if d != 1 and n % abs(_discriminant(d)) == 0:
                out.add(d)
    return sorted(out)


def quadratic_character(d: int, a: int) -> int:
    """sigma_a(sqrt d) = chi(a) sqrt d, with chi the Kronecker character of disc(d)."""
    return kronecker_symbol(_discriminant(d), a)


def fixing_subgroup_of_quadratic(n: int, d: int) -> Subgroup:
    """Gal(Q(zeta_n)/Q(sqrt d)), the kernel of the quadratic character."""
    if d not in quadratic_subfields(n):
        raise ValueError(f"sqrt({d}) is not in Q(zeta_{n})")
    elems = [a for a in units(n) if quadratic_character(d, a) == 1]
    # a generating set: the decomposition generators where the character is
    # trivial, and products of pairs where it is not
    base = [g for g, _ in unit_group(n).decomposition]
    chi = {g: quadratic_character(d, g) for g in base}
    odd = [g for g in base if chi[g] == -1]
    gens = [g for g in base if chi[g] == 1]
    if odd:
        h = odd[0]
        gens += [h * h % n] + [h * g % n for g in odd[1:]]
    gens = [g for g in gens if g != 1 % n] or [1 % n]
    H = subgroup_generated(n, gens)
    if H.elements != tuple(elems):
        raise AssertionError("character kernel and generated subgroup disagree")
    return H


def sylow2_subgroup(n: int, within: Optional[Subgroup] = None) -> Subgroup:
    G = within if within is not None else whole_group(n)
    order = G.order
    odd = order
    while odd % 2 == 0:
        odd //= 2
    return subgroup_generated(n, [pow(g, odd, n) for g in G.gens])


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.n != B.n:
        raise ValueError("subgroups of different groups")
    elems = sorted(A._set & B._set)
    # every element of a finite abelian group generates something; keep a
    # small generating set greedily
    gens: List[int] = []
    span = {1 % A.n}
    for a in sorted(elems, key=lambda x: -multiplicative_order(x, A.n)):
        if a not in span:
            gens.append(a)
            span = set(subgroup_generated(A.n, gens).elements)
    return subgroup_generated(A.n, gens)
