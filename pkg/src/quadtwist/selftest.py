"""Brute-force oracle suites, runnable without pytest (``quadtwist selftest``).

Each suite compares a fast route against an independent slow one on a
fixed-seed sample and reports the first mismatch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

from . import cyclotomic as cy
from .cohomology import brute_force_h1, random_module
from .exactmath import (
    cornacchia,
    cornacchia_exhaustive,
    euler_phi,
    hilbert_support,
    hilbert_symbol,
    iter_primes,
    legendre_symbol,
)
from .galois import cyclic_subgroup, maximally_cyclic_subgroups, subgroup_generated, units
from .localpowers import is_power_in_quadratic_completion, is_power_mod_prime


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    mismatch: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def _cornacchia(rng) -> SuiteResult:
    cases = 0
    for d in range(1, 25):
        for N in range(1, 800):
            cases += 1
            if cornacchia(d, N) != cornacchia_exhaustive(d, N):
                return SuiteResult("cornacchia", cases, f"d={d} N={N}")
    return SuiteResult("cornacchia", cases)


def _legendre(rng) -> SuiteResult:
    cases = 0
    for p in iter_primes(3, 400):
        for a in range(1, p):
            cases += 1
            brute = 1 if any(x * x % p == a for x in range(1, p)) else -1
            if legendre_symbol(a, p) != brute:
                return SuiteResult("legendre", cases, f"a={a} p={p}")
    return SuiteResult("legendre", cases)


def _hilbert_reciprocity(rng) -> SuiteResult:
    for i in range(300):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        prod = 1
        for v in hilbert_support(a, b):
            prod *= hilbert_symbol(a, b, v)
        if prod != 1:
            return SuiteResult("hilbert-reciprocity", i + 1, f"a={a} b={b}")
    return SuiteResult("hilbert-reciprocity", 300)


def _random_elem(rng, n: int) -> cy.CycElem:
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(euler_phi(n))]
    return cy.CycElem.from_coeffs(n, coeffs)


def _reduction(rng) -> SuiteResult:
    cases = 0
    for n in (1, 3, 4, 12, 15, 21, 39, 45, 63, 105):
        cond = cy._conductor(n)
        for _ in range(10):
            cases += 1
            v = [rng.randint(-50, 50) for _ in range(rng.randint(1, 3 * n))]
            if cond.reduce(v) != cond.reduce_table(v):
                return SuiteResult("reduction", cases, f"n={n}")
            a = [rng.randint(-99, 99) for _ in range(rng.randint(1, 40))]
            b = [rng.randint(-99, 99) for _ in range(rng.randint(1, 40))]
            if cy._kron_mul(a, b) != cy._mul_schoolbook(a, b):
                return SuiteResult("reduction", cases, "kronecker product")
    return SuiteResult("reduction", cases)


def _inverse(rng) -> SuiteResult:
    cases = 0
    for n in (3, 5, 12, 15, 21, 39):
        for _ in range(4):
            x = _random_elem(rng, n)
            if x.is_zero():
                continue
            cases += 1
            y = cy.inv(x)
            if y != cy.inv_euclid(x) or x * y != 1:
                return SuiteResult("inverse", cases, f"n={n} x={x!r}")
    return SuiteResult("inverse", cases)


def _norms(rng) -> SuiteResult:
    cases = 0
    for n in (15, 21, 39, 45):
        for C in maximally_cyclic_subgroups(n)[:4] + [subgroup_generated(n, units(n)[1:3])]:
            x = _random_elem(rng, n)
            cases += 1
            if cy.norm_over(C, x) != cy.norm_over_naive(C.elements, x):
                return SuiteResult("norm", cases, f"n={n} C={C}")
    return SuiteResult("norm", cases)


def _subgroups(rng) -> SuiteResult:
    cases = 0
    for n in range(2, 61):
        for a in units(n):
            cases += 1
            H = cyclic_subgroup(n, a)
            brute = sorted({pow(a, k, n) for k in range(n + 1)} | {1 % n})
            if list(H.elements) != brute:
                return SuiteResult("subgroups", cases, f"n={n} a={a}")
    return SuiteResult("subgroups", cases)


def _h1(rng) -> SuiteResult:
    for i in range(50):
        m, M = random_module(rng)
        try:
            brute_force_h1(m, M)
        except AssertionError as exc:
            return SuiteResult("h1", i + 1, f"m={m} M={M}: {exc}")
    return SuiteResult("h1", 50)


def _power_residues(rng) -> SuiteResult:
    cases = 0
    for q in iter_primes(3, 200):
        for m in (2, 4, 8):
            for alpha in (2, -2, 16, -16, 3):
                if alpha % q == 0:
                    continue
                cases += 1
                brute = any(pow(x, m, q) == alpha % q for x in range(1, q))
                if is_power_mod_prime(alpha, m, q) != brute:
                    return SuiteResult("power-residues", cases, f"alpha={alpha} m={m} q={q}")
    return SuiteResult("power-residues", cases)


def _completions(rng) -> SuiteResult:
    cases = 0
    for q in iter_primes(3, 100):
        for alpha in (16, 2, -2, 3, 7, 14):
            for m in (2, 4, 8):
                cases += 1
                fast = is_power_in_quadratic_completion(alpha, m, 7, q)
                slow = is_power_in_quadratic_completion(alpha, m, 7, q, exhaustive=True)
                if fast != slow:
                    return SuiteResult("completions", cases, f"alpha={alpha} m={m} q={q}")
    return SuiteResult("completions", cases)


SUITES: List[Callable] = [
    _cornacchia,
    _legendre,
    _hilbert_reciprocity,
    _reduction,
    _inverse,
    _norms,
    _subgroups,
    _h1,
    _power_residues,
    _completions,
]


def run_all(seed: int = 0) -> List[SuiteResult]:
    rng = random.Random(seed)
    return [suite(rng) for suite in SUITES]
