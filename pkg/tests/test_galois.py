import itertools

import pytest

from quadtwist.exactmath import euler_phi, iter_primes, multiplicative_order
from quadtwist.galois import (
    archimedean_subgroup,
    cyclic_subgroup,
    cyclic_subgroups,
    decomposition_group,
    fixing_subgroup_of_quadratic,
    intersect,
    is_cyclic_group,
    maximally_cyclic_subgroups,
    quadratic_character,
    quadratic_subfields,
    subgroup_generated,
    sylow2_subgroup,
    unit_group,
    units,
    whole_group,
)


def _closed(H):
    s = set(H.elements)
    n = H.n
    return all(a * b % n in s for a in s for b in s) and all(pow(a, -1, n) in s for a in s if n > 1)


@pytest.mark.parametrize("n,orders", [(39, (2, 12)), (9, (6,)), (15, (2, 4))])
def test_unit_group(n, orders):
    G = unit_group(n)
    assert G.invariants == orders
    assert G.order == euler_phi(n)
    assert whole_group(n).elements == units(n)
    for g, o in G.decomposition:
        assert multiplicative_order(g, n) == o


@pytest.mark.parametrize("n", range(2, 200))
def test_unit_group_generates(n):
    G = unit_group(n)
    assert subgroup_generated(n, [g for g, _ in G.decomposition]).elements == units(n)
    assert G.order == euler_phi(n)


@pytest.mark.parametrize("n,expected", [(9, True), (39, False), (25, True), (15, False), (2, True), (4, True), (8, False)])
def test_is_cyclic_group(n, expected):
    assert is_cyclic_group(n) is expected


@pytest.mark.parametrize("n", range(2, 120))
def test_is_cyclic_group_brute(n):
    brute = any(multiplicative_order(a, n) == euler_phi(n) for a in units(n))
    assert is_cyclic_group(n) == brute


def test_subgroup_generated_examples():
    assert subgroup_generated(39, [38]).elements == (1, 38)
    assert subgroup_generated(39, [2]).order == 12
    assert subgroup_generated(39, []).elements == (1,)


@pytest.mark.parametrize("n", range(3, 61))
def test_subgroups_closed(n):
    for H in cyclic_subgroups(n):
        assert _closed(H)
        assert 1 in H
        assert euler_phi(n) % H.order == 0


@pytest.mark.parametrize("n", range(3, 61))
def test_maximally_cyclic_exhaustive(n):
    """Every cyclic subgroup lies in a listed one; no listed one is properly
    contained in a cyclic subgroup."""
    allc = [set(cyclic_subgroup(n, a).elements) for a in units(n)]
    listed = [set(H.elements) for H in maximally_cyclic_subgroups(n)]
    for C in allc:
        assert any(C <= M for M in listed)
    for M in listed:
        assert not any(M < C for C in allc)
    assert len({frozenset(M) for M in listed}) == len(listed)


def test_maximally_cyclic_examples():
    orders = sorted(H.order for H in maximally_cyclic_subgroups(39))
    assert orders == [6, 6, 12, 12]
    assert len(maximally_cyclic_subgroups(9)) == 1
    assert maximally_cyclic_subgroups(9)[0].order == 6


def test_maximally_cyclic_15_against_full_lattice():
    n = 15
    U = units(n)
    all_subgroups = set()
    for r in range(len(U) + 1):
        for gens in itertools.combinations(U, r):
            all_subgroups.add(subgroup_generated(n, gens).elements)
    cyc = [set(H) for H in all_subgroups if any(multiplicative_order(a, n) == len(H) for a in H)]
    brute = sorted(tuple(sorted(C)) for C in cyc if not any(C < D for D in cyc))
    assert sorted(H.elements for H in maximally_cyclic_subgroups(n)) == brute


def test_decomposition_groups_39():
    D2 = decomposition_group(39, 2)
    assert D2.elements == cyclic_subgroup(39, 2).elements and D2.order == 12 and D2.is_cyclic
    D13 = decomposition_group(39, 13)
    assert D13.order == 12 and D13.is_cyclic
    D3 = decomposition_group(39, 3)
    assert D3.order == 6 and D3.is_cyclic
    assert multiplicative_order(3, 13) == 3


@pytest.mark.parametrize("q", iter_primes(2, 300))
def test_decomposition_groups_39_all_cyclic(q):
    assert decomposition_group(39, q).is_cyclic


@pytest.mark.parametrize("n", [15, 21, 35, 39, 45, 63, 105])
def test_decomposition_unramified_is_frobenius(n):
    for q in iter_primes(2, 200):
        if n % q:
            D = decomposition_group(n, q)
            assert D.elements == cyclic_subgroup(n, q).elements
            assert D.order == multiplicative_order(q, n)


@pytest.mark.parametrize("n,q", [(39, 3), (39, 13), (45, 3), (45, 5), (63, 7), (105, 5)])
def test_ramified_decomposition_order(n, q):
    """|D_q| = e f with e = phi(q^k) and f = ord of q modulo the prime-to-q part."""
    k, m = 0, n
    while m % q == 0:
        m //= q
        k += 1
    f = multiplicative_order(q, m) if m > 1 else 1
    assert decomposition_group(n, q).order == euler_phi(q**k) * f


def test_archimedean():
    assert archimedean_subgroup(39).elements == (1, 38)
    assert archimedean_subgroup(15).elements == (1, 14)
    assert archimedean_subgroup(12).elements == (1, 11)


def test_fixing_subgroup_examples():
    G1 = fixing_subgroup_of_quadratic(39, -3)
    assert G1.elements == tuple(a for a in units(39) if a % 3 == 1)
    H = fixing_subgroup_of_quadratic(39, 13)
    assert H.order == 12
    assert all((pow(a, 6, 13) == 1) for a in H.elements)
    K = fixing_subgroup_of_quadratic(15, -15)
    legendre3 = lambda a: 1 if a % 3 == 1 else -1
    legendre5 = lambda a: 1 if a % 5 in (1, 4) else -1
    assert K.elements == tuple(a for a in units(15) if legendre3(a) * legendre5(a) == 1)


def test_quadratic_subfields_examples():
    assert quadratic_subfields(13) == [13]
    assert sorted(quadratic_subfields(21)) == [-7, -3, 21]
    assert sorted(quadratic_subfields(39)) == [-39, -3, 13]
    assert sorted(quadratic_subfields(8)) == [-2, -1, 2]


@pytest.mark.parametrize("n", [8, 12, 15, 21, 24, 39, 40, 60, 105, 120])
def test_quadratic_subfields_index_two(n):
    ds = quadratic_subfields(n)
    # the quadratic subfields correspond to index-2 subgroups, whose number
    # is 2^r - 1 where r is the 2-rank of the unit group
    r = sum(1 for o in unit_group(n).invariants if o % 2 == 0)
    assert len(ds) == 2**r - 1
    for d in ds:
        H = fixing_subgroup_of_quadratic(n, d)
        assert 2 * H.order == euler_phi(n)
        assert _closed(H)
        assert all(quadratic_character(d, a) == 1 for a in H.elements)


def test_not_a_subfield():
    with pytest.raises(ValueError):
        fixing_subgroup_of_quadratic(39, 5)


def test_sylow2():
    S = sylow2_subgroup(39)
    assert S.order == 8
    orders = sorted(multiplicative_order(a, 39) for a in S.elements)
    assert orders == [1, 2, 2, 2, 4, 4, 4, 4]  # Z/2 x Z/4
    assert sylow2_subgroup(9).order == 2
    assert sylow2_subgroup(15).elements == units(15)


@pytest.mark.parametrize("n", [21, 39, 45, 63])
def test_intersect(n):
    for A in maximally_cyclic_subgroups(n):
        for d in quadratic_subfields(n):
            B = fixing_subgroup_of_quadratic(n, d)
            I = intersect(A, B)
            assert set(I.elements) == set(A.elements) & set(B.elements)
            assert _closed(I)
