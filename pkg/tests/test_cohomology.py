import random

import pytest
from hypothesis import given, strategies as st

from quadtwist.cohomology import (
    ConditionIII,
    FiniteModule,
    InflatedClass,
    MalformedClassError,
    PlaceStatus,
    brute_force_h1,
    check_all,
    check_condition_i,
    check_condition_ii,
    check_condition_iii,
    h1_formula,
    h_sign_cyclic,
    is_trivial_on_cyclic,
    odd_reduction_crosscheck,
    random_module,
    restriction_value,
)
from quadtwist.cyclotomic import CycElem, galois_apply, gauss_sum, inv, is_rational, sqrt_minus3
from quadtwist.exactmath import INF
from quadtwist.galois import (
    cyclic_subgroup,
    cyclic_subgroups,
    fixing_subgroup_of_quadratic,
    maximally_cyclic_subgroups,
    quadratic_character,
    subgroup_generated,
    units,
)
from quadtwist.twistcert import build_class_for_prime


@pytest.fixture(scope="module")
def cls13():
    return build_class_for_prime(13)


def failing_class_21():
    """A well-formed class at n = 21 that is nontrivial on a maximal cyclic subgroup."""
    n = 21
    G1 = fixing_subgroup_of_quadratic(n, -3)
    return InflatedClass.from_lift(G1, gauss_sum(7, n) * inv(sqrt_minus3(n) + 2))


@pytest.mark.parametrize("order,i,expected", [(4, 1, 2), (3, 2, 1), (2, 5, 2), (1, 1, 1)])
def test_h_sign_cyclic(order, i, expected):
    assert h_sign_cyclic(order, i) == expected


def test_restriction_value(cls13):
    inside = next(C for C in maximally_cyclic_subgroups(39) if C.issubset(cls13.G1))
    assert restriction_value(cls13, inside) is None
    assert restriction_value(cls13, cyclic_subgroup(39, 38)) == cls13.y
    assert restriction_value(cls13, subgroup_generated(39, [])) is None


def test_restriction_value_needs_cyclic(cls13):
    with pytest.raises(ValueError):
        restriction_value(cls13, cls13.G1.__class__(39, tuple(units(39)), (2, 38)))


def test_is_trivial_on_cyclic_examples(cls13):
    # the order 12 subgroup fixing sqrt(-39)
    H2 = cyclic_subgroup(39, 2)
    assert all(quadratic_character(-39, a) == 1 for a in H2.elements)
    assert is_trivial_on_cyclic(cls13, H2) == (True, 1)
    assert is_trivial_on_cyclic(cls13, cyclic_subgroup(39, 38)) == (True, 1)
    H1 = cyclic_subgroup(39, 7)
    assert H1.issubset(cls13.G1)
    assert is_trivial_on_cyclic(cls13, H1) == (True, None)


def test_condition_i(cls13):
    ci = check_condition_i(cls13)
    assert ci.passed and ci.witness == 7
    assert galois_apply(7, cls13.lift) == -cls13.lift


def test_condition_i_fails_for_class_from_quadratic_subfield():
    n = 39
    G1 = fixing_subgroup_of_quadratic(n, -3)
    for lift in (CycElem.zeta(n, 13), (sqrt_minus3(n) * 4 + 1) * CycElem.rational(n, 1) / 7):
        cls = InflatedClass.from_lift(G1, lift)
        assert check_condition_i(cls).passed is False


def test_condition_ii_p13(cls13):
    checks = check_condition_ii(cls13)
    assert len(checks) == 4
    assert all(c.trivial for c in checks)
    assert sorted(c.subgroup.order for c in checks) == [6, 6, 12, 12]
    assert {c.norm for c in checks} <= {1, None}


def test_condition_ii_detects_failure():
    cls = failing_class_21()
    checks = check_condition_ii(cls)
    bad = [c for c in checks if not c.trivial]
    assert bad and all(c.norm == -1 for c in bad)
    assert check_all(cls).passed is False
    assert check_condition_i(cls).passed


def test_condition_iii_p13(cls13):
    ciii = check_condition_iii(cls13)
    statuses = {str(p.place): (p.status, p.decomposition_order, p.cyclic) for p in ciii.places}
    assert statuses[INF][0] == "verified-archimedean"
    assert statuses["3"] == ("verified-cyclic", 6, True)
    assert statuses["13"] == ("verified-cyclic", 12, True)
    assert ciii.unverified_count == 0 and ciii.passed


def test_condition_iii_p37():
    ciii = check_condition_iii(build_class_for_prime(37))
    assert ciii.unverified_count <= 1 and ciii.passed


def test_condition_iii_two_unverified_places_fail():
    places = (PlaceStatus(INF, "verified-archimedean", 2, True, 1),
              PlaceStatus(3, "unverified", 8, False), PlaceStatus(5, "unverified", 8, False))
    assert ConditionIII(places, True).passed is False
    assert ConditionIII(places[:2], True).passed is True
    assert ConditionIII(places[:2], False).passed is False


@pytest.mark.parametrize("p", [13, 37, 61])
def test_odd_reduction(p):
    assert odd_reduction_crosscheck(build_class_for_prime(p))


def test_odd_reduction_on_failing_class():
    assert odd_reduction_crosscheck(failing_class_21())


@pytest.mark.parametrize("p", [13, 37])
def test_cocycle_signs_outside_G1(p):
    cls = build_class_for_prime(p)
    n = cls.n
    outside = [a for a in units(n) if a not in cls.G1]
    for s in random.Random(p).sample(outside, 3):
        r = is_rational(galois_apply(s, cls.lift) * cls.lift)
        assert r in (1, -1)
        assert (cls.y.galois(s) * cls.y).is_identity()


def test_representative_independence(cls13):
    neg = InflatedClass.from_lift(cls13.G1, -cls13.lift)
    for C in cyclic_subgroups(39):
        assert is_trivial_on_cyclic(neg, C)[0] == is_trivial_on_cyclic(cls13, C)[0]


@pytest.mark.parametrize("build", [lambda: build_class_for_prime(13), failing_class_21])
def test_restriction_monotone(build):
    cls = build()
    subs = cyclic_subgroups(cls.n)
    verdict = {C.elements: is_trivial_on_cyclic(cls, C)[0] for C in subs}
    for C in subs:
        for D in subs:
            if C.issubset(D) and verdict[D.elements]:
                assert verdict[C.elements]


def test_malformed_classes():
    n = 39
    G1 = fixing_subgroup_of_quadratic(n, -3)
    with pytest.raises(MalformedClassError):
        InflatedClass.from_lift(G1, sqrt_minus3(n))  # sigma(y) y = 3
    with pytest.raises(MalformedClassError):
        InflatedClass.from_lift(cyclic_subgroup(n, 38), CycElem.one(n))  # index 12
    with pytest.raises(MalformedClassError):
        InflatedClass.from_lift(G1, CycElem.zeta(n))  # not G1-invariant


def test_h1_fixed_instances():
    assert brute_force_h1(2, FiniteModule((4,), ((3,),))).size == 2
    assert brute_force_h1(3, FiniteModule((2,), ((1,),))).size == 1
    assert brute_force_h1(2, FiniteModule((2,), ((1,),))).size == 2


def test_h1_random_instances():
    rng = random.Random(7)
    for _ in range(50):
        m, M = random_module(rng)
        assert M.order <= 1000 and m <= 12
        r = brute_force_h1(m, M)
        assert r.size == r.formula_size == h1_formula(m, M)


@given(st.integers(1, 60), st.integers(1, 12))
def test_h1_trivial_action(N, m):
    # H^1 with trivial action is Hom(Z/m, Z/N)
    import math

    assert brute_force_h1(m, FiniteModule((N,), ((1,),))).size == math.gcd(m, N)


def test_finite_module_validation():
    with pytest.raises(ValueError):
        FiniteModule((4,), ((2,),))  # not injective
    with pytest.raises(ValueError):
        FiniteModule((2, 4), ((1, 1), (1, 1)))  # not a homomorphism
    with pytest.raises(ValueError):
        brute_force_h1(2, FiniteModule((5,), ((2,),)))  # order 4 action
