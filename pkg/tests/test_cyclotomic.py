from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from quadtwist.cyclotomic import (
    ConductorMismatch,
    CycElem,
    ProjUnit,
    _conductor,
    _kron_mul,
    _mul_schoolbook,
    cyclotomic_polynomial,
    galois_apply,
    gauss_sum,
    inv,
    inv_euclid,
    is_fixed_by,
    is_fixed_mod_sign,
    is_rational,
    norm_over,
    norm_over_naive,
    sqrt_minus3,
    sqrt_of_squarefree,
)
from quadtwist.exactmath import euler_phi, legendre_symbol
from quadtwist.galois import (
    cyclic_subgroup,
    fixing_subgroup_of_quadratic,
    maximally_cyclic_subgroups,
    quadratic_subfields,
    subgroup_generated,
    units,
    whole_group,
)

CONDUCTORS = [3, 12, 15, 39]


def elements(n, lo=-6, hi=6, max_den=5):
    coeff = st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))
    return st.lists(coeff, min_size=euler_phi(n), max_size=euler_phi(n)).map(
        lambda c: CycElem.from_coeffs(n, c)
    )


def field_and_elements(k):
    return st.sampled_from(CONDUCTORS).flatmap(lambda n: st.tuples(*[elements(n)] * k))


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", list(range(1, 80)) + [105, 157, 471])
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]


def test_divisor_identity_39():
    prod = [1]
    for d in (1, 3, 13, 39):
        prod = _mul_schoolbook(prod, cyclotomic_polynomial(d))
    assert len(cyclotomic_polynomial(39)) == 25
    assert prod == [-1] + [0] * 38 + [1]


@given(st.lists(st.integers(-10**9, 10**9), min_size=1, max_size=60),
       st.lists(st.integers(-10**9, 10**9), min_size=1, max_size=60))
def test_kronecker_product_matches_schoolbook(a, b):
    assert _kron_mul(a, b) == _mul_schoolbook(a, b)


@given(st.sampled_from([1, 2, 3, 4, 12, 15, 21, 39, 45, 63, 105, 111]).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(-100, 100), min_size=1, max_size=3 * n))))
def test_barrett_reduction_matches_table(args):
    n, v = args
    c = _conductor(n)
    assert c.reduce(v) == c.reduce_table(v)


def test_sum_of_primitive_cube_roots():
    z = CycElem.zeta(3)
    assert z + z * z == -1
    assert is_rational(z + z * z) == -1


@pytest.mark.parametrize("n", [3, 7, 12, 39])
def test_inverse_of_zeta(n):
    assert inv(CycElem.zeta(n)) == CycElem.zeta(n, n - 1)


@given(field_and_elements(3))
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x - x == 0


@given(field_and_elements(1))
def test_inverse(xs):
    (x,) = xs
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            inv(x)
        return
    y = inv(x)
    assert x * y == 1
    assert y == inv_euclid(x)


def test_mixed_conductors_rejected():
    with pytest.raises(ConductorMismatch):
        CycElem.zeta(3) + CycElem.zeta(5)


@pytest.mark.parametrize("n", [3, 15, 39])
def test_sqrt_minus3(n):
    s = sqrt_minus3(n)
    assert s * s == -3
    assert galois_apply(n - 1, s) == -s


def test_sqrt_minus3_coordinates_at_3():
    assert sqrt_minus3(3).coeffs == (1, 2)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 37])
def test_gauss_sum_square(p):
    g = gauss_sum(p, p)
    assert g * g == legendre_symbol(-1, p) * p
    g3 = gauss_sum(p, 3 * p)
    assert g3 * g3 == legendre_symbol(-1, p) * p


def test_gauss_sum_examples():
    g = gauss_sum(13, 39)
    assert g * g == 13
    assert galois_apply(38, g) == g
    h = gauss_sum(7, 21)
    assert h * h == -7


@given(st.sampled_from([p for p in [3, 5, 7, 11, 13]]), st.data())
def test_gauss_sum_twist_law(p, data):
    n = 3 * p if p != 3 else 9
    a = data.draw(st.sampled_from(units(n)))
    g = gauss_sum(p, n)
    assert galois_apply(a, g) == legendre_symbol(a, p) * g


@pytest.mark.parametrize("n", [8, 12, 15, 21, 24, 39, 40])
def test_sqrt_of_squarefree(n):
    for d in quadratic_subfields(n):
        r = sqrt_of_squarefree(n, d)
        assert r * r == d
        H = fixing_subgroup_of_quadratic(n, d)
        assert is_fixed_by(H, r)
        assert H.order * 2 == euler_phi(n)


def test_sigma_2_on_zeta3():
    z = CycElem.zeta(3)
    assert galois_apply(2, z) == -1 - z


@given(st.sampled_from([12, 15, 39]).flatmap(
    lambda n: st.tuples(elements(n), st.sampled_from(units(n)), st.sampled_from(units(n)))))
def test_galois_is_action_by_ring_automorphisms(args):
    x, a, b = args
    n = x.n
    assert galois_apply(a, galois_apply(b, x)) == galois_apply(a * b % n, x)
    assert galois_apply(1, x) == x
    y = x * x + 1
    assert galois_apply(a, x * y) == galois_apply(a, x) * galois_apply(a, y)
    assert galois_apply(a, x + y) == galois_apply(a, x) + galois_apply(a, y)


def test_norm_examples():
    n = 39
    assert norm_over(whole_group(n), CycElem.zeta(n)) == 1
    x = CycElem.from_coeffs(n, [Fraction(k, 3) for k in range(24)])
    assert norm_over(subgroup_generated(n, []), x) == x


@given(st.sampled_from([15, 21, 39]).flatmap(lambda n: st.tuples(elements(n), elements(n), st.data())))
def test_norm_multiplicative_and_matches_naive(args):
    x, y, data = args
    n = x.n
    gens = data.draw(st.lists(st.sampled_from(units(n)), max_size=3))
    C = subgroup_generated(n, gens)
    assert norm_over(C, x * y) == norm_over(C, x) * norm_over(C, y)
    assert norm_over(C, x) == norm_over_naive(C.elements, x)


@given(elements(39, -3, 3, 2))
def test_absolute_norm_is_rational(x):
    assert is_rational(norm_over(whole_group(39), x)) is not None


def test_norm_naive_on_every_maximal_cyclic_subgroup():
    x = sqrt_minus3(39) + gauss_sum(13, 39)
    for C in maximally_cyclic_subgroups(39):
        assert norm_over(C, x) == norm_over_naive(C.elements, x)


@given(field_and_elements(2))
def test_projunit(xy):
    x, y = xy
    if x.is_zero() or y.is_zero():
        return
    assert ProjUnit(-x) == ProjUnit(x)
    assert ProjUnit(x) * ProjUnit(y) == ProjUnit(-x) * ProjUnit(y) == ProjUnit(x * y)
    assert (ProjUnit(x) * ProjUnit(x).inv()).is_identity()


def test_fixed_mod_sign_lift_of_theorem_class():
    n = 39
    s = sqrt_minus3(n)
    lift = (s * 1 + 6) * inv(s * gauss_sum(13, n))
    G1 = fixing_subgroup_of_quadratic(n, -3)
    assert is_fixed_mod_sign(G1, ProjUnit(lift))
    assert not is_fixed_by(G1, lift)
    tau = 7
    assert tau in G1 and galois_apply(tau, lift) == -lift
    # complex conjugation sends the lift to its inverse
    assert norm_over(cyclic_subgroup(n, 38), lift) == 1
