import numpy as np
import pytest

from monocover.monolith import (AmbientElement, Case, GroupSpec, MonolithElement, WrongCaseError, element_type,
                                enumerate_group, gamma_power, in_group, product_invariant, twist_pattern)
from monocover.perm import CapacityError, Permutation, parse_cycles

ID5 = Permutation.identity(5)
TAU = parse_cycles("(12)", 5)


def test_orders():
    assert GroupSpec(5, 2, Case.EVEN).order == 7200
    assert GroupSpec(5, 2).order == 14400
    assert len(enumerate_group(GroupSpec(5, 1))) == 120
    with pytest.raises(CapacityError):
        enumerate_group(GroupSpec(9, 3))


def test_twist_patterns_m2():
    assert twist_pattern(2, 0) == (False, False)
    assert twist_pattern(2, 1) == (False, True)
    assert twist_pattern(2, 2) == (True, True)
    assert twist_pattern(2, 3) == (True, False)


def test_gamma_powers():
    spec = GroupSpec(5, 2)
    g2 = gamma_power(spec, 1) * gamma_power(spec, 1)
    assert g2 == AmbientElement((TAU, TAU), 0)
    assert (g2 * g2).is_identity()


def test_in_group_acceptance():
    spec = GroupSpec(5, 2)
    even, odd = parse_cycles("(123)", 5), parse_cycles("(12)", 5)
    assert in_group(AmbientElement((even, even), 0), spec).twist == 0
    assert in_group(AmbientElement((even, odd), 1), spec).twist == 1
    assert in_group(AmbientElement((odd, odd), 1), spec) is None


def test_identity_and_inverse_objects():
    spec = GroupSpec(5, 2)
    a = MonolithElement.parse(spec, ["(123)", "(12345)"], 3)
    one = MonolithElement.identity(spec)
    assert a * one == a and (a * a.inverse()) == one


def test_product_invariant():
    spec = GroupSpec(5, 2)
    e = MonolithElement(spec, (ID5, ID5), 1)
    assert product_invariant(e) == [TAU]
    x1, x2 = parse_cycles("(123)", 5), parse_cycles("(345)", 5)
    inv = product_invariant(MonolithElement(spec, (x1, x2), 1))[0]
    assert inv == x1 * x2 * TAU and inv.parity() == 1


def test_element_type_even():
    spec = GroupSpec(5, 2, Case.EVEN)
    x = parse_cycles("(12345)", 5)
    assert element_type(MonolithElement(spec, (x, x.inverse()), 1)).moved() == ()
    assert element_type(MonolithElement(spec, (parse_cycles("(123)", 5), ID5), 1)).moved() == (3,)
    with pytest.raises(WrongCaseError):
        element_type(MonolithElement(spec, (ID5, ID5), 0))


@pytest.mark.parametrize("fixture", ["odd52", "even52"])
def test_vectorized_matches_objects(fixture, request):
    G = request.getfixturevalue(fixture)
    rng = np.random.default_rng(11)
    a, b = rng.integers(0, G.order, 500), rng.integers(0, G.order, 500)
    ab = G.mul(a, b)
    for i in range(0, 500, 23):
        assert G.element(ab[i]) == G.element(a[i]) * G.element(b[i])
        assert G.index(G.element(a[i])) == a[i]
    assert (G.mul(a, G.inv(a)) == G.identity_index()).all()
    assert (G.twist[ab] == (G.twist[a] + G.twist[b]) % G.twist_modulus).all()
