import random

import numpy as np
import pytest

from monocover.perm import (CapacityError, Permutation, compose, conjugate, count_roots, format_cycles, inverse,
                            parse_cycles, symmetric_group)


def P(text, n=5):
    return parse_cycles(text, n)


def test_parse_and_format_roundtrip():
    for text in ["(2354)", "(12)(345)", "(15243)", "(14)(23)"]:
        assert format_cycles(P(text)) == text
    assert format_cycles(P("1")) == "id"
    assert parse_cycles("(1,10,11)").n == 11


@pytest.mark.parametrize("bad", ["(12", "(112)", "(16)x", "(0 1)"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_cycles(bad, 5)


def test_composition_is_a_right_action():
    # (12) then (13): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
    assert P("(12)") * P("(13)") == P("(123)")
    assert P("(12)") * P("(12)") == Permutation.identity(5)
    assert P("(123)") * P("(123)") == P("(132)")


def test_conjugate_relabels():
    assert conjugate(P("(12)"), P("(123)")) == P("(23)")
    p = P("(2354)")
    assert conjugate(p, Permutation.identity(5)) == p


def test_cycle_type_and_parity():
    ct = P("(2354)").cycle_type()
    assert ct.parts == (4, 1) and P("(2354)").parity() == 1
    assert Permutation.identity(5).cycle_type().parts == (1, 1, 1, 1, 1)
    assert P("(12)(345)").cycle_type().parts == (3, 2) and not P("(12)(345)").is_even


def test_group_axioms_random():
    rng = random.Random(7)
    pts = list(range(5))
    for _ in range(200):
        a, b, c = (Permutation(rng.sample(pts, 5), zero_based=True) for _ in range(3))
        assert compose(compose(a, b), inverse(b)) == a
        assert (a * b) * c == a * (b * c)
        assert (a * b).parity() == (a.parity() + b.parity()) % 2
        assert conjugate(a, b).cycle_type() == a.cycle_type()


def test_count_roots():
    assert count_roots(P("(12)(345)"), 1) == 1
    for p in [P("(12)"), P("(1234)"), P("(12)(345)")]:
        assert count_roots(p, 2) == 0
    assert count_roots(Permutation.identity(3), 2) == 4
    sn = symmetric_group(4)
    assert sum(count_roots(sn.perm(i), 3) for i in range(sn.order)) == 24
    with pytest.raises(CapacityError):
        count_roots(Permutation.identity(9), 2)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_enumeration_sizes(n):
    import math

    sn = symmetric_group(n)
    assert sn.order == math.factorial(n)
    assert len(sn.alternating) == math.factorial(n) // 2


def test_indexed_arithmetic_agrees_with_objects():
    sn = symmetric_group(5)
    rng = np.random.default_rng(3)
    a, b = rng.integers(0, sn.order, 300), rng.integers(0, sn.order, 300)
    prod = sn.mul(a, b)
    for i in range(0, 300, 37):
        assert sn.perm(prod[i]) == sn.perm(a[i]) * sn.perm(b[i])
    assert (sn.mul(a, sn.inv(a)) == sn.identity).all()
    big = symmetric_group(7)
    x, y = big.parse("(1234567)"), big.parse("(12)")
    assert big.perm(big.mul(x, y)) == big.perm(x) * big.perm(y)
