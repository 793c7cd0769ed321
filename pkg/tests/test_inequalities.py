from fractions import Fraction

import pytest

from monocover.inequalities import (FAILS, HOLDS, ExactReal, Expr, ParameterError, UnsupportedCaseError, ab,
                                    compare, compare_exact, corsizes, estimprim, omega_count, sigma_formula,
                                    stirling, sweep, sweep_ab, tremezz)


@pytest.mark.parametrize("x,w", [(2, 1), (4, 1), (6, 2), (12, 2), (30, 3), (1, 0)])
def test_omega_count(x, w):
    assert omega_count(x) == w


@pytest.mark.parametrize("args,text", [
    ((5, 1), "exact 16"), ((5, 2), "exact 126"), ((5, 3), "exact 1127"), ((5, 5), "bounds [100000, 103127]"),
    ((5, 7), "bounds [10000000, 10078127]"), ((6, 2), "exact 73"), ((6, 3), "exact 434"), ((7, 1), "exact 64"),
    ((7, 2), "exact 1716"), ((9, 1), "bounds [126, 256]"), ((9, 2), "exact 24310"), ((8, 2), "bounds [1225, 2074]"),
])
def test_sigma_formula(args, text):
    assert str(sigma_formula(*args)) == text


def test_sigma_even_case():
    v = sigma_formula(5, 2, "even")
    assert v.value == 57 and v.kind == "exact"
    with pytest.raises(UnsupportedCaseError):
        sigma_formula(7, 2, "even")
    with pytest.raises(ParameterError):
        sigma_formula(4, 1)


def test_compare_exact_and_strict():
    assert compare(ExactReal(Fraction(3)), ExactReal(Fraction(3))) == HOLDS
    assert compare(ExactReal(Fraction(3)), ExactReal(Fraction(3)), strict=True) == FAILS
    assert compare_exact("factorial(5)", "120") == HOLDS
    assert compare_exact("e^pi", "pi^e", strict=True) == HOLDS
    assert compare_exact("e", "pi") == FAILS


def test_expr_parse_rejects_names():
    with pytest.raises(ParameterError):
        Expr.parse("x + 1")
    assert Expr.parse("binomial(6,3)+omega(12)").exact() == 22


@pytest.mark.parametrize("lhs,rhs", [("72^6", "2*6*2520^2*504"), ("(72/21)^2", "40/7"), ("1440*144", "648*288")])
def test_spot_checks(lhs, rhs):
    assert compare_exact(lhs, rhs) == HOLDS


@pytest.mark.parametrize("n", [1, 2, 10, 100, 1000])
def test_stirling_small(n):
    assert stirling(n).holds


def test_ab_literal_counterexamples():
    for n, a, b in [(8, 2, 8), (12, 4, 6)]:
        r = ab(n, a, b)
        assert r.hypothesis == HOLDS and r.conclusion == FAILS


def test_ab_bounded_holds():
    assert all(r.holds for r in sweep_ab(range(8, 41), variant="bounded"))
    assert sum(not r.holds for r in sweep_ab(range(8, 65))) == 191


def test_estimprim():
    assert not estimprim(9, 3).holds and not estimprim(15, 3).holds
    assert all(r.holds for r in sweep("estimprim", range(21, 120)))


def test_corsizes_flags_external():
    r = corsizes(11)
    assert r.holds and r.external
    with pytest.raises(ParameterError):
        corsizes(10)


@pytest.mark.parametrize("n,case", [(15, "odd"), (12, "even")])
def test_tremezz_hypothesis_split(n, case):
    r = tremezz(n, 3, 2, case)
    assert r.hypothesis == FAILS and r.conclusion == HOLDS
