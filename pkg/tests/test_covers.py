import pytest

from monocover import bits as B
from monocover.covers import (PI_N5, IncompleteFamilyError, build_target, build_theorem_cover, c_set,
                              check_unbeatable, covers_check, greedy_cover, lower_bound_combine, lp_lower_bound,
                              min_cover_exact, omega_closed_form, omega_set, pi_set, sigma_small_group, small_group,
                              theorem_cover_descriptors)
from monocover.monolith import GroupSpec
from monocover.perm import symmetric_group
from monocover.subgroups import expand

S52 = GroupSpec(5, 2)


def test_pi_list_is_ten_four_cycles():
    sn = symmetric_group(5)
    assert len(PI_N5) == 10 and pi_set(5).count == 10
    assert all(sn.cycle_type(sn.parse(p)).moved() == (4,) for p in PI_N5)


@pytest.mark.parametrize("r", [1, 2])
def test_omega_sizes(r):
    assert omega_set(S52, r).count == omega_closed_form(S52, r) == 600


def test_c_set_five_cycles():
    C = c_set(5, 5)
    assert C.count == 12
    sn = symmetric_group(5)
    elems = [int(i) for i in B.iter_indices(C.bits)]
    sylows = {frozenset(sn.power(e, k) for k in range(5)) for e in elems}
    assert len(sylows) == 6
    assert all(len(set(elems) & s) == 2 for s in sylows)
    assert c_set(5, 4).count == 0


def test_theorem_cover_126(odd52):
    cover = build_theorem_cover(S52)
    assert len(cover) == 126 and cover.verified
    bits = [expand(odd52, D) for D in cover.descriptors]
    ok, wit = covers_check(bits[:-1], B.full(odd52.order))
    assert not ok and wit is not None
    assert not any((b >> wit) & 1 for b in bits[:-1])


def test_covers_check_trivial():
    assert covers_check([], 0) == (True, None)
    assert covers_check([0b0110], 0b0100)[0]


def test_greedy_and_exact_on_small_groups():
    a5 = small_group("a5")
    g = greedy_cover(B.full(a5.order), a5.bits)
    assert len(g) == 10
    s5 = small_group("s5")
    assert len(greedy_cover(B.full(s5.order), s5.bits)) >= 16
    assert min_cover_exact(s5.bits[0], s5.bits).lo == 1


@pytest.mark.parametrize("name,value", [("a5", 10), ("s5", 16), ("c2xc2", 3), ("s3", 4), ("a4", 5), ("s4", 4)])
def test_sigma_small(name, value):
    res = sigma_small_group(name)
    assert res.status == "exact" and res.lo == res.hi == value


def test_lp_bound_below_optimum():
    s5 = small_group("s5")
    lb, frac = lp_lower_bound(B.full(s5.order), s5.bits)
    assert lb <= 16 and frac <= 16 + 1e-9


def test_budget_gives_interval():
    s5 = small_group("s5")
    res = min_cover_exact(B.full(s5.order), s5.bits, budget=1, use_lp=False)
    assert res.status == "interval" and res.lo <= 16 <= res.hi


def test_duplicate_family_fails_disjointness(odd52, odd52_max):
    omega = build_target(S52, "Omega")
    h = odd52_max.bits[1]
    rep = check_unbeatable([h, h], omega.bits, odd52_max.bits)
    assert not rep.conditions["3_disjoint"]
    with pytest.raises(IncompleteFamilyError):
        check_unbeatable([h], omega.bits, odd52_max.bits, complete=False)


def test_lower_bound_combine_empty_forced(odd52, odd52_max):
    # a toy family that is definitely unbeatable: H_2 on its own private part
    target = build_target(S52, "Omega_2")
    H2 = expand(odd52, theorem_cover_descriptors(S52)[0])
    rep = check_unbeatable([H2], target.bits, odd52_max.bits)
    assert rep.passed
    lb = lower_bound_combine([], odd52_max.bits, odd52.order, target.bits, rep)
    assert lb.value == 1
