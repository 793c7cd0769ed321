"""End-to-end acceptance checks, one PASS/FAIL line per criterion.

Criteria with a part that the mathematics does not support keep the full
assertion under a strict xfail; the parts that do hold are asserted in a
companion test.
"""
import time
from math import comb

import numpy as np
import pytest

from monocover import bits as B
from monocover.certificate import certify_a5wrc2
from monocover.cli import main
from monocover.covers import (build_target, build_theorem_cover, certify_odd_n5, check_unbeatable,
                              covers_check, lower_bound_combine, min_cover_exact, omega_closed_form, omega_set,
                              small_group, unbeatable_family_n5)
from monocover.inequalities import (HOLDS, SPOT_CHECKS, ab, compare_exact, estimprim, omega_count, sigma_formula,
                                    sweep_ab, sweep_estimprim, sweep_stirling, tremezz)
from monocover.perm import count_roots
from monocover.subgroups import DiagonalType, diagonal_conditions, expand, oracle_member_mask

LINES: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> None:
    LINES[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(LINES[k])


# -- 1: the even-case certificate --------------------------------------------------------------

@pytest.fixture(scope="module")
def even_cert():
    t0 = time.perf_counter()
    cert = certify_a5wrc2()
    return cert, time.perf_counter() - t0


def _even_parts(cert) -> dict[str, bool]:
    checks = {c.name: c for c in cert.checks}
    census = checks["census"].data
    xs = checks["x_set"].data
    return {
        "census 1/25/36/100/120": census["census"] == {"N": 1, "r": 25, "s": 36, "t": 100, "d": 120},
        "type-(3) counts 96/12/20/1200": (census["type_counts"]["(3)"] | {"total": census["totals"]["(3)"]})
        == {"N": [0], "r": [96], "s": [0], "t": [12], "d": [20], "total": 1200},
        "type-(5) counts 40/24/0/1440": census["type_counts"]["(5)"]["s"] == [40]
        and census["d_type5_by_parity"] == {"even": [24], "odd": [0]} and census["totals"]["(5)"] == 1440,
        "printed sets pairwise disjoint": xs["subchecks"]["c_P_disjoint"],
        "coset union >= 42": checks["coset_lemmas"].passed and checks["coset_lemmas"].data["min_union_3_3"] >= 42,
        "survivors then empty": cert.log.stages[1]["survivors"] == [[6, 17, 0, 32], [7, 18, 0, 30]]
        and cert.log.empty,
        "57-family covers 7200": checks["upper_cover"].passed and checks["upper_cover"].data["size"] == 57,
        "certified": cert.status == "certified",
    }


@pytest.mark.xfail(strict=True, reason="printed sets 2 and 3 share (14)(23); see README")
def test_criterion_1(even_cert):
    cert, secs = even_cert
    parts = _even_parts(cert)
    bad = [k for k, v in parts.items() if not v]
    record(1, not bad and secs < 60, f"{secs:.1f}s; failing: {', '.join(bad) or 'none'}")
    assert not bad and secs < 60


def test_criterion_1_supported_parts(even_cert):
    cert, secs = even_cert
    parts = _even_parts(cert)
    assert [k for k, v in parts.items() if not v] == ["printed sets pairwise disjoint"]
    assert secs < 60


# -- 2: the odd case at (5,2) ------------------------------------------------------------------

@pytest.fixture(scope="module")
def odd_data(odd52, odd52_max):
    G = odd52
    spec = G.spec
    cover = build_theorem_cover(spec)
    fam, forced = unbeatable_family_n5(spec)
    omega = build_target(spec, "Omega")
    rep = check_unbeatable([expand(G, D) for D in fam], omega.bits, odd52_max.bits, complete=odd52_max.complete)
    return cover, fam, forced, omega, rep


@pytest.mark.xfail(strict=True, reason="condition (4) fails on Omega; see README")
def test_criterion_2(odd52, odd52_max, odd_data):
    G = odd52
    cover, fam, forced, omega, rep = odd_data
    ok_cover = len(cover) == 126 and covers_check([expand(G, D) for D in cover.descriptors], B.full(G.order))[0]
    detail = (f"cover 126 over {G.order}: {ok_cover}; family {len(fam)} on {omega.count}: "
              f"conditions {rep.conditions}, min inside {rep.min_inside}, max outside {rep.max_outside}")
    record(2, ok_cover and rep.passed, detail)
    assert ok_cover and rep.passed and len(fam) == 26
    lb = lower_bound_combine([expand(G, D) for D in forced], odd52_max.bits, G.order, omega.bits, rep)
    assert lb.value == 126


def test_criterion_2_supported_parts(odd52, odd_data):
    G = odd52
    cover, fam, _, omega, rep = odd_data
    assert len(cover) == 126 and cover.verified and G.order == 14400
    assert len(fam) == 26 and omega.count == 1200
    assert [rep.conditions[k] for k in ("1_meets", "2_covers", "3_disjoint")] == [True] * 3
    cert = certify_odd_n5(G.spec)
    assert cert.interval == (126, 126)


# -- 3: the generic solver ----------------------------------------------------------------------

def test_criterion_3():
    t0 = time.perf_counter()
    got = {}
    for name in ("a5", "s5", "c2xc2"):
        g = small_group(name)
        res = min_cover_exact(B.full(g.order), g.bits)
        got[name] = res.lo if res.status == "exact" else None
    secs = time.perf_counter() - t0
    ok = got == {"a5": 10, "s5": 16, "c2xc2": 3} and secs < 10
    record(3, ok, f"{got}, {secs:.1f}s")
    assert ok


# -- 4: membership rules against brute-force normalizers -----------------------------------------

def test_criterion_4(odd52, even52, odd52_max, even52_max):
    bad, total = 0, 0
    for G, fam in ((odd52, odd52_max), (even52, even52_max)):
        for D, bits in fam.items():
            total += 1
            bad += int(not np.array_equal(oracle_member_mask(G, D), B.to_mask(bits, G.order)))
    record(4, bad == 0, f"{bad} disagreements over {total} subgroups x all elements")
    assert bad == 0 and total == 162 + 282


# -- 5: closed forms ----------------------------------------------------------------------------

def _expected_kind(n: int, m: int) -> str:
    if (n, m) == (9, 1):
        return "bounds"
    if n == 5:
        return "exact" if m in (1, 2, 3, 4, 6) else "bounds"
    if n == 6 or n % 2 == 1:
        return "exact"
    return "bounds"


FROZEN = {(5, 1): 16, (5, 2): 126, (6, 1): 13, (6, 2): 73, (7, 1): 64, (7, 2): 1716, (9, 2): 24310,
          (11, 1): 1024, (13, 1): 4096}


def test_criterion_5():
    problems = []
    for n in range(5, 17):
        for m in range(1, 7):
            v = sigma_formula(n, m)
            if v.kind != _expected_kind(n, m) or v.lo > v.hi:
                problems.append((n, m, str(v)))
            if n % 2 and n >= 7 and (n, m) != (9, 1):
                direct = omega_count(2 * m) + sum(comb(n, i) ** m for i in range(1, (n + 1) // 2))
                if v.value != direct:
                    problems.append((n, m, "value"))
    for key, val in FROZEN.items():
        if sigma_formula(*key).value != val:
            problems.append(key)
    even = sigma_formula(5, 2, "even")
    if not even.lo <= 57 <= even.hi:
        problems.append("even")
    nine = sigma_formula(9, 1)
    if nine.kind != "bounds" or not nine.lo <= 256 <= nine.hi:
        problems.append((9, 1))
    record(5, not problems, f"72 grid points; problems {problems}")
    assert not problems


# -- 6: inequality sweeps -----------------------------------------------------------------------

def _sweeps() -> dict[str, bool]:
    est = list(sweep_estimprim(range(21, 300)))
    return {
        "estimprim 21..299": bool(est) and all(r.holds for r in est),
        "ab n <= 64": all(r.holds for r in sweep_ab(range(8, 65))),
        "stirling n <= 10^4": all(r.holds and r.digits == 50 for r in sweep_stirling(range(1, 10_001))),
        "spot checks": all(compare_exact(lhs, rhs) == HOLDS for lhs, rhs in SPOT_CHECKS),
    }


@pytest.fixture(scope="module")
def sweeps():
    t0 = time.perf_counter()
    res = _sweeps()
    return res, time.perf_counter() - t0


@pytest.mark.xfail(strict=True, reason="the ab inequality has counterexamples such as (8,2,8); see README")
def test_criterion_6(sweeps):
    res, secs = sweeps
    bad = [k for k, v in res.items() if not v]
    record(6, not bad and secs < 120, f"{secs:.1f}s; failing: {', '.join(bad) or 'none'}")
    assert not bad and secs < 120


def test_criterion_6_supported_parts(sweeps):
    res, secs = sweeps
    assert [k for k, v in res.items() if not v] == ["ab n <= 64"]
    assert not ab(12, 4, 6).holds and all(r.holds for r in sweep_ab(range(8, 65), variant="bounded"))
    assert not estimprim(9, 3).holds


# -- 7: a hypothesis that fails while its conclusion holds ------------------------------------------

def test_criterion_7():
    rows = [tremezz(15, 3, 2, "odd"), tremezz(12, 3, 2, "even")]
    split = [(r.hypothesis, r.conclusion) for r in rows]
    ok = split == [("fails", "holds"), ("fails", "holds")]
    record(7, ok, f"(15,3,2) odd and (12,3,2) even: hypothesis/conclusion {split}")
    assert ok


# -- 8: invariants --------------------------------------------------------------------------------

def test_criterion_8(odd52, tmp_path):
    G = odd52
    sn = G.sn
    rng = np.random.default_rng(8)
    a, b, c = rng.integers(0, G.order, size=(3, 10_000))
    e = G.identity_index()
    axioms = (np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
              and np.all(G.mul(a, G.inv(a)) == e) and np.array_equal(G.mul(a, e), a))
    parity = np.array_equal(G.twist[G.mul(a, b)], (G.twist[a] + G.twist[b]) % G.twist_modulus)
    omegas = all(omega_set(G.spec, r).count == omega_closed_form(G.spec, r) for r in (1, 2))

    sl = np.flatnonzero(G.twist == 1)
    prod = sn.mul(sn.mul(G.base[sl, 0], G.base[sl, 1]), G.tau)
    roots = {int(v): count_roots(sn.perm(int(v)), 2) for v in np.unique(prod)}
    identity = True
    for alpha in range(sn.order):
        ok = diagonal_conditions(sn, G.spec, 1, G.base[sl], DiagonalType.full(5, alpha))[1]
        counts = np.bincount(prod[ok], minlength=sn.order)
        identity &= all(counts[v] == roots[v] for v in roots)

    path = tmp_path / "out.json"
    outs = []
    for _ in range(2):
        main(["sigma", "formula", "--n", "7", "--m", "2", "--format", "json", "-o", str(path)])
        outs.append(path.read_bytes())
    deterministic = outs[0] == outs[1]

    parts = {"axioms": bool(axioms), "parity": bool(parity), "omega": omegas, "diagonal count": bool(identity),
             "determinism": deterministic}
    ok = all(parts.values())
    record(8, ok, ", ".join(f"{k} {'ok' if v else 'BAD'}" for k, v in parts.items()))
    assert ok
