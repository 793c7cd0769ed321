import json

import pytest

from monocover.certificate import (CHECK_NAMES, COVER_SIZE, REFUTED, EVEN_CASE_DATA, SIGMA, certify_a5wrc2,
                                   coset_envelope, pigeonhole_threshold, run_case_analysis)

FULL = {"sum", "caps", "est1", "est2", "rtd20", "cosets1", "cosets2"}


@pytest.fixture(scope="module")
def cert():
    return certify_a5wrc2()


def test_certified(cert):
    assert cert.status == "certified"
    assert cert.summary_line() == "sigma = 57 (certified)"
    assert cert.sigma()["value"] == SIGMA == COVER_SIZE + 1


def test_census_counts(cert):
    census = cert.checks[0]
    assert census.passed
    assert census.data["census"] == {"N": 1, "r": 25, "s": 36, "t": 100, "d": 120}
    assert sum(census.data["census"].values()) == 282
    assert census.data["totals"] == {"(3)": 1200, "(5)": 1440}
    assert census.data["type_counts"]["(3)"]["r"] == [96]
    assert census.data["d_type5_by_parity"] == {"even": [24], "odd": [0]}


def test_upper_cover(cert):
    up = cert.checks[1]
    assert up.passed and up.data["size"] == 57 and up.data["covers"]
    assert up.data["kinds"] == {"N": 1, "r": 20, "s": 36, "t": 0, "d": 0}


def test_printed_sets_refuted(cert):
    xs = cert.checks[2]
    assert xs.status == REFUTED and xs.establishes == ()
    assert xs.data["P_overlaps"] == {"P2∩P3": ["(14)(23)"]}
    assert xs.data["subchecks"]["c_P_as_printed"]
    assert not xs.data["subchecks"]["c_P_disjoint"]
    assert len(EVEN_CASE_DATA.P) == 4 and all(len(p) == 10 for p in EVEN_CASE_DATA.P)


def test_fiber_bound(cert):
    fb = cert.checks[3]
    assert fb.passed and fb.data["bound"] == 20 and fb.data["o_min_closed_form"]
    assert fb.data["per_fiber_hits"]["d"] == [1]


def test_coset_lemmas(cert):
    cl = cert.checks[4]
    assert cl.passed
    assert cl.data["max_pairwise_intersection"] == 2
    assert cl.data["min_union_3_3"] == 42
    assert cl.data["pigeonhole_threshold"] == pigeonhole_threshold() == 17


def test_envelope_monotone():
    vals = [coset_envelope(k) for k in range(37)]
    assert vals[:6] == [0, 10, 18, 24, 28, 30]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_case_analysis_stages(cert):
    counts = [s["count"] for s in cert.log.stages]
    assert counts == [288, 2, 0]
    assert cert.log.stages[1]["survivors"] == [[6, 17, 0, 32], [7, 18, 0, 30]]
    assert cert.log.sanity["without_rtd20"] == 39


def test_case_analysis_needs_every_constraint():
    assert run_case_analysis(FULL).empty
    for drop in ("rtd20", "cosets1", "cosets2"):
        assert not run_case_analysis(FULL - {drop}).empty


def test_skip_gives_not_established():
    c = certify_a5wrc2(skip=("type3_fiber_bound",))
    assert c.status == "NOT-ESTABLISHED" and "rtd20" not in c.log.admitted
    assert c.skipped == ["type3_fiber_bound"]
    with pytest.raises(ValueError):
        certify_a5wrc2(skip=("nope",))


def test_json_stable(cert):
    a = cert.to_json()
    assert a == certify_a5wrc2().to_json()
    assert [c["name"] for c in json.loads(a)["checks"]] == list(CHECK_NAMES)
