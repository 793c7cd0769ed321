import numpy as np
import pytest

from monocover import bits as B
from monocover.monolith import Case, GroupSpec
from monocover.perm import count_roots, symmetric_group
from monocover.subgroups import (DiagonalType, Socle, TwistKernel, catalog_an_maximals,
                                 catalog_lookup, catalog_sn_maximals, certify_catalog, check_pr2,
                                 coset_representatives, diagonal_conditions, enumerate_maximals_G, expand,
                                 membership_product, membership_rule, named_families, normalized_cosets,
                                 oracle_member_mask, product_descriptor)


def test_a5_catalog_shape():
    cat = catalog_an_maximals(5)
    orders = sorted(e.order for e in cat)
    assert orders == [6] * 10 + [10] * 6 + [12] * 5
    assert len(catalog_sn_maximals(5)) == 22


def test_catalog_lattice_certificate_n5():
    rep = certify_catalog(5, lattice=True)
    assert rep["an_lattice_match"] and rep["sn_lattice_match"]
    assert (rep["an_count"], rep["sn_count"]) == (21, 22)


def test_a6_has_twelve_a5():
    cat = catalog_an_maximals(6)
    assert len(cat) == 52
    assert sum(1 for e in cat if e.order == 60) == 12


def test_a7_counts():
    cat = catalog_an_maximals(7)
    assert len(cat) == 93
    psl = [e for e in cat if e.label.startswith("PSL32")]
    assert len(psl) == 30 and not any(e.is_restriction for e in psl)


def test_named_families_orders():
    fams = {f.name: f for f in named_families(8)}
    assert fams["AGL32"].order == 1344 and fams["PGL27"].order == 336
    fams9 = {f.name: f for f in named_families(9)}
    assert fams9["PGamL28"].order == 1512 and fams9["AGL23"].order == 432


def test_pr2_scan():
    assert check_pr2(5)["passed"] and check_pr2(7)["passed"]


def test_coset_canonical_forms():
    sn = symmetric_group(5)
    D = product_descriptor(5, "stab(1)", ["(12)(34)"])
    assert normalized_cosets(D) == D
    assert sn.even_mask[D.a[0]]
    stab = [e.index for e in catalog_an_maximals(5) if e.label.startswith("stab")]
    assert sum(len(coset_representatives(5, i)) for i in stab) == 25


def test_maximal_counts(odd52_max, even52_max):
    assert len(odd52_max) == 162 and len(even52_max) == 282
    assert sum(isinstance(D, TwistKernel) for D in odd52_max.descriptors) == 1
    assert sum(isinstance(D, Socle) for D in even52_max.descriptors) == 1
    assert odd52_max.complete and even52_max.complete


def test_degenerate_m1_matches_s5():
    fam = enumerate_maximals_G(GroupSpec(5, 1))
    assert len(fam) == len(catalog_sn_maximals(5))
    sizes = sorted(b.bit_count() for b in fam.bits)
    assert sizes == sorted(e.group.order for e in catalog_sn_maximals(5))


def test_membership_rules_named():
    D = product_descriptor(5, "stab(1)", ["1"])
    assert membership_rule(GroupSpec(5, 2), D, 1) == "ng"
    assert membership_rule(GroupSpec(5, 2, Case.EVEN), D, 1) == "even-wreath"


def test_scalar_and_vector_membership_agree(odd52):
    G = odd52
    D = product_descriptor(5, "int(12|345)", ["(135)"])
    mask = B.to_mask(expand(G, D), G.order)
    rng = np.random.default_rng(5)
    for i in rng.integers(0, G.order, 200):
        assert membership_product(G.element(i), D) == mask[i]


def test_no_twist1_in_full_diagonal_odd(odd52):
    # twist-1 products are odd, and odd permutations have no square roots
    G = odd52
    sl = G.twist == 1
    for alpha in range(0, 120, 7):
        D = DiagonalType.full(5, alpha)
        assert not B.to_mask(expand(G, D), G.order)[sl].any()


def test_diagonal_count_identity_odd(odd52):
    """Members (x1, x2)g^k of N(Delta) with x1 x2 t = b number l_2(b) for k = 1 (here zero)."""
    G = odd52
    sn = G.sn
    sl = np.flatnonzero(G.twist == 1)
    b = sn.mul(sn.mul(G.base[sl, 0], G.base[sl, 1]), G.tau)
    roots = {int(v): count_roots(sn.perm(int(v)), 2) for v in np.unique(b)}
    for alpha in range(sn.order):
        ok = diagonal_conditions(sn, G.spec, 1, G.base[sl], DiagonalType.full(5, alpha))[1]
        counts = np.bincount(b[ok], minlength=sn.order)
        assert all(counts[v] == roots[v] for v in roots)


def test_oracle_spot_checks(even52_max, even52):
    G = even52
    for D, bits in even52_max.items()[::40]:
        assert np.array_equal(oracle_member_mask(G, D), B.to_mask(bits, G.order))


def test_catalog_lookup_errors():
    with pytest.raises(KeyError):
        catalog_lookup(5, "nonsense")
