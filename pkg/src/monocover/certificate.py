"""Finite replay of the lower-bound argument for sigma(A_5 wr C_2) = 57.

Elements (x, y)e of G - N are the twist-1 elements of the even-case group
at (n, m) = (5, 2).  Their type is the cycle shape of x*y.  Every step that
feeds the closing integer search is a named check; a constraint enters the
search only if the check that supports it passed.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Callable

import numpy as np

from . import bits as B
from .covers import check_unbeatable, covers_check
from .monolith import Case, GroupSpec, enumerate_group
from .perm import format_cycles
from .subgroups import (DiagonalType, ProductType, Socle, catalog_an_maximals, enumerate_maximals_G,
                        oracle_member_mask)

SPEC = GroupSpec(5, 2, Case.EVEN)
SIGMA = 57
COVER_SIZE = SIGMA - 1  # a hypothetical smaller cover, padded to this size

PASS, FAIL, REFUTED, SKIPPED = "pass", "fail", "refuted", "skipped"
CHECK_NAMES = ("census", "upper_cover", "x_set", "type3_fiber_bound", "coset_lemmas")


@dataclass(frozen=True)
class EvenCaseData:
    a: tuple[str, ...]
    J: tuple[tuple[str, ...], ...]
    P: tuple[tuple[str, ...], ...]
    type_counts: dict = field(default_factory=dict, hash=False, compare=False)


EVEN_CASE_DATA = EvenCaseData(
    a=("(243)", "(143)", "(142)", "(132)"),
    J=(
        ("(452)", "(12534)", "(13425)", "(14)(35)", "(23)(15)"),
        ("(134)", "(245)", "(123)", "(152)", "(125)"),
        ("(142)", "(132)", "(134)", "(153)", "(135)"),
        ("(132)", "(142)", "(243)", "(154)", "(145)"),
    ),
    P=(
        ("(25)(34)", "(12)(35)", "(135)", "(14532)", "(15)(24)", "(125)(34)", "(1352)", "(35)", "(132)(45)",
         "(24)"),
        ("1", "(15243)", "(14)(23)", "(14352)", "(14325)", "(25)", "(1543)", "(14)(253)", "(1435)", "(1432)"),
        ("(124)", "(14)(23)", "(234)", "(14253)", "(14235)", "(124)(35)", "(14)(235)", "(2354)", "(1425)",
         "(1423)"),
        ("(123)", "(13)(24)", "(12)(34)", "(13254)", "(13245)", "(123)(45)", "(13)(245)", "(12)(345)", "(1325)",
         "(1324)"),
    ),
    type_counts={
        "(3)": {"r": 96, "t": 12, "d": 20, "total": 1200},
        "(5)": {"s": 40, "d_even": 24, "d_odd": 0, "total": 1440},
        "census": {"N": 1, "r": 25, "s": 36, "t": 100, "d": 120},
    },
)


@dataclass
class CheckResult:
    name: str
    status: str
    data: dict
    establishes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "establishes": list(self.establishes),
                "data": self.data}


@dataclass(frozen=True)
class Constraint:
    name: str
    text: str
    source: str
    holds: Callable[[int, int, int, int], bool] = field(repr=False, compare=False)

    def to_dict(self) -> dict:
        return {"name": self.name, "text": self.text, "source": self.source}


@dataclass
class CaseAnalysisLog:
    constraints: list[Constraint]
    admitted: list[str]
    stages: list[dict]
    survivors: list[tuple[int, int, int, int]]
    sanity: dict

    @property
    def empty(self) -> bool:
        return not self.survivors

    def to_dict(self) -> dict:
        return {
            "constraints": [c.to_dict() for c in self.constraints],
            "admitted": self.admitted,
            "stages": self.stages,
            "survivors": [list(s) for s in self.survivors],
            "sanity": self.sanity,
        }


class CertificateError(AssertionError):
    pass


def coset_envelope(k: int) -> int:
    """Least possible union of k distinct Sylow-5-normalizer cosets, monotone in k."""
    return max((10 * j - j * (j - 1) for j in range(k + 1)), default=0)


def _fmt(sn, i) -> str:
    return format_cycles(sn.perm(int(i)))


class EvenCase:
    """The enumerated group with its 282 maximal subgroups sorted into the five types."""

    def __init__(self, data: EvenCaseData = EVEN_CASE_DATA):
        self.data = data
        self.G = enumerate_group(SPEC)
        self.sn = self.G.sn
        self.family = enumerate_maximals_G(SPEC)
        self.catalog = catalog_an_maximals(5)
        self.kinds: list[str] = []
        for D in self.family.descriptors:
            self.kinds.append(self._kind(D))
        self.kinds_arr = np.array(self.kinds)
        self.rows = np.array([B.to_mask(b, self.G.order) for b in self.family.bits])
        self.codes = self.G.type_codes()
        self.one = self.G.twist == 1

    def _kind(self, D) -> str:
        if isinstance(D, Socle):
            return "N"
        if isinstance(D, DiagonalType):
            return "d"
        if isinstance(D, ProductType):
            label = D.label
            return "r" if label.startswith("stab") else "s" if label.startswith("D10") else "t"
        raise CertificateError(f"unexpected maximal subgroup {D!r}")

    def of_kind(self, kind: str) -> np.ndarray:
        return np.flatnonzero(self.kinds_arr == kind)

    def element(self, x: int, y: int, twist: int = 1) -> int:
        return int(self.G.index_of(np.array([twist]), np.array([[x, y]]))[0])

    def text(self, i: int) -> str:
        return self.family.descriptors[i].text()

    def element_text(self, e: int) -> str:
        x, y = self.G.base[e]
        return f"({_fmt(self.sn, x)}, {_fmt(self.sn, y)})" + ("e" if self.G.twist[e] else "")

    @cached_property
    def x_set(self) -> list[int]:
        sn = self.sn
        out = []
        for a_text, J in zip(self.data.a, self.data.J):
            a = sn.parse(a_text)
            for xt in J:
                x = sn.parse(xt)
                out.append(self.element(x, int(sn.mul(sn.inv(x), a))))
        return out

    def point_image(self, g: int, p: int) -> int:
        return int(self.sn.images[int(g)][p - 1]) + 1

    def set_image(self, g: int, pts) -> frozenset[int]:
        return frozenset(self.point_image(g, p) for p in pts)

    @staticmethod
    def label_sets(label: str) -> tuple[frozenset[int], ...]:
        inner = label[label.index("(") + 1:label.index(")")]
        return tuple(frozenset(int(c) for c in part) for part in inner.split("|"))


# -- checks -----------------------------------------------------------------------------------

def verify_census(S: EvenCase) -> CheckResult:
    G, sn, rows, codes = S.G, S.sn, S.rows, S.codes
    expect = S.data.type_counts
    problems: list[str] = []
    counts = {k: int((S.kinds_arr == k).sum()) for k in "Nrstd"}
    if counts != expect["census"]:
        problems.append(f"census {counts}")

    per_type: dict[str, dict[str, list[int]]] = {}
    for shape in ("(3)", "(5)"):
        col = codes == shape
        hits = rows[:, col].sum(axis=1)
        per_type[shape] = {k: sorted(set(int(h) for h in hits[S.of_kind(k)])) for k in "Nrstd"}
    totals = {"(3)": int((codes == "(3)").sum()), "(5)": int((codes == "(5)").sum())}
    want3 = {"N": [0], "r": [96], "s": [0], "t": [12], "d": [20]}
    if per_type["(3)"] != want3:
        problems.append(f"type (3) counts {per_type['(3)']}")
    if totals != {"(3)": expect["(3)"]["total"], "(5)": expect["(5)"]["total"]}:
        problems.append(f"totals {totals}")
    for k in "Nrt":
        if per_type["(5)"][k] != [0]:
            problems.append(f"type (5) in {k}")
    if per_type["(5)"]["s"] != [40]:
        problems.append("type (5) in s")
    d_by_parity = {0: set(), 1: set()}
    col5 = codes == "(5)"
    for i in S.of_kind("d"):
        alpha = S.family.descriptors[i].conj[1]
        d_by_parity[int(sn.parity[alpha])].add(int(rows[i, col5].sum()))
    if d_by_parity != {0: {24}, 1: {0}}:
        problems.append(f"type (5) in d by parity {d_by_parity}")

    # the literal membership rules, against the enumerated subgroups
    x, y = G.base[:, 0], G.base[:, 1]
    rule_mismatch = []
    for i, D in enumerate(S.family.descriptors):
        if isinstance(D, ProductType):
            Mm = S.catalog[D.M].group.mask
            l = D.a[0]
            li = sn.inv(l)
            want = np.where(S.one, Mm[sn.mul(x, li)] & Mm[sn.mul(l, y)], Mm[x] & Mm[sn.mul(sn.mul(l, y), li)])
            size = S.catalog[D.M].order ** 2
        elif isinstance(D, DiagonalType):
            al = D.conj[1]
            z = sn.mul(al, y)
            want = np.where(S.one, sn.mul(z, z) == sn.mul(x, y), y == sn.conj(x, al))
            size = 60
        else:
            want = ~S.one
            size = 3600
        if not np.array_equal(want, rows[i]) or int(rows[i][~S.one].sum()) != size:
            rule_mismatch.append(S.text(i))
    if rule_mismatch:
        problems.append(f"membership rule mismatch: {rule_mismatch[:5]}")

    # xy in M for product types
    for i in np.concatenate([S.of_kind("r"), S.of_kind("s"), S.of_kind("t")]):
        D = S.family.descriptors[i]
        inside = rows[i] & S.one
        if not S.catalog[D.M].group.mask[sn.mul(x[inside], y[inside])].all():
            problems.append(f"xy outside M for {S.text(i)}")

    # one subgroup of each type against the generated subgroup
    oracle = {}
    for k in "Nrstd":
        i = int(S.of_kind(k)[0])
        ok = bool(np.array_equal(oracle_member_mask(G, S.family.descriptors[i]), rows[i]))
        oracle[S.text(i)] = ok
        if not ok:
            problems.append(f"oracle mismatch {S.text(i)}")

    # (5-cycle, 3-cycle) lies only in the socle
    fives, threes = sn.indices_of_type(5), sn.indices_of_type(3)
    pairs = np.array([[f, t] for f in fives for t in threes])
    idx = G.index_of(np.zeros(len(pairs), dtype=np.int64), pairs)
    holders = set(S.kinds_arr[np.flatnonzero(rows[:, idx].any(axis=1))].tolist())
    witness = S.element_text(int(idx[0]))
    if holders != {"N"}:
        problems.append(f"(5-cycle, 3-cycle) elements also in {holders - {'N'}}")

    data = {
        "census": counts,
        "type_counts": per_type,
        "d_type5_by_parity": {"even": sorted(d_by_parity[0]), "odd": sorted(d_by_parity[1])},
        "totals": totals,
        "membership_rules_checked": len(S.family),
        "oracle_spot_checks": oracle,
        "socle_witness": witness,
        "socle_witness_holders": sorted(holders),
        "problems": problems,
    }
    return CheckResult("census", FAIL if problems else PASS, data,
                       () if problems else ("N_in_cover", "sum", "est1", "est2", "caps"))


def upper_family(S: EvenCase) -> list[int]:
    keep = []
    for i, k in enumerate(S.kinds):
        D = S.family.descriptors[i]
        if k in "Ns" or (k == "r" and D.label in ("stab(1)", "stab(2)", "stab(3)", "stab(4)")):
            keep.append(i)
    return keep


def verify_upper_cover(S: EvenCase) -> CheckResult:
    fam = upper_family(S)
    bits = [S.family.bits[i] for i in fam]
    ok, _ = covers_check(bits, B.full(S.G.order))
    kinds = {k: sum(1 for i in fam if S.kinds[i] == k) for k in "Nrstd"}
    s_member = next(j for j, i in enumerate(fam) if S.kinds[i] == "s")
    _, w1 = covers_check(bits[:s_member] + bits[s_member + 1:], B.full(S.G.order))
    n_member = next(j for j, i in enumerate(fam) if S.kinds[i] == "N")
    _, w2 = covers_check(bits[:n_member] + bits[n_member + 1:], B.full(S.G.order))
    problems = []
    if len(fam) != SIGMA or kinds != {"N": 1, "r": 20, "s": 36, "t": 0, "d": 0}:
        problems.append(f"family shape {kinds}")
    if not ok:
        problems.append("family does not cover G")
    if w1 is None or S.codes[w1] != "(5)":
        problems.append("dropping a type-s member should leave a type (5) element uncovered")
    if w2 is None or S.G.twist[w2] != 0:
        problems.append("dropping N should leave a socle element uncovered")
    data = {
        "size": len(fam),
        "kinds": kinds,
        "covers": ok,
        "members": [S.text(i) for i in fam],
        "drop_s_witness": None if w1 is None else S.element_text(w1),
        "drop_N_witness": None if w2 is None else S.element_text(w2),
        "problems": problems,
    }
    return CheckResult("upper_cover", FAIL if problems else PASS, data, () if problems else ("upper_57",))


def computed_p_sets(S: EvenCase) -> list[set[int]]:
    sn = S.sn
    out = []
    for a_text, J in zip(S.data.a, S.data.J):
        a = sn.parse(a_text)
        fixed = sn.perm(a).fixed_points()
        tau = sn.parse(f"({fixed[0]}{fixed[1]})")
        P = set()
        for xt in J:
            x = sn.parse(xt)
            xyx = int(sn.mul(a, x))
            P.add(xyx)
            P.add(int(sn.mul(tau, xyx)))
        out.append(P)
    return out


def verify_x_set(S: EvenCase) -> CheckResult:
    """Replays every claim behind 'the 20 stabilizer types are definitely unbeatable on X'."""
    sn, rows = S.sn, S.rows
    X = S.x_set
    xb = B.from_indices(X)
    failures: list[str] = []
    sub: dict[str, bool] = {}

    H = [i for i in S.of_kind("r") if S.family.descriptors[i].label != "stab(5)"]
    per_x = rows[np.ix_(H, X)].sum(axis=0)
    sub["each_x_in_one_H"] = bool((per_x == 1).all()) and len(set(X)) == 20

    # (a) distinct right cosets of K_i
    ok_a = True
    K_labels = []
    for a_text, J in zip(S.data.a, S.data.J):
        a = sn.parse(a_text)
        Ks = [e for e in S.catalog if e.label.startswith("int") and e.group.mask[a]]
        if len(Ks) != 1:
            ok_a = False
            continue
        K = Ks[0]
        K_labels.append(K.label)
        xs = [sn.parse(t) for t in J]
        for u, v in combinations(xs, 2):
            if K.group.mask[sn.mul(u, sn.inv(v))]:
                ok_a = False
                failures.append(f"J entries {_fmt(sn, u)} and {_fmt(sn, v)} share a coset of {K.label}")
    sub["a_distinct_cosets"] = ok_a

    def hits(kind):
        idx = S.of_kind(kind)
        h = rows[np.ix_(idx, X)].sum(axis=1)
        return idx, h

    t_idx, t_hits = hits("t")
    sub["b_t_meets_at_most_one"] = bool((t_hits <= 1).all())
    for i in t_idx[t_hits > 1]:
        failures.append(f"{S.text(i)} contains {int(rows[i, X].sum())} elements of X")

    printed = [{sn.parse(p) for p in P} for P in S.data.P]
    computed = computed_p_sets(S)
    sub["c_P_as_printed"] = printed == computed
    sub["c_P_sizes"] = all(len(P) == 10 for P in printed)
    overlaps = {}
    for i, j in combinations(range(4), 2):
        common = printed[i] & printed[j]
        if common:
            overlaps[f"P{i + 1}∩P{j + 1}"] = sorted(_fmt(sn, p) for p in common)
    sub["c_P_disjoint"] = not overlaps
    for k, v in overlaps.items():
        failures.append(f"{k} = {{{', '.join(v)}}}")

    d_idx, d_hits = hits("d")
    sub["d_d_meets_at_most_one"] = bool((d_hits <= 1).all())
    for i in d_idx[d_hits > 1]:
        failures.append(f"{S.text(i)} contains {int(rows[i, X].sum())} elements of X")

    # the determination of alpha from an element of X
    det_ok = True
    for e in X:
        x, y = S.G.base[e]
        xy = int(sn.mul(x, y))
        xyx = int(sn.mul(xy, x))
        fixed = sn.perm(xy).fixed_points()
        tau = sn.parse(f"({fixed[0]}{fixed[1]})")
        for i in d_idx[rows[d_idx, e]]:
            al = S.family.descriptors[i].conj[1]
            want = xyx if sn.parity[al] == 0 else int(sn.mul(tau, xyx))
            det_ok &= al == want
    sub["alpha_determined"] = bool(det_ok)

    s_idx, s_hits = hits("s")
    sub["e_s_misses"] = bool((s_hits == 0).all())

    r5 = [i for i in S.of_kind("r") if S.family.descriptors[i].label == "stab(5)"]
    r5_hits = {S.text(i): int(rows[i, X].sum()) for i in r5}
    for k, v in r5_hits.items():
        if v > 1:
            failures.append(f"{k} contains {v} elements of X")

    report = check_unbeatable([S.family.bits[i] for i in H], xb, S.family.bits, S.family.complete)
    sub["f_unbeatable"] = report.passed
    ok = all(sub.values())
    data = {
        "x_set": [S.element_text(e) for e in X],
        "K_i": K_labels,
        "subchecks": sub,
        "P_overlaps": overlaps,
        "stab5_hits": r5_hits,
        "unbeatable": report.to_dict(),
        "failures": failures,
    }
    return CheckResult("x_set", PASS if ok else REFUTED, data, ("rtd20",) if ok else ())


def _o_min_table() -> dict[tuple[int, int], int]:
    pts = range(1, 6)
    out = {}
    for a in range(6):
        for b in range(6):
            best = None
            for U in combinations(pts, a):
                for V in combinations(pts, b):
                    c = sum(1 for i in U for k in V if i != k)
                    best = c if best is None else min(best, c)
            out[(a, b)] = best
    return out


def fiber_minimum(o_min: dict[tuple[int, int], int], d_max: int = 120) -> tuple[int, tuple[int, ...], int]:
    """min over u in {0..5}^5 and D of sum(5-u) + D + sum_P max(0, ceil((3 o(u_p,u_q) - D)/6))."""
    us = np.array(list(product(range(6), repeat=5)), dtype=np.int64)
    table = np.array([[o_min[(a, b)] for b in range(6)] for a in range(6)], dtype=np.int64)
    pairs = list(combinations(range(5), 2))
    O = np.stack([table[us[:, p], us[:, q]] for p, q in pairs], axis=1)  # (7776, 10)
    D = np.arange(d_max + 1, dtype=np.int64)
    need = np.maximum(0, -((D[None, None, :] - 3 * O[:, :, None]) // 6))  # ceil((3o-D)/6)
    total = (5 - us).sum(axis=1)[:, None] + D[None, :] + need.sum(axis=1)
    flat = int(np.argmin(total))
    ui, di = divmod(flat, d_max + 1)
    return int(total.min()), tuple(int(v) for v in us[ui]), int(di)


def verify_type3_fiber_bound(S: EvenCase) -> CheckResult:
    """r + t + d >= 20 from how each maximal subgroup meets the fibers x*y = c, c a 3-cycle."""
    sn, rows, G = S.sn, S.rows, S.G
    alt = sn.alternating
    problems: list[str] = []
    fibers = {}
    for c in sn.indices_of_type(3):
        ys = sn.mul(sn.inv(alt), int(c))
        fibers[int(c)] = G.index_of(np.ones(len(alt), dtype=np.int64), np.stack([alt, ys], axis=1))

    pair_ok = True
    shape = {"r": set(), "t": set(), "d": set(), "s": set(), "N": set()}
    for c, idx in fibers.items():
        cp = sn.perm(c)
        fixed = cp.fixed_points()
        supp = frozenset(cp.support())
        p, q = fixed
        images = [(S.point_image(x, p), S.point_image(x, q)) for x in alt]
        if set(Counter(images).values()) != {3} or len(set(images)) != 20:
            pair_ok = False
        sub = rows[:, idx]
        for i, k in enumerate(S.kinds):
            got = sub[i]
            D = S.family.descriptors[i]
            if k == "r":
                pt = int(D.label[5:-1])
                j = S.point_image(D.a[0], pt)
                want = np.array([cp(pt) == pt and S.point_image(x, pt) == j for x in alt])
            elif k == "t":
                T = next(s for s in S.label_sets(D.label) if len(s) == 3)
                T2 = S.set_image(D.a[0], T)
                want = np.array([supp == T and S.set_image(x, T) == T2 for x in alt])
            elif k == "d":
                want = None
                if got.sum() != 1:
                    problems.append(f"{S.text(i)} meets the fiber of {_fmt(sn, c)} in {int(got.sum())}")
                shape["d"].add(int(got.sum()))
                continue
            else:
                want = np.zeros(len(alt), dtype=bool)
            if not np.array_equal(got, want):
                problems.append(f"{S.text(i)} on the fiber of {_fmt(sn, c)}")
            shape[k].add(int(got.sum()))
    if not pair_ok:
        problems.append("fixed-point images do not parametrize the fibers in threes")

    o_min = _o_min_table()
    closed = all(o_min[(a, b)] == a * b - min(a, b) for a in range(6) for b in range(6))
    if not closed:
        problems.append("o_min differs from ab - min(a, b)")
    value, u, D = fiber_minimum(o_min)
    if value < 20:
        problems.append(f"fiber bound only gives {value}")
    data = {
        "fibers": len(fibers),
        "fiber_size": 60,
        "per_fiber_hits": {k: sorted(v) for k, v in shape.items()},
        "o_min_closed_form": closed,
        "bound": value,
        "argmin": {"u": list(u), "D": D},
        "problems": problems,
    }
    return CheckResult("type3_fiber_bound", FAIL if problems else PASS, data, () if problems else ("rtd20",))


def _normalizer_cosets(S: EvenCase) -> dict[str, list[int]]:
    sn = S.sn
    out = {}
    for e in S.catalog:
        if not e.label.startswith("D10"):
            continue
        seen = []
        for l in sn.alternating:
            cos = B.from_indices(sn.mul(e.group.indices, int(l)))
            if cos not in seen:
                seen.append(cos)
        out[e.label] = seen
    return out


def pigeonhole_threshold(groups: int = 6, per_group: int = 6, need: int = 3) -> int:
    """Least total of missing cosets forcing two groups with at least ``need`` each."""
    worst = max(sum(dist) for dist in product(range(per_group + 1), repeat=groups)
                if sum(1 for v in dist if v >= need) < 2)
    return worst + 1


def verify_coset_lemmas(S: EvenCase) -> CheckResult:
    sn, rows = S.sn, S.rows
    problems: list[str] = []
    cosets = _normalizer_cosets(S)
    flat = [(lab, c) for lab, cs in cosets.items() for c in cs]
    max_inter = max((a & b).bit_count() for (_, a), (_, b) in combinations(flat, 2))
    same = max((a & b).bit_count() for (la, a), (lb, b) in combinations(flat, 2) if la == lb)
    if max_inter != 2 or same != 0:
        problems.append(f"coset intersections: max {max_inter}, within one normalizer {same}")

    min_union, worst = None, None
    labs = sorted(cosets)
    for h, k in combinations(labs, 2):
        for A in combinations(cosets[h], 3):
            ua = A[0] | A[1] | A[2]
            for C in combinations(cosets[k], 3):
                u = (ua | C[0] | C[1] | C[2]).bit_count()
                if min_union is None or u < min_union:
                    min_union, worst = u, (h, k)
    configs = len(labs) * (len(labs) - 1) // 2 * 20 * 20
    if min_union < 42:
        problems.append(f"3+3 coset union only {min_union}")

    # forced diagonals: for type s with coset Ml, its type (5) elements force alpha = c^2 x
    codes5 = S.codes == "(5)"
    forced_ok = True
    s_idx = S.of_kind("s")
    for i in s_idx:
        D = S.family.descriptors[i]
        elems = np.flatnonzero(rows[i] & codes5)
        holders = rows[:, elems]
        others = set(S.kinds_arr[np.flatnonzero(holders.any(axis=1))].tolist()) - {"s", "d"}
        s_holders = np.flatnonzero(holders[s_idx].any(axis=1))
        if others or len(s_holders) != 1:
            forced_ok = False
        alphas = set()
        for e in elems:
            x, y = S.G.base[e]
            c = int(sn.mul(x, y))
            want = int(sn.mul(sn.mul(c, c), x))
            ds = [S.family.descriptors[j].conj[1] for j in S.of_kind("d") if rows[j, e]]
            if ds != [want]:
                forced_ok = False
            alphas.add(want)
        Ml = set(int(v) for v in sn.mul(S.catalog[D.M].group.indices, int(D.a[0])))
        if alphas != Ml:
            forced_ok = False
    if not forced_ok:
        problems.append("forced diagonal set differs from the coset Ml")

    threshold = pigeonhole_threshold()
    k4_same = (cosets[labs[0]][0] | cosets[labs[0]][1] | cosets[labs[0]][2] | cosets[labs[0]][3]).bit_count()
    data = {
        "cosets": len(flat),
        "max_pairwise_intersection": max_inter,
        "max_intersection_same_normalizer": same,
        "min_union_3_3": min_union,
        "min_union_pair": list(worst),
        "configurations": configs,
        "forced_alpha_is_coset": forced_ok,
        "envelope": {k: coset_envelope(k) for k in range(37)},
        "k4_one_normalizer": k4_same,
        "pigeonhole_threshold": threshold,
        "problems": problems,
    }
    return CheckResult("coset_lemmas", FAIL if problems else PASS, data, () if problems else ("cosets1", "cosets2"))


CHECKS: dict[str, Callable[[EvenCase], CheckResult]] = {
    "census": verify_census,
    "upper_cover": verify_upper_cover,
    "x_set": verify_x_set,
    "type3_fiber_bound": verify_type3_fiber_bound,
    "coset_lemmas": verify_coset_lemmas,
}


# -- the integer search -------------------------------------------------------------------------

def constraint_system(threshold: int = 17) -> list[Constraint]:
    return [
        Constraint("sum", "r+s+t+d = 55", "census", lambda r, s, t, d: r + s + t + d == COVER_SIZE - 1),
        Constraint("caps", "r<=25, s<=36, t<=100, d<=120", "census",
                   lambda r, s, t, d: r <= 25 and s <= 36 and t <= 100 and d <= 120),
        Constraint("est1", "24r+3t+5d >= 300", "census", lambda r, s, t, d: 24 * r + 3 * t + 5 * d >= 300),
        Constraint("est2", "5s+3d >= 180", "census", lambda r, s, t, d: 5 * s + 3 * d >= 180),
        Constraint("rtd20", "r+t+d >= 20", "type3_fiber_bound", lambda r, s, t, d: r + t + d >= 20),
        Constraint("cosets1", "d >= envelope(36-s)", "coset_lemmas",
                   lambda r, s, t, d: d >= coset_envelope(36 - s)),
        Constraint("cosets2", f"36-s >= {threshold} implies d >= 42", "coset_lemmas",
                   lambda r, s, t, d: 36 - s < threshold or d >= 42),
    ]


def _search(constraints: list[Constraint]) -> list[tuple[int, int, int, int]]:
    out = []
    for r in range(26):
        for s in range(37):
            for t in range(101):
                d = COVER_SIZE - 1 - r - s - t
                if d < 0:
                    continue
                if all(c.holds(r, s, t, d) for c in constraints):
                    out.append((r, s, t, d))
    return out


def _projection(surv) -> dict:
    if not surv:
        return {}
    arr = np.array(surv)
    return {f"{v}_min": int(arr[:, i].min()) for i, v in enumerate("rstd")} | \
           {f"{v}_max": int(arr[:, i].max()) for i, v in enumerate("rstd")}


def run_case_analysis(established: set[str], sources: dict[str, str] | None = None) -> CaseAnalysisLog:
    """Exhaustive search over (r, s, t, d) for a cover of size 56 made of maximal subgroups.

    A smaller cover is padded with further maximal subgroups, and any proper
    subgroup can be replaced by a maximal one containing it.
    """
    system = constraint_system()
    admitted = [c for c in system if c.name in established]
    by = {c.name: c for c in admitted}

    def pick(*names):
        return [by[n] for n in names if n in by]

    stages = []
    base = pick("sum", "caps", "est1", "est2")
    s0 = _search(base)
    stages.append({"name": "base", "constraints": [c.name for c in base], "count": len(s0),
                   "projection": _projection(s0),
                   "claims": {"d<=33": all(x[3] <= 33 for x in s0), "s>=17": all(x[1] >= 17 for x in s0),
                              "r>=6": all(x[0] >= 6 for x in s0)}})
    mid = base + pick("rtd20", "cosets1")
    s1 = _search(mid)
    stages.append({"name": "fiber+cosets1", "constraints": [c.name for c in mid], "count": len(s1),
                   "survivors": [list(x) for x in s1] if len(s1) <= 20 else None,
                   "projection": _projection(s1),
                   "claims": {"s<=31": all(x[1] <= 31 for x in s1), "d>=30": all(x[3] >= 30 for x in s1)}})
    final = mid + pick("cosets2")
    s2 = _search(final)
    stages.append({"name": "final", "constraints": [c.name for c in final], "count": len(s2),
                   "survivors": [list(x) for x in s2] if len(s2) <= 20 else None})
    without = [c for c in final if c.name != "rtd20"]
    sanity = {"without_rtd20": len(_search(without)), "without_cosets2": len(s1)}
    return CaseAnalysisLog(system, [c.name for c in admitted], stages, s2, sanity)


# -- the certificate --------------------------------------------------------------------------------

@dataclass
class Certificate:
    checks: list[CheckResult]
    log: CaseAnalysisLog
    skipped: list[str]

    @property
    def upper_verified(self) -> bool:
        return any(c.name == "upper_cover" and c.passed for c in self.checks)

    @property
    def lower_established(self) -> bool:
        needed = {"sum", "caps", "est1", "est2", "rtd20", "cosets1", "cosets2"}
        return needed <= set(self.log.admitted) and self.log.empty

    @property
    def status(self) -> str:
        if self.upper_verified and self.lower_established:
            return "certified"
        return "NOT-ESTABLISHED"

    def sigma(self) -> dict:
        lo = SIGMA if self.lower_established else None
        hi = SIGMA if self.upper_verified else None
        return {"value": SIGMA if self.status == "certified" else None, "lower": lo, "upper": hi,
                "status": self.status}

    def summary_line(self) -> str:
        if self.status == "certified":
            return f"sigma = {SIGMA} (certified)"
        return f"sigma: NOT-ESTABLISHED (lower {'57' if self.lower_established else 'open'}, " \
               f"upper {'57' if self.upper_verified else 'open'})"

    def to_dict(self) -> dict:
        log = self.log.to_dict()
        return {
            "checks": [c.to_dict() for c in self.checks],
            "constraints": log["constraints"],
            "admitted": log["admitted"],
            "stages": log["stages"],
            "sanity": log["sanity"],
            "survivors": log["survivors"],
            "skipped": self.skipped,
            "sigma": self.sigma(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False, default=str)


def certify_a5wrc2(skip: tuple[str, ...] = (), progress: Callable[[str], None] | None = None) -> Certificate:
    unknown = set(skip) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    S = EvenCase()
    results = []
    for name in CHECK_NAMES:
        if name in skip:
            results.append(CheckResult(name, SKIPPED, {}))
            continue
        if progress:
            progress(name)
        results.append(CHECKS[name](S))
    established = {c for r in results for c in r.establishes}
    if progress:
        progress("case_analysis")
    log = run_case_analysis(established)
    return Certificate(results, log, sorted(skip))
