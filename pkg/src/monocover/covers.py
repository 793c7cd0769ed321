"""Covers of groups by subgroups: targets, verification, set-cover solvers, lower bounds.

Every set here is a Python integer bitset over a fixed universe: the
enumeration order of a monolithic group, of S_n, or of a small group.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog
from sympy import primefactors

from . import bits as B
from .monolith import Case, GroupSpec, MonolithGroup, enumerate_group
from .perm import symmetric_group
from .subgroups import (
    CatalogEntry,
    PermGroup,
    ProductType,
    TwistKernel,
    UnsupportedError,
    catalog_an_maximals,
    catalog_lookup,
    coset_representatives,
    enumerate_maximals_G,
    expand,
    maximal_from_lattice,
    subgroup_lattice,
)

DEFAULT_BUDGET = 10**8

# ten 4-cycles of S_5, two in each point-stabilizer normalizer
PI_N5 = ("(2354)", "(4521)", "(4132)", "(1253)", "(4531)", "(3245)", "(1352)", "(2314)", "(4125)", "(3541)")


class CoverError(ValueError):
    pass


class UniverseMismatchError(CoverError):
    pass


class InfeasibleError(CoverError):
    def __init__(self, message: str, residual: int):
        super().__init__(message)
        self.residual = residual


class IncompleteFamilyError(CoverError):
    pass


# -- target sets --------------------------------------------------------------------

@dataclass(frozen=True)
class TargetSet:
    name: str
    bits: int
    universe: str
    size: int
    provenance: str = ""

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def __or__(self, other: TargetSet) -> TargetSet:
        if other.universe != self.universe:
            raise UniverseMismatchError(f"{self.universe} vs {other.universe}")
        return TargetSet(f"{self.name}|{other.name}", self.bits | other.bits, self.universe, self.size,
                         f"union({self.provenance}; {other.provenance})")


def universe_tag(spec: GroupSpec) -> str:
    return f"G{spec.label()}"


def sym_tag(n: int) -> str:
    return f"S{n}"


def _sn_set(n: int, name: str, mask: np.ndarray, provenance: str) -> TargetSet:
    sn = symmetric_group(n)
    return TargetSet(name, B.from_mask(mask), sym_tag(n), sn.order, provenance)


def _types_mask(n: int, types: Iterable[tuple[int, ...]]) -> np.ndarray:
    sn = symmetric_group(n)
    want = {tuple(sorted(t, reverse=True)) for t in types}
    return np.array([sn.cycle_type(i).moved() in want for i in range(sn.order)], dtype=bool)


def sigma_set(n: int) -> TargetSet:
    """(k, n-k)-cycles, 1 <= k <= n-1; a 1-cycle is a fixed point."""
    types = set()
    for k in range(1, n):
        types.add(tuple(p for p in (k, n - k) if p > 1))
    return _sn_set(n, "Sigma", _types_mask(n, types), "cycle types (k,n-k)")


def pi_set(n: int) -> TargetSet:
    if n == 5:
        sn = symmetric_group(5)
        return _sn_set(5, "Pi", sn.mask_of(sn.parse(c) for c in PI_N5), "ten listed 4-cycles")
    if n % 2 == 1 and n >= 7:
        s = sigma_set(n)
        return TargetSet("Pi", s.bits, s.universe, s.size, "Pi = Sigma")
    raise UnsupportedError("Pi is defined for n = 5 and odd n >= 7")


def a_set(n: int) -> TargetSet:
    return _sn_set(n, "A", _types_mask(n, [(n - 2, 2)]), "(2,n-2)-cycles")


def b_set(n: int) -> TargetSet:
    return _sn_set(n, "B", _types_mask(n, [(n - 1,)]), "(n-1)-cycles")


def c_set(n: int, m: int) -> TargetSet:
    """The even set used for twist 2 when m is odd; empty when m is even or (n, m) = (5, 3)."""
    sn = symmetric_group(n)
    if m % 2 == 0 or (n, m) == (5, 3):
        return _sn_set(n, "C", np.zeros(sn.order, dtype=bool), "empty")
    full = _types_mask(n, [(n,)])
    if n == 5 and m in (5, 7):
        # two 5-cycles per Sylow 5-subgroup: the least generator and its inverse
        chosen = np.zeros(sn.order, dtype=bool)
        done = np.zeros(sn.order, dtype=bool)
        for c in np.flatnonzero(full):
            if done[c]:
                continue
            powers = [sn.power(int(c), e) for e in range(1, 5)]
            done[powers] = True
            chosen[[c, sn.inv(int(c))]] = True
        return _sn_set(n, "C", chosen, "two 5-cycles per Sylow 5-subgroup")
    return _sn_set(n, "C", full, "n-cycles")


def _strand(G: MonolithGroup, x: np.ndarray, start: int, step: int) -> np.ndarray:
    """x_start x_{start+step} ... (positions 1-based, count m/step), then tau."""
    sn = G.sn
    acc = x[:, start - 1]
    for j in range(1, G.m // step):
        acc = sn.mul(acc, x[:, start - 1 + j * step])
    return sn.mul(acc, G.tau)


def _slice(G: MonolithGroup, k: int) -> slice:
    block = G.alt_size**G.m
    return slice(k * block, (k + 1) * block)


def omega_set(spec: GroupSpec, r: int, pi: TargetSet | None = None) -> TargetSet:
    """Omega_1 (needs Pi), Omega_r for a prime r | m, and Omega_2 for m odd."""
    if spec.case is not Case.ODD:
        raise UnsupportedError("Omega sets are defined in the odd case")
    G = enumerate_group(spec)
    n, m = spec.n, spec.m
    mask = np.zeros(G.order, dtype=bool)
    if r == 1:
        pi = pi or pi_set(n)
        pm = B.to_mask(pi.bits, pi.size)
        sl = _slice(G, 1)
        mask[sl] = pm[_strand(G, G.base[sl], 1, 1)]
        prov = "twist 1, x_1...x_m tau in Pi"
    elif m % r == 0:
        if r < 2:
            raise UnsupportedError("r must be prime")
        A = B.to_mask(a_set(n).bits, symmetric_group(n).order)
        Bm = B.to_mask(b_set(n).bits, symmetric_group(n).order)
        sl = _slice(G, r)
        x = G.base[sl]
        mask[sl] = A[_strand(G, x, 1, r)] & Bm[_strand(G, x, 2, r)]
        prov = f"twist {r}, strands in A and B"
    elif r == 2 and m % 2 == 1:
        C = B.to_mask(c_set(n, m).bits, symmetric_group(n).order)
        sl = _slice(G, 2)
        x = G.base[sl]
        sn = G.sn
        odd = x[:, 0]
        for j in range(2, m, 2):
            odd = sn.mul(odd, x[:, j])
        acc = sn.mul(odd, G.tau)
        for j in range(1, m - 1, 2):
            acc = sn.mul(acc, x[:, j])
        acc = sn.mul(acc, G.tau)
        mask[sl] = C[acc]
        prov = "twist 2, interleaved product in C"
    else:
        raise UnsupportedError(f"no Omega_{r} for m = {m}")
    return TargetSet(f"Omega_{r}", B.from_mask(mask), universe_tag(spec), G.order, prov)


def omega_closed_form(spec: GroupSpec, r: int) -> int:
    n, m = spec.n, spec.m
    alt = math.factorial(n) // 2
    if r == 1:
        return pi_set(n).count * alt ** (m - 1)
    if r == 2 and m % 2 == 1:
        return c_set(n, m).count * alt ** (m - 1)
    return Fraction(2 * alt**m, (n - 1) * (n - 2)).numerator


def build_target(spec: GroupSpec | None, name: str, params: dict | None = None) -> TargetSet:
    params = params or {}
    n = spec.n if spec is not None else params.get("n")
    if name == "Pi":
        return pi_set(n)
    if name == "Sigma":
        return sigma_set(n)
    if name == "A":
        return a_set(n)
    if name == "B":
        return b_set(n)
    if name == "C":
        return c_set(n, spec.m if spec is not None else params["m"])
    if name.startswith("Omega_"):
        return omega_set(spec, int(name.split("_")[1]))
    if name == "Omega":
        out = omega_set(spec, 1)
        for r in primefactors(2 * spec.m):
            out = out | omega_set(spec, r)
        return TargetSet("Omega", out.bits, out.universe, out.size, out.provenance)
    if name == "G":
        G = enumerate_group(spec)
        return TargetSet("G", B.full(G.order), universe_tag(spec), G.order, "whole group")
    if name == "custom":
        return TargetSet(params.get("label", "custom"), int(params["bits"]), params["universe"], int(params["size"]),
                         "custom")
    raise UnsupportedError(f"unknown target {name!r}")


# -- verification --------------------------------------------------------------------

def covers_check(family: Sequence[int], target: TargetSet | int) -> tuple[bool, int | None]:
    """(True, None) when the union contains the target, else (False, least uncovered index)."""
    want = target.bits if isinstance(target, TargetSet) else target
    missing = want & ~B.union(family)
    if missing:
        return False, B.lowest(missing)
    return True, None


def coverage_counts(family: Sequence[int], size: int) -> np.ndarray:
    counts = np.zeros(size, dtype=np.int64)
    for s in family:
        counts += B.to_mask(s, size)
    return counts


# -- set cover -----------------------------------------------------------------------------

def greedy_cover(target: int, candidates: Sequence[int]) -> list[int]:
    """Largest-gain greedy; ties go to the earliest candidate."""
    left = target
    chosen: list[int] = []
    while left:
        gains = [(c & left).bit_count() for c in candidates]
        best = max(range(len(candidates)), key=lambda i: (gains[i], -i)) if candidates else None
        if best is None or gains[best] == 0:
            raise InfeasibleError("candidates cannot cover the target", left)
        chosen.append(best)
        left &= ~candidates[best]
    return chosen


def lp_lower_bound(target: int, candidates: Sequence[int]) -> tuple[int, float]:
    """Rigorous lower bound from a dual-feasible point of the covering LP.

    The HiGHS dual is truncated to integers and rescaled by its worst column
    sum, which makes the bound exact integer arithmetic.
    """
    elems = list(B.iter_indices(target))
    if not elems:
        return 0, 0.0
    pos = {e: i for i, e in enumerate(elems)}
    rows, cols = [], []
    for j, c in enumerate(candidates):
        for e in B.iter_indices(c & target):
            rows.append(pos[e])
            cols.append(j)
    A = np.zeros((len(elems), len(candidates)))
    A[rows, cols] = 1.0
    res = linprog(np.ones(len(candidates)), A_ub=-A, b_ub=-np.ones(len(elems)), bounds=(0, None), method="highs")
    if res.status != 0:
        return 0, float("nan")
    y = np.maximum(-res.ineqlin.marginals, 0.0)
    scale = 1 << 30
    yi = np.floor(y * scale).astype(np.int64)
    colsum = (A.T.astype(np.int64) @ yi).max()
    if colsum <= 0:
        return 0, float(res.fun)
    # sigma is an integer, so ceil(total / colsum) is still a bound
    return -(-int(yi.sum()) // int(colsum)), float(res.fun)


@dataclass
class ExactCoverResult:
    status: str  # "exact" or "interval"
    lo: int
    hi: int
    family: list[int]
    nodes: int
    log: list[str] = field(default_factory=list)

    @property
    def value(self) -> int | None:
        return self.lo if self.status == "exact" else None


def _packing_bound(left: int, elem_cands: dict[int, int], available: int) -> int:
    used = 0
    count = 0
    order = sorted(B.iter_indices(left), key=lambda e: ((elem_cands[e] & available).bit_count(), e))
    for e in order:
        cs = elem_cands[e] & available
        if cs & used == 0:
            used |= cs
            count += 1
    return count


def min_cover_exact(target: int, candidates: Sequence[int], budget: int = DEFAULT_BUDGET,
                    use_lp: bool = True) -> ExactCoverResult:
    """Branch and bound for minimum set cover, deterministic in candidate order.

    Branching picks the least-index uncovered element among those with the
    fewest available candidates; sibling branches exclude earlier siblings.
    """
    cands = [c & target for c in candidates]
    if covers_check(cands, target)[0] is False:
        raise InfeasibleError("candidates cannot cover the target", target & ~B.union(cands))
    log: list[str] = []
    elem_cands: dict[int, int] = {}
    for j, c in enumerate(cands):
        for e in B.iter_indices(c):
            elem_cands[e] = elem_cands.get(e, 0) | (1 << j)
    greedy = greedy_cover(target, cands)
    best = list(greedy)
    log.append(f"greedy upper bound {len(best)}")
    root_lb = _packing_bound(target, elem_cands, B.full(len(cands)))
    log.append(f"packing lower bound {root_lb}")
    if use_lp and len(cands) <= 5000:
        lp, val = lp_lower_bound(target, cands)
        log.append(f"lp dual lower bound {lp} (relaxation {val:.6g})")
        root_lb = max(root_lb, lp)
    max_size = max((c.bit_count() for c in cands), default=1)
    root_lb = max(root_lb, -(-target.bit_count() // max_size))
    nodes = 0
    exhausted = False

    def search(left: int, available: int, chosen: list[int]) -> None:
        nonlocal best, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
                log.append(f"improved to {len(best)} at node {nodes}")
            return
        room = len(best) - len(chosen)
        if room <= 1:
            # one more set would have to cover everything left
            if room == 1:
                for j in B.iter_indices(available):
                    if left & ~cands[j] == 0:
                        best = chosen + [j]
                        log.append(f"improved to {len(best)} at node {nodes}")
                        return
            return
        gain = max(((cands[j] & left).bit_count() for j in B.iter_indices(available)), default=0)
        if gain == 0:
            return
        if -(-left.bit_count() // gain) >= room:
            return
        if _packing_bound(left, elem_cands, available) >= room:
            return
        pick, pick_count = -1, None
        for e in B.iter_indices(left):
            k = (elem_cands[e] & available).bit_count()
            if pick_count is None or k < pick_count:
                pick, pick_count = e, k
                if k <= 1:
                    break
        options = elem_cands[pick] & available
        for j in B.iter_indices(options):
            search(left & ~cands[j], available, chosen + [j])
            available &= ~(1 << j)
            if len(best) <= root_lb:
                return

    if len(best) > root_lb:
        search(target, B.full(len(cands)), [])
    lo = root_lb if exhausted else len(best)
    status = "interval" if exhausted and lo < len(best) else "exact"
    log.append(f"nodes {nodes}; status {status}")
    return ExactCoverResult(status, lo, len(best), sorted(best), nodes, log)


# -- definite unbeatability ---------------------------------------------------------------

@dataclass
class UnbeatableReport:
    passed: bool
    conditions: dict[str, bool]
    family_size: int
    min_inside: int
    max_outside: int
    first_failure: str | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": self.conditions,
            "family_size": self.family_size,
            "min_inside": self.min_inside,
            "max_outside": self.max_outside,
            "first_failure": self.first_failure,
            "detail": self.detail,
        }


REDUCTION_NOTE = (
    "condition (4) is checked against maximal subgroups with max|Pi∩K| <= min|Pi∩H|: "
    "a cover may be replaced by maximal overgroups; members in the family meet Pi in disjoint "
    "parts and every other member meets Pi in at most the minimum"
)


def check_unbeatable(family: Sequence[int], pi: int, all_max: Sequence[int], complete: bool = True) -> UnbeatableReport:
    """Four conditions of definite unbeatability, with condition (4) over maximal subgroups."""
    if not complete:
        raise IncompleteFamilyError("condition (4) needs a complete list of maximal subgroups")
    fam = list(family)
    inter = [pi & h for h in fam]
    c1 = all(inter)
    c2 = covers_check(fam, pi)[0]
    seen = 0
    c3 = len(set(fam)) == len(fam)
    for part in inter:
        if part & seen:
            c3 = False
        seen |= part
    famset = set(fam)
    min_inside = min((p.bit_count() for p in inter), default=0)
    outside = [(K & pi).bit_count() for K in all_max if K not in famset]
    max_outside = max(outside, default=0)
    c4 = max_outside <= min_inside
    conds = {"1_meets": c1, "2_covers": c2, "3_disjoint": c3, "4_dominates": c4}
    first = next((k for k, v in conds.items() if not v), None)
    return UnbeatableReport(first is None, conds, len(fam), min_inside, max_outside, first,
                            {"reduction": REDUCTION_NOTE, "outside_checked": len(outside)})


@dataclass
class LowerBound:
    value: int
    forced: int
    unbeatable: int
    justification: list[str]


def private_elements(members: Sequence[int], all_max: Sequence[int], size: int) -> list[int]:
    """For each member, an element lying in that maximal subgroup only (or -1)."""
    counts = coverage_counts(all_max, size)
    once = B.from_mask(counts == 1)
    return [B.lowest(K & once) if K & once else -1 for K in members]


def lower_bound_combine(forced: Sequence[int], all_max: Sequence[int], size: int, omega: int,
                        unbeatable: UnbeatableReport) -> LowerBound:
    """|K_1| + sigma(Omega) for a forced family K_1 of maximal subgroups missing Omega."""
    if not unbeatable.passed:
        raise CoverError("the unbeatable family failed: " + str(unbeatable.first_failure))
    for i, K in enumerate(forced):
        if K & omega:
            raise CoverError(f"forced member {i} meets Omega")
    priv = private_elements(forced, all_max, size)
    if any(p < 0 for p in priv):
        raise CoverError("a forced member has no private element")
    just = [
        f"{len(forced)} maximal subgroups each own an element lying in no other maximal subgroup",
        "every subgroup covering such an element lies in that maximal subgroup, which misses Omega",
        f"Omega needs {unbeatable.family_size} further members (definitely unbeatable family)",
    ]
    return LowerBound(len(forced) + unbeatable.family_size, len(forced), unbeatable.family_size, just)


# -- theorem covers ------------------------------------------------------------------------

def _family_labels(spec: GroupSpec) -> list[str]:
    n = spec.n
    cat = catalog_an_maximals(n)
    if n == 5:
        return [M.label for M in cat if M.kind == "intransitive"]
    if n == 6:
        return [M.label for M in cat if M.order == 60]
    if n % 2 == 1:
        return [M.label for M in cat if M.kind == "intransitive"]
    raise UnsupportedError("explicit theorem covers exist for n in {5, 6} and odd n >= 7")


def theorem_cover_descriptors(spec: GroupSpec) -> list:
    if spec.case is not Case.ODD:
        raise UnsupportedError("theorem covers are for the odd case")
    from itertools import product as cartesian
    out: list = [TwistKernel(r) for r in primefactors(2 * spec.m)]
    for label in _family_labels(spec):
        entry = catalog_lookup(spec.n, label)
        reps = coset_representatives(spec.n, entry.index)
        for a in cartesian(reps, repeat=spec.m - 1):
            out.append(ProductType(spec.n, entry.index, entry.label, tuple(int(v) for v in a)))
    return out


@dataclass
class TheoremCover:
    spec: GroupSpec
    descriptors: list
    verified: bool
    method: str
    witness: int | None = None
    detail: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.descriptors)


def build_theorem_cover(spec: GroupSpec, verify: bool = True) -> TheoremCover:
    """The explicit cover behind the theorem's upper bound, verified when possible."""
    descs = theorem_cover_descriptors(spec)
    if not verify:
        return TheoremCover(spec, descs, False, "not verified")
    if spec.enumerable():
        G = enumerate_group(spec)
        ok, wit = covers_check([expand(G, D) for D in descs], B.full(G.order))
        return TheoremCover(spec, descs, ok, "exhaustive", wit)
    return _decomposition_check(spec, descs)


def _decomposition_check(spec: GroupSpec, descs: list) -> TheoremCover:
    """Covering without enumeration, for odd n.

    Twists sharing a prime with 2m lie in the listed H_r.  A twist k coprime
    to 2m puts (x)g^k in N_G(M x M^{a_2} ...) for a_2, ... chosen along the
    coset chain, as soon as its product invariant lies in N_{S_n}(M); so it
    suffices that the normalizers cover S_n - A_n and that every coset tuple
    of each M is listed.
    """
    n, m = spec.n, spec.m
    sn = symmetric_group(n)
    primes = set(primefactors(2 * m))
    kernels = {D.r for D in descs if isinstance(D, TwistKernel)}
    twists_ok = primes <= kernels
    prods = [D for D in descs if isinstance(D, ProductType)]
    labels = sorted({D.M for D in prods})
    cat = catalog_an_maximals(n)
    odd_cover = np.zeros(sn.order, dtype=bool)
    for i in labels:
        odd_cover |= cat[i].normalizer.mask
    odd_ok = bool(odd_cover[~sn.even_mask].all())
    tuples_ok = True
    counts = {}
    for i in labels:
        want = len(coset_representatives(n, i)) ** (m - 1)
        have = len({D.a for D in prods if D.M == i})
        counts[cat[i].label] = have
        tuples_ok &= have == want
    ok = twists_ok and odd_ok and tuples_ok
    return TheoremCover(spec, descs, ok, "decomposition", None,
                        {"twist_kernels": sorted(kernels), "odd_part_covered": odd_ok,
                         "all_coset_tuples": tuples_ok, "per_subgroup": counts})


def unbeatable_family_n5(spec: GroupSpec) -> tuple[list, list]:
    """(family on Omega, forced family) for n = 5: H_r's plus point stabilizer types, and (3,2) types."""
    if spec.n != 5 or spec.case is not Case.ODD:
        raise UnsupportedError("this family is specific to n = 5, odd case")
    descs = theorem_cover_descriptors(spec)
    fam = [D for D in descs if isinstance(D, TwistKernel) or (isinstance(D, ProductType) and D.label.startswith("stab"))]
    forced = [D for D in descs if isinstance(D, ProductType) and not D.label.startswith("stab")]
    return fam, forced


@dataclass
class CoverCertificate:
    spec: GroupSpec
    upper: list[str]
    upper_verified: bool
    lower_kind: str
    lower_value: int
    lower_detail: dict
    interval: tuple[int, int]

    @property
    def exact(self) -> bool:
        return self.interval[0] == self.interval[1]

    def to_dict(self) -> dict:
        return {
            "spec": {"n": self.spec.n, "m": self.spec.m, "case": self.spec.case.value},
            "upper": {"size": len(self.upper), "verified": self.upper_verified, "descriptors": self.upper},
            "lower": {"kind": self.lower_kind, "value": self.lower_value, "detail": self.lower_detail},
            "sigma_interval": list(self.interval),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


@dataclass
class ResidualBound:
    value: int
    forced: list[int]
    residual_size: int
    solver: ExactCoverResult


def forced_residual_bound(universe: int, all_max: Sequence[int], size: int,
                          budget: int = DEFAULT_BUDGET) -> ResidualBound:
    """Lower bound: maximal subgroups with a private element, plus an exact cover of what they miss.

    Any cover can be replaced by maximal overgroups of its members, so it
    contains every maximal subgroup owning a private element; the rest of the
    universe must then be covered by the remaining maximal subgroups.
    """
    priv = private_elements(all_max, all_max, size)
    forced = [i for i, p in enumerate(priv) if p >= 0]
    left = universe & ~B.union(all_max[i] for i in forced)
    rest = [K for i, K in enumerate(all_max) if i not in set(forced)]
    res = min_cover_exact(left, rest, budget)
    return ResidualBound(len(forced) + res.lo, forced, left.bit_count(), res)


def certify_odd_n5(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> CoverCertificate:
    """Two-sided certificate for n = 5 in the odd case at enumeration scale.

    The lower bound comes from forced subgroups plus an exact residual
    cover; the unbeatability check on Omega is reported alongside.
    """
    G = enumerate_group(spec)
    cover = build_theorem_cover(spec)
    maxes = enumerate_maximals_G(spec)
    all_bits = maxes.bits
    fam, forced = unbeatable_family_n5(spec)
    omega = build_target(spec, "Omega")
    rep = check_unbeatable([expand(G, D) for D in fam], omega.bits, all_bits, complete=maxes.complete)
    detail = {"unbeatable_on_omega": rep.to_dict(), "omega_size": omega.count}
    if rep.passed:
        lb = lower_bound_combine([expand(G, D) for D in forced], all_bits, G.order, omega.bits, rep)
        detail["unbeatable_bound"] = lb.value
    if not maxes.complete:
        raise IncompleteFamilyError("lower bound needs a complete list of maximal subgroups")
    res = forced_residual_bound(B.full(G.order), all_bits, G.order, budget)
    detail["forced"] = len(res.forced)
    detail["forced_kinds"] = sorted({maxes.descriptors[i].text().split("[")[0] for i in res.forced})
    detail["residual_size"] = res.residual_size
    detail["residual_status"] = res.solver.status
    detail["residual_cover"] = [res.solver.lo, res.solver.hi]
    hi = len(cover) if cover.verified else math.inf
    return CoverCertificate(spec, [D.text() for D in cover.descriptors], cover.verified, "forced+exact-residual",
                            res.value, detail, (res.value, hi))


def narrative_bound_n6(m: int) -> dict:
    """Lower bound for n = 6 assembled as omega(2m) + 2*6^m; rests on an external lemma."""
    return {
        "n": 6,
        "m": m,
        "value": len(primefactors(2 * m)) + 2 * 6**m,
        "status": "conditional",
        "assumption": "external lemma on covers of the product part (not verified here)",
    }


# -- small generic groups ------------------------------------------------------------------

SMALL_GROUPS = {
    "a5": (5, ["(123)", "(12345)"]),
    "s5": (5, ["(12)", "(12345)"]),
    "a4": (4, ["(123)", "(12)(34)"]),
    "s4": (4, ["(12)", "(1234)"]),
    "s3": (3, ["(12)", "(123)"]),
    "c2xc2": (4, ["(12)(34)", "(13)(24)"]),
    "a6": (6, ["(123)", "(23456)"]),
}


@dataclass
class SmallGroupCover:
    name: str
    order: int
    maximals: list[CatalogEntry]

    @property
    def bits(self) -> list[int]:
        return [c.elements for c in self.maximals]


@lru_cache(maxsize=None)
def small_group(name: str) -> SmallGroupCover:
    """A small permutation group with its maximal subgroups, as bitsets over its own elements."""
    if name not in SMALL_GROUPS:
        raise UnsupportedError(f"unknown group {name!r}; choose from {sorted(SMALL_GROUPS)}")
    n, gens = SMALL_GROUPS[name]
    sn = symmetric_group(n)
    G = PermGroup.generated(sn, [sn.parse(g) for g in gens], name)
    pos = np.full(sn.order, -1, dtype=np.int64)
    pos[G.indices] = np.arange(G.order)
    maxes = maximal_from_lattice(G, subgroup_lattice(G, max_order=max(1000, G.order)))
    entries = []
    for i, K in enumerate(maxes):
        entries.append(CatalogEntry(f"{name}.max[{i}](order {K.order})", B.from_indices(pos[K.indices])))
    return SmallGroupCover(name, G.order, entries)


def sigma_small_group(name: str, budget: int = DEFAULT_BUDGET) -> ExactCoverResult:
    grp = small_group(name)
    return min_cover_exact(B.full(grp.order), grp.bits, budget)
