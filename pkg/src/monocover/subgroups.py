"""Maximal subgroups: A_n / S_n catalogs and the maximal subgroups of the monolithic groups.

Two independent membership paths exist for every product-type or
diagonal-type subgroup of G.  The lemma path evaluates closed-form
conditions on the normal form ``(x_1, ..., x_m) g^k``.  The oracle path
conjugates the generators of the socle subgroup by every element of G and
tests membership directly.  It does not depend on any composition convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np
from sympy import primitive_root

from . import bits as B
from .monolith import Case, GroupSpec, MonolithElement, MonolithGroup, enumerate_group
from .perm import CapacityError, Permutation, SymmetricGroup, format_cycles, symmetric_group

CATALOG_DEGREES = (5, 6, 7)
NAMED_FAMILY_DEGREES = (8, 9)


class UnsupportedError(ValueError):
    pass


# -- subgroups of S_n ------------------------------------------------------------

class PermGroup:
    """A subgroup of an indexed S_n, stored as a sorted index array."""

    def __init__(self, sn: SymmetricGroup, indices: Iterable[int] | np.ndarray, name: str = ""):
        self.sn = sn
        self.indices = np.unique(np.asarray(indices, dtype=np.int64))
        self.name = name

    @classmethod
    def from_mask(cls, sn: SymmetricGroup, mask: np.ndarray, name: str = "") -> PermGroup:
        return cls(sn, np.flatnonzero(mask), name)

    @classmethod
    def generated(cls, sn: SymmetricGroup, gens: Sequence[int], name: str = "") -> PermGroup:
        return cls.from_mask(sn, closure_mask(sn, gens), name)

    @property
    def order(self) -> int:
        return len(self.indices)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.sn.order, dtype=bool)
        m[self.indices] = True
        return m

    @cached_property
    def bits(self) -> int:
        return B.from_mask(self.mask)

    def contains(self, idx) -> np.ndarray | bool:
        return self.mask[idx]

    def issubset(self, other: PermGroup) -> bool:
        return self.bits & ~other.bits == 0

    def conjugate(self, g: int) -> PermGroup:
        """``g^-1 H g``."""
        return PermGroup(self.sn, self.sn.conj(self.indices, g))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by index."""
        gens: list[int] = []
        have = np.zeros(self.sn.order, dtype=bool)
        have[self.sn.identity] = True
        for i in self.indices:
            if not have[i]:
                gens.append(int(i))
                have = closure_mask(self.sn, gens)
                if have.sum() == self.order:
                    break
        return tuple(gens)

    @cached_property
    def normalizer(self) -> PermGroup:
        everything = np.arange(self.sn.order)
        ok = np.ones(self.sn.order, dtype=bool)
        for h in self.generators:
            ok &= self.mask[self.sn.conj(h, everything)]
        return PermGroup.from_mask(self.sn, ok)

    def is_transitive(self) -> bool:
        images = self.sn.images[self.indices]
        return len(np.unique(images[:, 0])) == self.sn.n

    def orbits(self) -> list[tuple[int, ...]]:
        images = self.sn.images[self.indices]
        seen, out = set(), []
        for p in range(self.sn.n):
            if p in seen:
                continue
            orb = tuple(sorted(int(v) + 1 for v in np.unique(images[:, p])))
            seen.update(v - 1 for v in orb)
            out.append(orb)
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermGroup) and other.sn.n == self.sn.n and other.bits == self.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"PermGroup(n={self.sn.n}, order={self.order}{', ' + self.name if self.name else ''})"


def closure_mask(sn: SymmetricGroup, gens: Sequence[int], base: np.ndarray | None = None,
                 stop_above: int | None = None) -> np.ndarray:
    """Mask of the subgroup generated by ``gens`` (and the subgroup ``base``).

    With ``stop_above`` the search stops as soon as the closure exceeds that
    many elements; callers use it to detect generation of a whole group.
    """
    mask = np.zeros(sn.order, dtype=bool)
    mask[sn.identity] = True
    if base is not None:
        mask |= base
    g = np.asarray(list(gens), dtype=np.int64)
    if g.size == 0:
        return mask
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prod = np.asarray(sn.mul(frontier[:, None], g[None, :])).ravel()
        new = np.unique(prod[~mask[prod]])
        mask[new] = True
        if stop_above is not None and mask.sum() > stop_above:
            break
        frontier = new
    return mask


def is_maximal(H: PermGroup, G: PermGroup) -> tuple[bool, int | None]:
    """Whether ``H`` is maximal in ``G``; otherwise a witness ``g`` with <H, g> proper.

    Each double coset HgH is tried once; <H, g> is closed up until it
    exceeds |G|/2, which only G itself can do.
    """
    sn = H.sn
    if not H.issubset(G) or H.order == G.order:
        return False, None
    remaining = G.mask & ~H.mask
    gens = list(H.generators)
    h = H.indices
    while remaining.any():
        g = int(np.flatnonzero(remaining)[0])
        K = closure_mask(sn, gens + [g], base=H.mask, stop_above=G.order // 2)
        if K.sum() <= G.order // 2:
            return False, g
        if h.size * h.size <= 4_000_000:
            dc = np.asarray(sn.mul(sn.mul(h[:, None], g), h[None, :])).ravel()
        else:
            dc = np.asarray(sn.mul(h, g))
        remaining[dc] = False
    return True, None


def conjugacy_class(group: PermGroup, by: np.ndarray | None = None) -> list[PermGroup]:
    """Distinct conjugates of ``group`` under ``by`` (default all of S_n), sorted."""
    sn = group.sn
    by = np.arange(sn.order) if by is None else by
    seen: dict[int, PermGroup] = {}
    done = np.zeros(sn.order, dtype=bool)
    norm = group.normalizer.indices
    for g in by:
        if done[g]:
            continue
        K = group.conjugate(int(g))
        seen.setdefault(K.bits, K)
        # every element of N g gives the same conjugate
        done[np.asarray(sn.mul(norm, int(g)))] = True
    return sorted(seen.values(), key=lambda K: tuple(K.indices))


def subgroup_lattice(G: PermGroup, max_order: int = 1000) -> list[PermGroup]:
    """All subgroups of ``G`` by cyclic extension over conjugacy-class representatives."""
    sn = G.sn
    if G.order > max_order:
        raise CapacityError(f"lattice enumeration limited to groups of order <= {max_order}")
    cyclic: dict[int, int] = {}
    for g in G.indices:
        C = closure_mask(sn, [int(g)])
        cyclic.setdefault(B.from_mask(C), int(g))
    cyclic_gens = sorted(cyclic.values())
    known: dict[int, PermGroup] = {}
    queue: list[PermGroup] = []

    def add_class(K: PermGroup) -> None:
        for conj in conjugacy_class(K, by=G.indices):
            known.setdefault(conj.bits, conj)
        queue.append(K)

    add_class(PermGroup(sn, [sn.identity]))
    while queue:
        H = queue.pop()
        gens = list(H.generators)
        for c in cyclic_gens:
            if H.mask[c]:
                continue
            K = PermGroup.from_mask(sn, closure_mask(sn, gens + [c], base=H.mask))
            if K.bits not in known:
                add_class(K)
    return sorted(known.values(), key=lambda K: (K.order, tuple(K.indices)))


def maximal_from_lattice(G: PermGroup, lattice: list[PermGroup]) -> list[PermGroup]:
    proper = [K for K in lattice if K.order < G.order]
    out = []
    for K in proper:
        if not any(K.order < L.order and K.issubset(L) for L in proper):
            out.append(K)
    return out


# -- named families ------------------------------------------------------------------

def _set_stabilizer(sn: SymmetricGroup, subset: Sequence[int]) -> np.ndarray:
    t = np.array([p - 1 for p in subset])
    inside = np.zeros(sn.n, dtype=bool)
    inside[t] = True
    return inside[sn.images[:, t]].all(axis=1)


def _partition_stabilizer(sn: SymmetricGroup, blocks: Sequence[Sequence[int]]) -> np.ndarray:
    bid = np.empty(sn.n, dtype=np.int64)
    for b, blk in enumerate(blocks):
        bid[[p - 1 for p in blk]] = b
    img = bid[sn.images.astype(np.int64)]
    ok = np.ones(sn.order, dtype=bool)
    for blk in blocks:
        cols = img[:, [p - 1 for p in blk]]
        ok &= (cols == cols[:, :1]).all(axis=1)
    return ok


def _set_partitions(points: tuple[int, ...], size: int):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for others in combinations(rest, size - 1):
        block = (first,) + others
        remaining = tuple(p for p in rest if p not in others)
        for tail in _set_partitions(remaining, size):
            yield (block,) + tail


def _perm_from_map(n: int, f: Callable[[int], int]) -> Permutation:
    return Permutation([f(i) for i in range(n)], zero_based=True)


def _projective_line_gens(q: int) -> list[Permutation]:
    # points 0..q-1 and infinity = q
    inf = q

    def mobius(a, b, c, d):
        def f(z):
            if z == inf:
                return inf if c == 0 else (a * pow(c, -1, q)) % q
            den = (c * z + d) % q
            if den == 0:
                return inf
            return ((a * z + b) * pow(den, -1, q)) % q
        return f

    # scaling by a primitive root leaves PSL(2, q)
    gens = [mobius(1, 1, 0, 1), mobius(primitive_root(q), 0, 0, 1), mobius(0, q - 1, 1, 0)]
    return [_perm_from_map(q + 1, g) for g in gens]


FANO_LINES = tuple(tuple(sorted(((i + d) % 7) + 1 for d in (0, 1, 3))) for i in range(7))


def _line_preserving(sn: SymmetricGroup, lines: Sequence[Sequence[int]]) -> np.ndarray:
    code = {}
    for i, ln in enumerate(lines):
        code[frozenset(ln)] = i
    ok = np.ones(sn.order, dtype=bool)
    img = sn.images.astype(np.int64) + 1
    line_set = set(code)
    for ln in lines:
        cols = img[:, [p - 1 for p in ln]]
        images = [frozenset(row) for row in cols.tolist()]
        ok &= np.fromiter((s in line_set for s in images), dtype=bool, count=sn.order)
    return ok


@dataclass
class SnMaxSubgroup:
    label: str
    kind: str
    shape: tuple
    group: PermGroup


@dataclass
class AnMaxSubgroup:
    """A maximal subgroup M of A_n with its S_n-normalizer."""

    index: int
    label: str
    kind: str
    shape: tuple
    group: PermGroup
    sn_maximal: SnMaxSubgroup | None

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def normalizer(self) -> PermGroup:
        return self.group.normalizer

    @property
    def elements(self) -> int:
        """Bitset over S_n indices."""
        return self.group.bits

    @property
    def normalizer_elements(self) -> int:
        return self.normalizer.bits

    @cached_property
    def an_bits(self) -> int:
        """Bitset over A_n, indexed by lexicographic rank within A_n."""
        return B.from_indices(self.group.sn.alt_rank[self.group.indices])

    @property
    def is_restriction(self) -> bool:
        """True when M = K ∩ A_n for a maximal K of S_n."""
        return self.sn_maximal is not None

    def __repr__(self) -> str:
        return f"AnMaxSubgroup({self.label}, order={self.order})"


def _intransitive_label(subset: Sequence[int], n: int) -> str:
    if len(subset) == 1:
        return f"stab({subset[0]})"
    rest = [p for p in range(1, n + 1) if p not in subset]
    return "int(" + "".join(map(str, subset)) + "|" + "".join(map(str, rest)) + ")"


def _imprimitive_label(blocks) -> str:
    return "imp(" + "|".join("".join(map(str, b)) for b in blocks) + ")"


def _primitive_seeds(sn: SymmetricGroup) -> list[tuple[str, str, PermGroup, bool]]:
    """(S_n tag, A_n tag, seed group, is S_n-maximal) for the primitive families."""
    n = sn.n
    out = []
    if n == 5:
        c = sn.parse("(12345)")
        F20 = PermGroup.generated(sn, [c]).normalizer
        out.append(("F20", "D10", F20, True))
    elif n == 6:
        gens = [sn.index(p) for p in _projective_line_gens(5)]
        out.append(("PGL25", "A5t", PermGroup.generated(sn, gens), True))
    elif n == 7:
        c = sn.parse("(1234567)")
        out.append(("AGL17", "F21", PermGroup.generated(sn, [c]).normalizer, True))
        fano = PermGroup.from_mask(sn, _line_preserving(sn, FANO_LINES))
        out.append(("", "PSL32", fano, False))
    return out


@lru_cache(maxsize=None)
def catalog_sn_maximals(n: int) -> tuple[SnMaxSubgroup, ...]:
    """Maximal subgroups of S_n, 5 <= n <= 7: A_n, intransitive, imprimitive, primitive."""
    if n not in CATALOG_DEGREES:
        raise UnsupportedError(f"S_{n} catalog supported for n in {CATALOG_DEGREES}")
    sn = symmetric_group(n)
    out: list[SnMaxSubgroup] = [SnMaxSubgroup(f"A{n}", "alternating", (n,), PermGroup.from_mask(sn, sn.even_mask))]
    for k in range(1, (n + 1) // 2):
        if 2 * k == n:
            continue
        for T in combinations(range(1, n + 1), k):
            out.append(SnMaxSubgroup(_intransitive_label(T, n), "intransitive", (k, n - k),
                                     PermGroup.from_mask(sn, _set_stabilizer(sn, T))))
    for b in range(2, n):
        if n % b:
            continue
        for blocks in _set_partitions(tuple(range(1, n + 1)), b):
            out.append(SnMaxSubgroup(_imprimitive_label(blocks), "imprimitive", (b, n // b),
                                     PermGroup.from_mask(sn, _partition_stabilizer(sn, blocks))))
    for tag, _, seed, sn_max in _primitive_seeds(sn):
        if not sn_max:
            continue
        for i, K in enumerate(conjugacy_class(seed), start=1):
            out.append(SnMaxSubgroup(f"{tag}[{i}]", "primitive", (tag,), K))
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_an_maximals(n: int) -> tuple[AnMaxSubgroup, ...]:
    """Maximal subgroups of A_n, 5 <= n <= 7, each tagged with its S_n origin."""
    if n not in CATALOG_DEGREES:
        raise UnsupportedError(f"A_{n} catalog supported for n in {CATALOG_DEGREES}")
    sn = symmetric_group(n)
    even = sn.even_mask
    entries: list[tuple] = []
    prim_an_tags = {tag: an_tag for tag, an_tag, _, _ in _primitive_seeds(sn)}
    for K in catalog_sn_maximals(n):
        if K.kind == "alternating":
            continue
        M = PermGroup.from_mask(sn, K.group.mask & even)
        label = K.label
        if K.kind == "primitive":
            tag = K.shape[0]
            label = prim_an_tags[tag] + K.label[len(tag):]
        if K.kind == "primitive" and n == 7:
            # AGL(1,7) ∩ A_7 = 7:3 lies inside a PSL(3,2); not maximal in A_7
            continue
        entries.append((K.kind, K.shape, label, M, K))
    for tag, an_tag, seed, sn_max in _primitive_seeds(sn):
        if sn_max:
            continue
        for i, M in enumerate(conjugacy_class(seed), start=1):
            entries.append(("primitive", (an_tag,), f"{an_tag}[{i}]", M, None))
    out = []
    for idx, (kind, shape, label, M, K) in enumerate(entries):
        M.name = label
        out.append(AnMaxSubgroup(idx, label, kind, shape, M, K))
    return tuple(out)


def catalog_lookup(n: int, label: str) -> AnMaxSubgroup:
    for M in catalog_an_maximals(n):
        if M.label == label:
            return M
    raise KeyError(f"no maximal subgroup of A_{n} labelled {label!r}")


def certify_catalog(n: int, lattice: bool = False) -> dict:
    """Verify maximality of every catalog entry; optionally completeness via the lattice."""
    sn = symmetric_group(n)
    Sn = PermGroup(sn, np.arange(sn.order))
    An = PermGroup.from_mask(sn, sn.even_mask)
    an_entries = catalog_an_maximals(n)
    sn_entries = catalog_sn_maximals(n)
    report = {
        "n": n,
        "an_count": len(an_entries),
        "sn_count": len(sn_entries),
        "an_maximal": all(is_maximal(M.group, An)[0] for M in an_entries),
        "sn_maximal": all(is_maximal(K.group, Sn)[0] for K in sn_entries),
        "distinct": len({M.group.bits for M in an_entries}) == len(an_entries)
        and len({K.group.bits for K in sn_entries}) == len(sn_entries),
        "restriction_normalizers": all(M.normalizer.order == 2 * M.order for M in an_entries if M.is_restriction),
        "completeness": "classification",
    }
    if lattice:
        for name, G, entries in (("an", An, [M.group for M in an_entries]), ("sn", Sn, [K.group for K in sn_entries])):
            found = maximal_from_lattice(G, subgroup_lattice(G, max_order=G.order))
            report[f"{name}_lattice_match"] = {K.bits for K in found} == {K.bits for K in entries}
        report["completeness"] = "lattice"
    return report


# -- named families at n = 8, 9 (maximality assumed from the literature) -------------

@dataclass(frozen=True)
class NamedFamily:
    n: int
    name: str
    kind: str
    generators: tuple[Permutation, ...]
    in_alternating_only: bool = False
    note: str = "maximality assumed (cited classification)"

    @cached_property
    def elements(self) -> frozenset[Permutation]:
        return perm_closure(self.generators)

    @property
    def order(self) -> int:
        return len(self.elements)


def perm_closure(gens: Sequence[Permutation]) -> frozenset[Permutation]:
    gens = list(gens)
    ident = Permutation.identity(gens[0].n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _affine_gens(p: int, dim: int) -> list[Permutation]:
    """AGL(dim, p) acting on F_p^dim, points numbered in lexicographic order."""
    pts = [tuple((i // p**j) % p for j in range(dim)) for i in range(p**dim)]
    index = {v: i for i, v in enumerate(pts)}
    n = len(pts)

    def affine(mat, shift):
        def f(i):
            v = pts[i]
            w = tuple((sum(mat[r][c] * v[c] for c in range(dim)) + shift[r]) % p for r in range(dim))
            return index[w]
        return _perm_from_map(n, f)

    ident = [[int(r == c) for c in range(dim)] for r in range(dim)]
    e1 = tuple(int(r == 0) for r in range(dim))
    gens = [affine(ident, e1)]
    if dim == 1:
        g = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1 for q in _primes(p - 1))) if p > 2 else 1
        gens.append(affine([[g]], (0,)))
    else:
        # generators of GL(2, p): a diagonal-ish element and a transvection-cycle
        gens.append(affine([[0, 1], [1, 0]], (0,) * dim))
        gens.append(affine([[1, 1], [0, 1]], (0,) * dim))
        gens.append(affine([[2 % p or 1, 0], [0, 1]], (0,) * dim))
    return gens


def _primes(x: int) -> list[int]:
    out, d = [], 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def _pgaml28_gens() -> list[Permutation]:
    # PGammaL(2,8) on the projective line over F_8 = F_2[w]/(w^3 + w + 1)
    def mul(a, b):
        r = 0
        for i in range(3):
            if b >> i & 1:
                r ^= a << i
        for deg in (4, 3):
            if r >> deg & 1:
                r ^= 0b1011 << (deg - 3)
        return r

    def inv(a):
        return next(b for b in range(1, 8) if mul(a, b) == 1)

    inf = 8

    def mobius(a, b, c, d):
        def f(z):
            if z == inf:
                return inf if c == 0 else mul(a, inv(c))
            den = mul(c, z) ^ d
            if den == 0:
                return inf
            return mul(mul(a, z) ^ b, inv(den))
        return f

    frob = lambda z: z if z == inf else mul(z, z)
    maps = [mobius(1, 1, 0, 1), mobius(2, 0, 0, 1), mobius(0, 1, 1, 0), frob]
    return [_perm_from_map(9, f) for f in maps]


def _sym_gens(points: Sequence[int], n: int) -> list[Permutation]:
    pts = list(points)
    if len(pts) < 2:
        return []
    img = list(range(n))
    img[pts[0] - 1], img[pts[1] - 1] = pts[1] - 1, pts[0] - 1
    swap = Permutation(img, zero_based=True)
    img = list(range(n))
    for i, p in enumerate(pts):
        img[p - 1] = pts[(i + 1) % len(pts)] - 1
    return [swap, Permutation(img, zero_based=True)]


@lru_cache(maxsize=None)
def named_families(n: int) -> tuple[NamedFamily, ...]:
    """One representative of each maximal-subgroup family of S_n / A_n for n in {8, 9}."""
    if n not in NAMED_FAMILY_DEGREES:
        raise UnsupportedError(f"named families exist for n in {NAMED_FAMILY_DEGREES}")
    fams: list[NamedFamily] = []
    for k in range(1, (n + 1) // 2):
        if 2 * k == n:
            continue
        a, b = list(range(1, k + 1)), list(range(k + 1, n + 1))
        fams.append(NamedFamily(n, f"S{k}xS{n - k}", "intransitive", tuple(_sym_gens(a, n) + _sym_gens(b, n))))
    for bsize in range(2, n):
        if n % bsize:
            continue
        nb = n // bsize
        blocks = [list(range(i * bsize + 1, (i + 1) * bsize + 1)) for i in range(nb)]
        gens = _sym_gens(blocks[0], n)
        # permute blocks: swap first two blocks and cycle all blocks
        swap = list(range(n))
        cyc = list(range(n))
        for j in range(bsize):
            swap[blocks[0][j] - 1], swap[blocks[1][j] - 1] = blocks[1][j] - 1, blocks[0][j] - 1
            for i in range(nb):
                cyc[blocks[i][j] - 1] = blocks[(i + 1) % nb][j] - 1
        gens += [Permutation(swap, zero_based=True), Permutation(cyc, zero_based=True)]
        fams.append(NamedFamily(n, f"S{bsize}wrS{nb}", "imprimitive", tuple(gens)))
    if n == 8:
        fams.append(NamedFamily(n, "PGL27", "primitive", tuple(_projective_line_gens(7))))
        fams.append(NamedFamily(n, "AGL32", "primitive", tuple(_agl32_gens()), in_alternating_only=True))
    else:
        fams.append(NamedFamily(n, "AGL23", "primitive", tuple(_affine_gens(3, 2))))
        fams.append(NamedFamily(n, "PGamL28", "primitive", tuple(_pgaml28_gens()), in_alternating_only=True,
                                note="maximal in A_9 but not of the form K ∩ A_9 with K maximal in S_9"))
    return tuple(fams)


def _agl32_gens() -> list[Permutation]:
    pts = [tuple((i >> j) & 1 for j in range(3)) for i in range(8)]
    index = {v: i for i, v in enumerate(pts)}

    def affine(mat, shift):
        def f(i):
            v = pts[i]
            return index[tuple((sum(mat[r][c] * v[c] for c in range(3)) + shift[r]) % 2 for r in range(3))]
        return _perm_from_map(8, f)

    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    return [
        affine(ident, (1, 0, 0)),
        affine([[0, 0, 1], [1, 0, 0], [0, 1, 0]], (0, 0, 0)),
        affine([[1, 1, 0], [0, 1, 0], [0, 0, 1]], (0, 0, 0)),
        affine([[0, 1, 0], [1, 0, 0], [0, 0, 1]], (0, 0, 0)),
    ]


# -- descriptors ---------------------------------------------------------------------

@dataclass(frozen=True)
class Socle:
    def key(self):
        return (0,)

    def text(self) -> str:
        return "socle"


@dataclass(frozen=True)
class TwistKernel:
    r: int

    def key(self):
        return (1, self.r)

    def text(self) -> str:
        return f"Hr[r={self.r}]"


@dataclass(frozen=True)
class ProductType:
    n: int
    M: int
    label: str
    a: tuple[int, ...]
    odd_reps: bool = False

    def key(self):
        return (2, self.M, self.a)

    def text(self) -> str:
        sn = symmetric_group(self.n)
        parts = [f"M={self.label}"] + [f"a{i}={format_cycles(sn.perm(x))}" for i, x in enumerate(self.a, start=2)]
        return "prod[" + "; ".join(parts) + "]"

    @property
    def conjugators(self) -> tuple[int, ...]:
        return (symmetric_group(self.n).identity,) + self.a


@dataclass(frozen=True)
class DiagonalType:
    """Normalizer of a product of twisted diagonals.

    ``classes`` partitions the positions 1..m; position ``p`` of class ``C``
    carries ``y_C^{b_p}`` with ``b_p = conj[p-1]`` (identity on class leaders).
    """

    n: int
    classes: tuple[tuple[int, ...], ...]
    conj: tuple[int, ...]

    def key(self):
        return (3, self.classes, self.conj)

    @property
    def m(self) -> int:
        return len(self.conj)

    def text(self) -> str:
        sn = symmetric_group(self.n)
        if self.m == 2 and len(self.classes) == 1:
            return f"diag[alpha={format_cycles(sn.perm(self.conj[1]))}]"
        cls = "|".join(",".join(map(str, c)) for c in self.classes)
        bs = "; ".join(f"b{p}={format_cycles(sn.perm(b))}" for p, b in enumerate(self.conj, start=1)
                       if p not in {c[0] for c in self.classes})
        return f"diag[classes={cls}; {bs}]"

    @classmethod
    def full(cls, n: int, alpha: int) -> DiagonalType:
        return cls(n, ((1, 2),), (symmetric_group(n).identity, int(alpha)))

    @classmethod
    def strided(cls, n: int, m: int, r: int, b: dict[tuple[int, int], int]) -> DiagonalType:
        """Diagonal with ``r`` glued copies of ``m/r`` factors, conjugators ``b[(i, j)]``."""
        L = m // r
        ident = symmetric_group(n).identity
        conj = [ident] * m
        for i in range(2, r + 1):
            for j in range(1, L + 1):
                conj[(i - 1) * L + j - 1] = int(b[(i, j)])
        classes = tuple(tuple((i - 1) * L + j for i in range(1, r + 1)) for j in range(1, L + 1))
        return cls(n, classes, tuple(conj))

    def strided_shape(self) -> int | None:
        """The ``r`` of the strided shape, or None for other shapes."""
        r = len(self.classes[0])
        L = self.m // r if r else 0
        if r * L != self.m:
            return None
        expect = tuple(tuple((i - 1) * L + j for i in range(1, r + 1)) for j in range(1, L + 1))
        return r if self.classes == expect else None


@dataclass(frozen=True)
class CatalogEntry:
    """A subgroup of a small generic group, given by its elements."""

    name: str
    elements: int

    def key(self):
        return (4, self.name)

    def text(self) -> str:
        return self.name


Descriptor = Socle | TwistKernel | ProductType | DiagonalType | CatalogEntry


def descriptor_text(d) -> str:
    return d.text()


def normalized_cosets(D: ProductType) -> ProductType:
    """Canonical representatives: the least even element of each coset N(M)·b_i.

    When a coset has no even element the least element is kept and the
    descriptor is flagged with ``odd_reps``.
    """
    sn = symmetric_group(D.n)
    N = catalog_an_maximals(D.n)[D.M].normalizer.indices
    reps, flagged = [], False
    for b in D.a:
        coset = np.sort(np.asarray(sn.mul(N, int(b))))
        even = coset[sn.even_mask[coset]]
        if even.size:
            reps.append(int(even[0]))
        else:
            reps.append(int(coset[0]))
            flagged = True
    return ProductType(D.n, D.M, D.label, tuple(reps), flagged)


def product_descriptor(n: int, label: str, a: Sequence[str | int] = ()) -> ProductType:
    sn = symmetric_group(n)
    M = catalog_lookup(n, label)
    idx = tuple(sn.parse(x) if isinstance(x, str) else int(x) for x in a)
    return normalized_cosets(ProductType(n, M.index, M.label, idx))


def diagonal_descriptor(n: int, alpha: str | int) -> DiagonalType:
    sn = symmetric_group(n)
    return DiagonalType.full(n, sn.parse(alpha) if isinstance(alpha, str) else int(alpha))


# -- membership: closed-form conditions ---------------------------------------------------

def _m1(p: int, m: int) -> int:
    """Reduce a 1-based position mod m into 1..m."""
    return (p - 1) % m + 1


def product_conditions(sn: SymmetricGroup, spec: GroupSpec, k: int, x: np.ndarray,
                       a: Sequence[int], N: np.ndarray, Mmask: np.ndarray) -> tuple[str, np.ndarray]:
    """Membership of ``(x_1..x_m) g^k`` in N_G(M × M^{a_2} × ...), one row of ``x`` per element.

    Returns the name of the condition set used and the boolean result.
    """
    m = spec.m
    tau = sn.index(Permutation.parse("(12)", sn.n))
    X = lambda d: x[:, _m1(d, m) - 1]
    A = lambda d: a[_m1(d, m) - 1]
    inN = lambda v: N[v]
    mul = sn.mul
    inv = sn.inv
    ok = np.ones(x.shape[0], dtype=bool)
    if k == 0:
        for d in range(1, m + 1):
            ok &= inN(mul(mul(A(d), X(d)), inv(A(d))))
        return "socle", ok
    if spec.case is Case.EVEN:
        if m == 2 and k == 1:
            l = a[1]
            ok &= Mmask[mul(x[:, 0], inv(l))] & Mmask[mul(l, x[:, 1])]
            return "even-wreath", ok
        for d in range(1, m + 1):
            ok &= inN(mul(mul(A(d), X(d)), inv(A(d + k))))
        return "direct", ok
    if math.gcd(k, 2 * m) == 1:
        for d in range(1, m + 1):
            if k < m:
                td = d > m - k
                nxt = d + k
            else:
                td = d <= 2 * m - k
                nxt = d + k - m
            v = mul(A(d), X(d))
            if td:
                v = mul(v, tau)
            ok &= inN(mul(v, inv(A(nxt))))
        return "ng", ok
    if k <= m and m % k == 0:
        r = k
        for i in range(1, r + 1):
            ok &= inN(mul(mul(mul(A(m - r + i), X(m - r + i)), tau), inv(A(i))))
        for i in range(1, m - r + 1):
            ok &= inN(mul(mul(A(i), X(i)), inv(A(r + i))))
        return "pr1", ok
    if m % 2 == 1 and k == 2:
        ok &= inN(mul(mul(A(m - 1), X(m - 1)), tau))
        ok &= inN(mul(mul(mul(A(m), X(m)), tau), inv(A(2))))
        ok &= inN(mul(X(1), inv(A(3))))
        for i in range(2, m - 1):
            ok &= inN(mul(mul(A(i), X(i)), inv(A(i + 2))))
        return "pr1-odd", ok
    pattern = spec.case is Case.ODD
    from .monolith import twist_pattern
    pat = twist_pattern(m, k, spec.case)
    for d in range(1, m + 1):
        v = mul(A(d), X(d))
        if pattern and pat[d - 1]:
            v = mul(v, tau)
        ok &= inN(mul(v, inv(A(d + k))))
    return "direct", ok


def diagonal_conditions(sn: SymmetricGroup, spec: GroupSpec, k: int, x: np.ndarray,
                        D: DiagonalType) -> tuple[str, np.ndarray]:
    """Membership of ``(x_1..x_m) g^k`` in N_G(Δ)."""
    from .monolith import twist_pattern
    m = spec.m
    tau = sn.index(Permutation.parse("(12)", sn.n))
    mul, inv = sn.mul, sn.inv
    rows = x.shape[0]
    if spec.case is Case.ODD and k == 1 and D.strided_shape() is not None:
        r = D.strided_shape()
        L = m // r
        b = lambda i, j: D.conj[(i - 1) * L + j - 1]
        X = lambda p: x[:, p - 1]
        ok = np.ones(rows, dtype=bool)
        lhs_head = mul(mul(b(r, L), X(m)), tau)
        for i in range(2, r + 1):
            ok &= mul(lhs_head, b(i, 1)) == mul(b(i - 1, L), X((i - 1) * L))
            for j in range(1, L):
                ok &= mul(X(j), b(i, j + 1)) == mul(b(i, j), X((i - 1) * L + j))
        return "m/q", ok
    if spec.case is Case.EVEN and m == 2 and k == 1 and len(D.classes) == 1:
        alpha = D.conj[1]
        ay = mul(alpha, x[:, 1])
        return "even-wreath", mul(ay, ay) == mul(x[:, 0], x[:, 1])
    # class consistency: b_p w_p b_{p+s}^{-1} constant on each class, classes mapped to classes
    pat = twist_pattern(m, k, spec.case)
    s = k % m
    cls_of = {}
    for ci, C in enumerate(D.classes):
        for p in C:
            cls_of[p] = ci
    for C in D.classes:
        if len({cls_of[_m1(p + s, m)] for p in C}) != 1 or len({_m1(p + s, m) for p in C}) != len(C):
            return "direct", np.zeros(rows, dtype=bool)
    images = {cls_of[_m1(C[0] + s, m)] for C in D.classes}
    if len(images) != len(D.classes):
        return "direct", np.zeros(rows, dtype=bool)
    ok = np.ones(rows, dtype=bool)
    for C in D.classes:
        ref = None
        for p in C:
            w = x[:, p - 1]
            if pat[p - 1]:
                w = mul(w, tau)
            c = mul(mul(D.conj[p - 1], w), inv(D.conj[_m1(p + s, m) - 1]))
            if ref is None:
                ref = c
            else:
                ok &= c == ref
    return "direct", ok


def _twist_slices(G: MonolithGroup):
    block = G.alt_size**G.m
    for k in range(G.twist_modulus):
        yield k, slice(k * block, (k + 1) * block)


def member_mask(G: MonolithGroup, D) -> np.ndarray:
    """Boolean membership over the enumeration of G, by the closed-form conditions."""
    if isinstance(D, Socle):
        return G.twist == 0
    if isinstance(D, TwistKernel):
        return G.twist % D.r == 0
    out = np.zeros(G.order, dtype=bool)
    if isinstance(D, ProductType):
        entry = catalog_an_maximals(G.n)[D.M]
        N, Mmask = entry.normalizer.mask, entry.group.mask
        for k, sl in _twist_slices(G):
            out[sl] = product_conditions(G.sn, G.spec, k, G.base[sl], D.conjugators, N, Mmask)[1]
        return out
    if isinstance(D, DiagonalType):
        for k, sl in _twist_slices(G):
            out[sl] = diagonal_conditions(G.sn, G.spec, k, G.base[sl], D)[1]
        return out
    raise TypeError(f"cannot expand {D!r} over {G.spec}")


_EXPAND_CACHE: dict[tuple, int] = {}


def expand(G: MonolithGroup, D) -> int:
    """Element bitset of the subgroup described by ``D`` (cached per group)."""
    key = (G.spec, D)
    if key not in _EXPAND_CACHE:
        _EXPAND_CACHE[key] = B.from_mask(member_mask(G, D))
    return _EXPAND_CACHE[key]


def _element_rows(e: MonolithElement) -> tuple[SymmetricGroup, np.ndarray]:
    sn = symmetric_group(e.spec.n)
    return sn, np.array([[sn.index(x) for x in e.base]], dtype=np.int64)


def membership_product(e: MonolithElement, D: ProductType) -> bool:
    sn, x = _element_rows(e)
    entry = catalog_an_maximals(D.n)[D.M]
    return bool(product_conditions(sn, e.spec, e.twist, x, D.conjugators, entry.normalizer.mask, entry.group.mask)[1][0])


def membership_diagonal(e: MonolithElement, D: DiagonalType) -> bool:
    sn, x = _element_rows(e)
    return bool(diagonal_conditions(sn, e.spec, e.twist, x, D)[1][0])


def membership_rule(spec: GroupSpec, D, k: int) -> str:
    """Name of the condition set used for twist ``k``."""
    sn = symmetric_group(spec.n)
    x = np.zeros((1, spec.m), dtype=np.int64)
    if isinstance(D, ProductType):
        entry = catalog_an_maximals(D.n)[D.M]
        return product_conditions(sn, spec, k, x, D.conjugators, entry.normalizer.mask, entry.group.mask)[0]
    return diagonal_conditions(sn, spec, k, x, D)[0]


# -- membership: brute-force oracle -------------------------------------------------------

def _socle_generators(G: MonolithGroup, D) -> tuple[list[np.ndarray], Callable[[np.ndarray], np.ndarray]]:
    sn, m = G.sn, G.m
    ident = sn.identity
    gens: list[np.ndarray] = []
    if isinstance(D, ProductType):
        entry = catalog_an_maximals(G.n)[D.M]
        conj = D.conjugators
        for p in range(m):
            for h in entry.group.generators:
                t = np.full(m, ident, dtype=np.int64)
                t[p] = sn.conj(h, conj[p])
                gens.append(t)
        Mmask = entry.group.mask

        def member(t: np.ndarray) -> np.ndarray:
            ok = np.ones(t.shape[0], dtype=bool)
            for p in range(m):
                ok &= Mmask[sn.mul(sn.mul(conj[p], t[:, p]), sn.inv(conj[p]))]
            return ok
        return gens, member
    if isinstance(D, DiagonalType):
        alt_gens = PermGroup.from_mask(sn, sn.even_mask).generators
        for C in D.classes:
            for h in alt_gens:
                t = np.full(m, ident, dtype=np.int64)
                for p in C:
                    t[p - 1] = sn.conj(h, D.conj[p - 1])
                gens.append(t)

        def member(t: np.ndarray) -> np.ndarray:
            ok = np.ones(t.shape[0], dtype=bool)
            for C in D.classes:
                lead = t[:, C[0] - 1]
                for p in C[1:]:
                    ok &= t[:, p - 1] == sn.conj(lead, D.conj[p - 1])
            return ok
        return gens, member
    raise TypeError(f"no socle subgroup for {D!r}")


def oracle_member_mask(G: MonolithGroup, D) -> np.ndarray:
    """N_G(S) by conjugating the generators of the socle subgroup S by all of G."""
    if isinstance(D, Socle):
        # generated by the socle itself; no normalizer involved
        return G.twist == 0
    if isinstance(D, TwistKernel):
        gamma = G.index_of(np.array([D.r]), np.full((1, G.m), G.sn.identity))
        H = np.zeros(G.order, dtype=bool)
        H[G.twist == 0] = True
        frontier = np.flatnonzero(H)
        while frontier.size:
            nxt = G.mul(frontier, gamma[0])
            nxt = np.unique(nxt[~H[nxt]])
            H[nxt] = True
            frontier = nxt
        return H
    gens, member = _socle_generators(G, D)
    everything = G.all_indices
    ok = np.ones(G.order, dtype=bool)
    for t in gens:
        s = G.index_of(np.array([0]), t[None, :])[0]
        c = G.conj(s, everything)
        ok &= (G.twist[c] == 0) & member(G.base[c])
    return ok


# -- maximal subgroups of G ------------------------------------------------------------------

CERTIFIED_COMPLETE = {(5, 1, Case.ODD), (5, 2, Case.ODD), (6, 1, Case.ODD), (5, 2, Case.EVEN)}


@dataclass
class MaximalFamily:
    spec: GroupSpec
    descriptors: list
    bits: list[int]
    complete: bool
    notes: list[str] = field(default_factory=list)
    discarded: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.descriptors)

    def items(self):
        return list(zip(self.descriptors, self.bits))

    def bits_of(self, D) -> int:
        return self.bits[self.descriptors.index(D)]


@lru_cache(maxsize=None)
def coset_representatives(n: int, index: int) -> tuple[int, ...]:
    """Canonical representatives a in A_n of the distinct conjugates M^a of catalog entry ``index``.

    M^a = M^b exactly when a lies in N_{S_n}(M) b, so each class is keyed by
    the least even element of N_{S_n}(M) a.
    """
    sn = symmetric_group(n)
    N = catalog_an_maximals(n)[index].normalizer.indices
    alt = sn.alternating.astype(np.int64)
    keys = np.empty(len(alt), dtype=np.int64)
    big = np.iinfo(np.int64).max
    for start in range(0, len(alt), 256):
        chunk = alt[start:start + 256]
        prod = np.asarray(sn.mul(N[:, None], chunk[None, :])).astype(np.int64)
        keys[start:start + 256] = np.where(sn.even_mask[prod], prod, big).min(axis=0)
    return tuple(int(k) for k in np.unique(keys))


def product_candidates(spec: GroupSpec) -> list[ProductType]:
    from itertools import product as cartesian
    out = []
    for entry in catalog_an_maximals(spec.n):
        if spec.case is Case.ODD and not entry.is_restriction:
            continue
        reps = coset_representatives(spec.n, entry.index)
        for a in cartesian(reps, repeat=spec.m - 1):
            out.append(ProductType(spec.n, entry.index, entry.label, tuple(a)))
    return out


def diagonal_candidates(spec: GroupSpec) -> list[DiagonalType]:
    if spec.m == 1:
        return []
    if spec.m != 2:
        raise UnsupportedError("diagonal-type enumeration is implemented for m <= 2")
    sn = symmetric_group(spec.n)
    return [DiagonalType.full(spec.n, a) for a in range(sn.order)]


def enumerate_maximals_G(spec: GroupSpec) -> MaximalFamily:
    """Maximal subgroups of G from the structural catalog, filtered by containment."""
    spec.require_enumerable()
    if spec.m > 2:
        raise UnsupportedError("maximal-subgroup enumeration is implemented for m <= 2")
    G = enumerate_group(spec)
    cands: list = []
    top = spec.twist_modulus
    for r in _primes(top) if top > 1 else []:
        cands.append(Socle() if (spec.case is Case.EVEN and r == top) else TwistKernel(r))
    cands += product_candidates(spec)
    cands += diagonal_candidates(spec)
    bitsets = [expand(G, D) for D in cands]
    if len(set(bitsets)) != len(bitsets):
        raise AssertionError("two candidate descriptors expand to the same subgroup")
    full = B.full(G.order)
    order = sorted(range(len(cands)), key=lambda i: bitsets[i].bit_count())
    keep, dropped = [], []
    for pos, i in enumerate(order):
        bi = bitsets[i]
        if bi == full:
            dropped.append(cands[i])
            continue
        inside = any(bi & ~bitsets[j] == 0 for j in order[pos + 1:] if bitsets[j] != full)
        (dropped if inside else keep).append(i)
    keep.sort(key=lambda i: cands[i].key())
    notes = []
    complete = (spec.n, spec.m, spec.case) in CERTIFIED_COMPLETE
    if not complete:
        notes.append("completeness not certified for this spec")
    if spec.n == 6 and spec.m >= 2:
        notes.append("diagonals twisted by outer automorphisms of A_6 are not represented")
    return MaximalFamily(spec, [cands[i] for i in keep], [bitsets[i] for i in keep], complete, notes,
                         [cands[i] if isinstance(i, int) else i for i in dropped])


# -- Jordan-type checks ---------------------------------------------------------------------

def check_pr2(n: int) -> dict:
    """Scan the S_n catalog: primitive maximals avoid (2,n-2)-cycles, imprimitive avoid
    (n-1)-cycles, intransitive never hold both."""
    if n % 2 == 0 or n not in CATALOG_DEGREES:
        raise UnsupportedError("check_pr2 needs odd n in 5..7")
    sn = symmetric_group(n)
    a_mask = sn.mask_of(sn.indices_of_type(n - 2, 2))
    b_mask = sn.mask_of(sn.indices_of_type(n - 1))
    prim = [K for K in catalog_sn_maximals(n) if K.kind in ("primitive", "alternating")]
    imp = [K for K in catalog_sn_maximals(n) if K.kind == "imprimitive"]
    intr = [K for K in catalog_sn_maximals(n) if K.kind == "intransitive"]
    bad_prim = [K.label for K in prim if (K.group.mask & a_mask).any()]
    bad_imp = [K.label for K in imp if (K.group.mask & b_mask).any()]
    bad_int = [K.label for K in intr if (K.group.mask & a_mask).any() and (K.group.mask & b_mask).any()]
    return {
        "n": n,
        "primitive_avoid_a": not bad_prim,
        "imprimitive_avoid_b": not bad_imp,
        "intransitive_not_both": not bad_int,
        "counts": {"primitive": len(prim), "imprimitive": len(imp), "intransitive": len(intr)},
        "violations": bad_prim + bad_imp + bad_int,
        "passed": not (bad_prim or bad_imp or bad_int),
    }
