"""Permutations of {1..n} and indexed symmetric groups.

Composition is a right action everywhere in this package: ``p * q`` applies
``p`` first, then ``q``, so ``(i)(pq) = ((i)p)q``.  Conjugation is
``p ** g = g^-1 p g``.
"""
from __future__ import annotations

import math
import re
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

MIN_DEGREE = 1
MAX_DEGREE = 16
ROOT_ENUMERATION_LIMIT = 8
_TABLE_LIMIT = 6

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class SizeMismatchError(ValueError):
    pass


class CapacityError(ValueError):
    """Raised when an exhaustive computation is requested beyond its guard."""


class CycleType(tuple):
    """Descending cycle lengths, fixed points included."""

    def __new__(cls, parts: Iterable[int]):
        return super().__new__(cls, sorted((int(p) for p in parts), reverse=True))

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def n(self) -> int:
        return sum(self)

    def moved(self) -> tuple[int, ...]:
        """Lengths of the non-trivial cycles, e.g. ``(3, 2)`` for ``(123)(45)``."""
        return tuple(p for p in self if p > 1)

    def __repr__(self) -> str:
        return f"CycleType{tuple(self)}"


class Permutation:
    """An immutable permutation of {1..n}."""

    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int], *, zero_based: bool = False):
        img = tuple(int(v) for v in images)
        if not zero_based:
            img = tuple(v - 1 for v in img)
        n = len(img)
        if not MIN_DEGREE <= n <= MAX_DEGREE:
            raise ValueError(f"degree {n} outside 1..{MAX_DEGREE}")
        if sorted(img) != list(range(n)):
            raise ValueError(f"not a bijection of 1..{n}: {images!r}")
        self._img = img

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n), zero_based=True)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        return parse_cycles(text, n)

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image table: ``images[i-1]`` is the image of point ``i``."""
        return tuple(v + 1 for v in self._img)

    @property
    def zero_based(self) -> tuple[int, ...]:
        return self._img

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, e: int | Permutation) -> Permutation:
        if isinstance(e, Permutation):
            return conjugate(self, e)
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self._img):
            inv[v] = i
        return Permutation(inv, zero_based=True)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._img))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self._img[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self._img[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(c + 1 for c in cyc))
        return out

    def cycle_type(self) -> CycleType:
        return CycleType(len(c) for c in self.cycles(include_fixed=True))

    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return (self.n - len(self.cycles(include_fixed=True))) % 2

    @property
    def is_even(self) -> bool:
        return self.parity() == 0

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self._img) if i == v)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, v in enumerate(self._img) if i != v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: Permutation) -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.n})"


def _check_same_degree(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise SizeMismatchError(f"degree mismatch: {p.n} vs {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    _check_same_degree(p, q)
    qi = q.zero_based
    return Permutation([qi[v] for v in p.zero_based], zero_based=True)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """``g^-1 p g``."""
    _check_same_degree(p, g)
    return compose(compose(g.inverse(), p), g)


def cycle_type_and_parity(p: Permutation) -> tuple[CycleType, int]:
    ct = p.cycle_type()
    return ct, (p.n - len(ct)) % 2


def count_roots(b: Permutation, r: int) -> int:
    """Number of ``s`` in S_n with ``s**r == b``, by enumeration."""
    if r < 1:
        raise ValueError("r must be positive")
    if b.n > ROOT_ENUMERATION_LIMIT:
        raise CapacityError(f"root counting enumerates S_{b.n}; limit is n <= {ROOT_ENUMERATION_LIMIT}")
    target = b.zero_based
    count = 0
    for img in permutations(range(b.n)):
        s = Permutation(img, zero_based=True)
        if (s ** r).zero_based == target:
            count += 1
    return count


def parse_cycles(text: str, n: int | None = None) -> Permutation:
    """Parse cycle notation: ``"(2354)"``, ``"(12)(345)"``, ``"id"`` or ``"1"``.

    Multi-digit points may be comma or space separated inside a cycle,
    e.g. ``"(1,10,11)"``.  When ``n`` is omitted the largest point is used.
    """
    s = text.strip()
    if s in ("", "id", "1", "()", "e"):
        if n is None:
            raise ValueError("degree required to parse the identity")
        return Permutation.identity(n)
    if _CYCLE_RE.sub("", s).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(s):
        body = body.strip()
        if "," in body or " " in body:
            pts = [int(t) for t in re.split(r"[,\s]+", body) if t]
        else:
            pts = [int(c) for c in body]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {body!r}")
        cycles.append(pts)
    top = max((max(c) for c in cycles if c), default=1)
    if n is None:
        n = top
    if top > n or min((min(c) for c in cycles if c), default=1) < 1:
        raise ValueError(f"point outside 1..{n} in {text!r}")
    img = list(range(n))
    # cycles compose left to right
    perm = Permutation.identity(n)
    for pts in cycles:
        img = list(range(n))
        for i, a in enumerate(pts):
            img[a - 1] = pts[(i + 1) % len(pts)] - 1
        perm = perm * Permutation(img, zero_based=True)
    return perm


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "id"
    sep = "," if p.n >= 10 else ""
    return "".join("(" + sep.join(str(c) for c in cyc) + ")" for cyc in cycles)


# -- indexed symmetric groups -------------------------------------------------

def _lehmer_rank(images: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row of a (N, n) array of 0-based images."""
    images = np.asarray(images)
    n = images.shape[-1]
    rank = np.zeros(images.shape[:-1], dtype=np.int64)
    for i in range(n):
        smaller = (images[..., i + 1:] < images[..., i:i + 1]).sum(axis=-1)
        rank += smaller * math.factorial(n - 1 - i)
    return rank


class SymmetricGroup:
    """S_n with every element indexed by its lexicographic rank.

    Index arrays are the working currency of the enumerated groups: ``mul``,
    ``inv`` and the masks accept numpy integer arrays and broadcast.
    """

    def __init__(self, n: int):
        if not 1 <= n <= ROOT_ENUMERATION_LIMIT:
            raise CapacityError(f"S_{n} is not enumerable here (n <= {ROOT_ENUMERATION_LIMIT})")
        self.n = n
        self.order = math.factorial(n)
        self.images = np.array(list(permutations(range(n))), dtype=np.int8).reshape(self.order, n)
        self.identity = 0
        inv_img = np.argsort(self.images, axis=1).astype(np.int8)
        self.inverse_index = _lehmer_rank(inv_img).astype(np.int32)
        self._table = None
        if n <= _TABLE_LIMIT:
            comp = np.take_along_axis(
                self.images[None, :, :].repeat(self.order, axis=0),
                np.broadcast_to(self.images[:, None, :], (self.order, self.order, n)).astype(np.int64),
                axis=2,
            )
            # comp[a, b] = images[b][images[a]]: apply a then b
            self._table = _lehmer_rank(comp).astype(np.int32)
        cycle_counts = np.zeros(self.order, dtype=np.int64)
        self._cycle_types: list[CycleType] = []
        for idx in range(self.order):
            ct = Permutation(self.images[idx], zero_based=True).cycle_type()
            self._cycle_types.append(ct)
            cycle_counts[idx] = len(ct)
        self.parity = ((n - cycle_counts) % 2).astype(np.int8)
        self.even_mask = self.parity == 0
        self.alternating = np.flatnonzero(self.even_mask).astype(np.int32)
        self.alt_rank = np.full(self.order, -1, dtype=np.int32)
        self.alt_rank[self.alternating] = np.arange(len(self.alternating), dtype=np.int32)

    def mul(self, a, b):
        """Index of ``a * b`` (apply a, then b); broadcasts over arrays."""
        if self._table is not None:
            return self._table[a, b]
        a_img = self.images[np.asarray(a)]
        b_img = self.images[np.asarray(b)]
        a_img, b_img = np.broadcast_arrays(a_img, b_img)
        comp = np.take_along_axis(b_img, a_img.astype(np.int64), axis=-1)
        return _lehmer_rank(comp).astype(np.int32)

    def inv(self, a):
        return self.inverse_index[a]

    def conj(self, a, g):
        """Index of ``g^-1 a g``."""
        return self.mul(self.mul(self.inv(g), a), g)

    def index(self, p: Permutation | Sequence[int]) -> int:
        img = p.zero_based if isinstance(p, Permutation) else tuple(p)
        if len(img) != self.n:
            raise SizeMismatchError(f"degree mismatch: {len(img)} vs {self.n}")
        return int(_lehmer_rank(np.array(img)[None, :])[0])

    def perm(self, idx: int) -> Permutation:
        return Permutation(self.images[int(idx)], zero_based=True)

    def parse(self, text: str) -> int:
        return self.index(parse_cycles(text, self.n))

    def cycle_type(self, idx: int) -> CycleType:
        return self._cycle_types[int(idx)]

    def indices_of_type(self, *moved: int) -> np.ndarray:
        """Indices of elements whose non-trivial cycle lengths are ``moved``."""
        want = tuple(sorted(moved, reverse=True))
        return np.array([i for i, ct in enumerate(self._cycle_types) if ct.moved() == want], dtype=np.int32)

    def mask_of(self, indices: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[np.fromiter(indices, dtype=np.int64)] = True
        return mask

    def power(self, a: int, e: int) -> int:
        result = self.identity
        for _ in range(e):
            result = int(self.mul(result, a))
        return result

    def __repr__(self) -> str:
        return f"SymmetricGroup({self.n})"


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> SymmetricGroup:
    return SymmetricGroup(n)


def transposition(n: int, i: int = 1, j: int = 2) -> Permutation:
    img = list(range(n))
    img[i - 1], img[j - 1] = img[j - 1], img[i - 1]
    return Permutation(img, zero_based=True)
