"""The monolithic groups A_n^m : <g> (odd case) and A_n wr C_m (even case).

Elements are kept in normal form ``(x_1, ..., x_m) g^k`` with every ``x_i``
even.  In the odd case ``g = (1, ..., 1, t) d`` with ``t = (12)`` and
``d = (1 2 ... m)``; in the even case ``g = d``.  The ambient form
``(w_1, ..., w_m) d^s`` lives in ``S_n wr C_m`` and multiplies as

    (w; s)(v; t) = (w_i v_{i+s}; s + t),

positions read mod m.  Conjugation by ``d^s`` moves position ``i`` to
``i + s``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .perm import CapacityError, CycleType, Permutation, SizeMismatchError, symmetric_group, transposition

ENUMERATION_LIMIT = 10**7


class Case(str, enum.Enum):
    ODD = "odd"
    EVEN = "even"

    @classmethod
    def parse(cls, value: str | Case) -> Case:
        if isinstance(value, Case):
            return value
        v = value.strip().lower()
        aliases = {"odd": cls.ODD, "even": cls.EVEN, "evenwreath": cls.EVEN, "wreath": cls.EVEN}
        if v not in aliases:
            raise ValueError(f"unknown case {value!r} (expected odd or even)")
        return aliases[v]


class WrongCaseError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GroupSpec:
    n: int
    m: int
    case: Case = Case.ODD

    def __post_init__(self):
        object.__setattr__(self, "case", Case.parse(self.case))
        if self.n < 5:
            raise ValueError("n must be at least 5")
        if self.m < 1:
            raise ValueError("m must be at least 1")

    @property
    def alt_order(self) -> int:
        return math.factorial(self.n) // 2

    @property
    def twist_modulus(self) -> int:
        return 2 * self.m if self.case is Case.ODD else self.m

    @property
    def order(self) -> int:
        return self.alt_order**self.m * self.twist_modulus

    @property
    def socle_order(self) -> int:
        return self.alt_order**self.m

    def enumerable(self) -> bool:
        return self.order <= ENUMERATION_LIMIT and self.n <= 8

    def require_enumerable(self) -> None:
        if not self.enumerable():
            raise CapacityError(f"{self} has order {self.order}, above the enumeration limit {ENUMERATION_LIMIT}")

    def label(self) -> str:
        return f"({self.n},{self.m})-{self.case.value}"

    def __str__(self) -> str:
        return self.label()


def twist_pattern(m: int, k: int, case: Case = Case.ODD) -> tuple[bool, ...]:
    """Positions carrying ``t`` in ``g^k``: ``pattern[d-1]`` is true iff t_d = t."""
    if Case.parse(case) is Case.EVEN:
        return (False,) * m
    k %= 2 * m
    if k == 0:
        return (False,) * m
    if k == m:
        return (True,) * m
    if k < m:
        return tuple(d > m - k for d in range(1, m + 1))
    return tuple(d <= 2 * m - k for d in range(1, m + 1))


@dataclass(frozen=True)
class AmbientElement:
    w: tuple[Permutation, ...]
    shift: int

    def __post_init__(self):
        m = len(self.w)
        object.__setattr__(self, "shift", self.shift % m)

    @property
    def m(self) -> int:
        return len(self.w)

    def __mul__(self, other: AmbientElement) -> AmbientElement:
        if other.m != self.m:
            raise SizeMismatchError("ambient elements over different m")
        m, s = self.m, self.shift
        return AmbientElement(tuple(self.w[i] * other.w[(i + s) % m] for i in range(m)), s + other.shift)

    def inverse(self) -> AmbientElement:
        m, s = self.m, self.shift
        return AmbientElement(tuple(self.w[(j - s) % m].inverse() for j in range(m)), -s)

    def is_identity(self) -> bool:
        return self.shift == 0 and all(x.is_identity() for x in self.w)


@dataclass(frozen=True)
class MonolithElement:
    spec: GroupSpec
    base: tuple[Permutation, ...]
    twist: int

    def __post_init__(self):
        if len(self.base) != self.spec.m:
            raise SizeMismatchError(f"expected {self.spec.m} base permutations, got {len(self.base)}")
        for x in self.base:
            if x.n != self.spec.n:
                raise SizeMismatchError(f"base permutation of degree {x.n} in {self.spec}")
            if not x.is_even:
                raise ValueError(f"normal form needs even base entries, got {x}")
        object.__setattr__(self, "twist", self.twist % self.spec.twist_modulus)

    @classmethod
    def identity(cls, spec: GroupSpec) -> MonolithElement:
        return cls(spec, (Permutation.identity(spec.n),) * spec.m, 0)

    @classmethod
    def parse(cls, spec: GroupSpec, parts: Sequence[str], twist: int) -> MonolithElement:
        return cls(spec, tuple(Permutation.parse(p, spec.n) for p in parts), twist)

    def ambient(self) -> AmbientElement:
        return ambient_expand(self)

    def __mul__(self, other: MonolithElement) -> MonolithElement:
        return multiply(self, other)

    def inverse(self) -> MonolithElement:
        return inverse(self)

    def __str__(self) -> str:
        g = "g" if self.spec.case is Case.ODD else "d"
        return "(" + ",".join(str(x) for x in self.base) + f")·{g}^{self.twist}"


def _tau(n: int) -> Permutation:
    return transposition(n, 1, 2)


def gamma_power(spec: GroupSpec, k: int) -> AmbientElement:
    if spec.case is not Case.ODD:
        raise WrongCaseError("gamma_power is defined for the odd case")
    t, one = _tau(spec.n), Permutation.identity(spec.n)
    pattern = twist_pattern(spec.m, k)
    return AmbientElement(tuple(t if p else one for p in pattern), k % spec.m)


def ambient_expand(e: MonolithElement) -> AmbientElement:
    spec = e.spec
    pattern = twist_pattern(spec.m, e.twist, spec.case)
    t = _tau(spec.n)
    return AmbientElement(tuple(x * t if p else x for x, p in zip(e.base, pattern)), e.twist % spec.m)


def in_group(w: AmbientElement, spec: GroupSpec) -> MonolithElement | None:
    """Normal form of ``w`` if it lies in the group, else ``None``."""
    if w.m != spec.m or any(x.n != spec.n for x in w.w):
        raise SizeMismatchError("ambient element does not match the group")
    parity = tuple(bool(x.parity()) for x in w.w)
    if spec.case is Case.EVEN:
        return MonolithElement(spec, w.w, w.shift) if not any(parity) else None
    t = _tau(spec.n)
    matches = [k for k in (w.shift, w.shift + spec.m) if twist_pattern(spec.m, k) == parity]
    if len(matches) != 1:
        return None
    k = matches[0]
    pattern = twist_pattern(spec.m, k)
    return MonolithElement(spec, tuple(x * t if p else x for x, p in zip(w.w, pattern)), k)


def _same_spec(a: MonolithElement, b: MonolithElement) -> None:
    if a.spec != b.spec:
        raise SizeMismatchError(f"elements of different groups: {a.spec} vs {b.spec}")


def multiply(a: MonolithElement, b: MonolithElement) -> MonolithElement:
    _same_spec(a, b)
    out = in_group(ambient_expand(a) * ambient_expand(b), a.spec)
    assert out is not None
    return out


def inverse(a: MonolithElement) -> MonolithElement:
    out = in_group(ambient_expand(a).inverse(), a.spec)
    assert out is not None
    return out


def power(a: MonolithElement, e: int) -> MonolithElement:
    result = MonolithElement.identity(a.spec)
    base = a if e >= 0 else inverse(a)
    for _ in range(abs(e)):
        result = multiply(result, base)
    return result


class PreconditionError(ValueError):
    pass


def _strand(xs: Sequence[Permutation], start: int, step: int, count: int) -> Permutation:
    m = len(xs)
    out = Permutation.identity(xs[0].n)
    for j in range(count):
        out = out * xs[(start - 1 + j * step) % m]
    return out


def product_invariant(e: MonolithElement, r: int = 1) -> list[Permutation]:
    """Strand products governing product-type membership.

    ``r = 1`` needs a twist ``k`` coprime to 2m and returns the single odd
    product ``x_1 t_1 x_{1+k'} t_{1+k'} ...`` with ``k' = k`` or ``k - m``.
    For ``r | m`` and twist exactly ``r`` it returns the ``r`` strands
    ``x_i x_{i+r} ... x_{i+m-r} t``.  For odd ``m``, ``r = 2`` and twist 2 the
    single product ``x_1 x_3 ... x_m t x_2 x_4 ... x_{m-1} t`` is returned.
    """
    spec = e.spec
    if spec.case is not Case.ODD:
        raise WrongCaseError("product invariants are defined for the odd case")
    m, k, t = spec.m, e.twist, _tau(spec.n)
    if r == 1:
        if math.gcd(k, 2 * m) != 1:
            raise PreconditionError(f"twist {k} is not coprime to {2 * m}")
        step = k if k < m else k - m
        pattern = twist_pattern(m, k)
        out = Permutation.identity(spec.n)
        for j in range(m):
            d = (j * step) % m
            out = out * e.base[d]
            if pattern[d]:
                out = out * t
        return [out]
    if m % r == 0:
        if k != r:
            raise PreconditionError(f"strand products need twist {r}, got {k}")
        return [_strand(e.base, i, r, m // r) * t for i in range(1, r + 1)]
    if r == 2 and m % 2 == 1:
        if k != 2:
            raise PreconditionError(f"twist 2 required, got {k}")
        odd = _strand(e.base, 1, 2, (m + 1) // 2)
        even = _strand(e.base, 2, 2, (m - 1) // 2)
        return [odd * t * even * t]
    raise PreconditionError(f"r = {r} is neither 1 nor a divisor of m = {m}")


def element_type(e: MonolithElement) -> CycleType:
    """Cycle type of ``x y`` for ``(x, y)d`` in the even wreath with m = 2."""
    if e.spec.case is not Case.EVEN or e.spec.m != 2:
        raise WrongCaseError("element types are defined for the even case with m = 2")
    if e.twist == 0:
        raise WrongCaseError("socle elements have no type")
    return (e.base[0] * e.base[1]).cycle_type()


# -- enumerated groups ---------------------------------------------------------

class MonolithGroup:
    """Frozen enumeration of a group, with vectorized arithmetic on indices.

    Order: by twist, then lexicographically by the base entries, each entry
    ordered by its position in the lexicographic list of A_n.
    """

    def __init__(self, spec: GroupSpec):
        spec.require_enumerable()
        self.spec = spec
        self.n, self.m = spec.n, spec.m
        self.sn = symmetric_group(spec.n)
        self.alt = self.sn.alternating
        self.alt_size = len(self.alt)
        self.order = spec.order
        self.twist_modulus = spec.twist_modulus
        self.tau = self.sn.index(_tau(spec.n))
        self.patterns = np.array([twist_pattern(self.m, k, spec.case) for k in range(self.twist_modulus)], dtype=bool)
        idx = np.arange(self.order, dtype=np.int64)
        block = self.alt_size**self.m
        self.twist = (idx // block).astype(np.int32)
        rem = idx % block
        base = np.empty((self.order, self.m), dtype=np.int32)
        for d in reversed(range(self.m)):
            base[:, d] = self.alt[rem % self.alt_size]
            rem //= self.alt_size
        self.base = base
        self._radix = self.alt_size ** np.arange(self.m - 1, -1, -1, dtype=np.int64)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"MonolithGroup({self.spec})"

    # conversion
    def index_of(self, twist, base) -> np.ndarray:
        base = np.asarray(base)
        ranks = self.sn.alt_rank[base].astype(np.int64)
        if np.any(ranks < 0):
            raise ValueError("base entries must be even")
        return np.asarray(twist, dtype=np.int64) % self.twist_modulus * self.alt_size**self.m + ranks @ self._radix

    def index(self, e: MonolithElement) -> int:
        if e.spec != self.spec:
            raise SizeMismatchError("element from another group")
        base = np.array([[self.sn.index(x) for x in e.base]])
        return int(self.index_of(np.array([e.twist]), base)[0])

    def element(self, i: int) -> MonolithElement:
        i = int(i)
        return MonolithElement(self.spec, tuple(self.sn.perm(b) for b in self.base[i]), int(self.twist[i]))

    def identity_index(self) -> int:
        return int(self.index_of(np.array([0]), np.zeros((1, self.m), dtype=np.int32))[0])

    # ambient form
    def ambient(self, idx) -> tuple[np.ndarray, np.ndarray]:
        idx = np.asarray(idx)
        k = self.twist[idx]
        x = self.base[idx]
        pat = self.patterns[k]
        w = np.where(pat, self.sn.mul(x, self.tau), x)
        return w, k % self.m

    def normalize(self, w: np.ndarray, shift: np.ndarray) -> np.ndarray:
        """Indices of ambient elements; -1 where an element is not in the group."""
        par = self.sn.parity[w].astype(bool)
        shift = np.asarray(shift) % self.m
        if self.spec.case is Case.EVEN:
            ok = ~par.any(axis=-1)
            out = np.full(ok.shape, -1, dtype=np.int64)
            if ok.any():
                out[ok] = self.index_of(shift[ok] if shift.ndim else np.broadcast_to(shift, ok.shape)[ok], w[ok])
            return out
        shift = np.broadcast_to(shift, par.shape[:-1])
        k1, k2 = shift, shift + self.m
        m1 = (self.patterns[k1] == par).all(axis=-1)
        m2 = (self.patterns[k2] == par).all(axis=-1)
        k = np.where(m1, k1, k2)
        ok = m1 | m2
        x = np.where(self.patterns[k], self.sn.mul(w, self.tau), w)
        out = np.full(ok.shape, -1, dtype=np.int64)
        if ok.any():
            out[ok] = self.index_of(k[ok], x[ok])
        return out

    def ambient_mul(self, w, s, v, t):
        """Product of ambient arrays ``w, v`` of shape (N, m) with shifts (N,)."""
        w, v = np.broadcast_arrays(np.asarray(w), np.asarray(v))
        s = np.broadcast_to(np.asarray(s), w.shape[:1])
        pos = (np.arange(self.m)[None, :] + s[:, None]) % self.m
        prod = self.sn.mul(w, np.take_along_axis(v, pos, axis=1))
        return prod, (s + np.asarray(t)) % self.m

    def ambient_inv(self, w, s):
        m = self.m
        w = w.reshape(-1, m)
        s = np.broadcast_to(np.asarray(s), (w.shape[0],))
        pos = (np.arange(m)[None, :] - s[:, None]) % m
        return self.sn.inv(np.take_along_axis(w, pos, axis=1)), (-s) % m

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        shape = a.shape
        w, s = self.ambient(a.ravel())
        v, t = self.ambient(b.ravel())
        prod, shift = self.ambient_mul(w, s, v, t)
        return self.normalize(prod, shift).reshape(shape)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a)
        w, s = self.ambient(a.ravel())
        wi, si = self.ambient_inv(w, s)
        return self.normalize(wi, si).reshape(a.shape)

    def conj(self, a, g) -> np.ndarray:
        """Indices of ``g^-1 a g``."""
        return self.mul(self.mul(self.inv(g), a), g)

    # slices and masks
    def twist_mask(self, k: int) -> np.ndarray:
        return self.twist == (k % self.twist_modulus)

    def socle_mask(self) -> np.ndarray:
        return self.twist == 0

    @cached_property
    def all_indices(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def element_types(self) -> list[CycleType | None]:
        """Per-element cycle type of ``x y`` (even case, m = 2); None on the socle."""
        if self.spec.case is not Case.EVEN or self.m != 2:
            raise WrongCaseError("element types are defined for the even case with m = 2")
        prod = self.sn.mul(self.base[:, 0], self.base[:, 1])
        return [None if k == 0 else self.sn.cycle_type(p) for k, p in zip(self.twist, prod)]

    def type_codes(self) -> np.ndarray:
        """Moved-cycle signature of ``x y`` per element as a string array ('' = identity)."""
        if self.spec.case is not Case.EVEN or self.m != 2:
            raise WrongCaseError("element types are defined for the even case with m = 2")
        labels = np.array([_type_label(self.sn.cycle_type(i)) for i in range(self.sn.order)], dtype=object)
        prod = self.sn.mul(self.base[:, 0], self.base[:, 1])
        out = labels[prod].copy()
        out[self.twist == 0] = "socle"
        return out


def _type_label(ct: CycleType) -> str:
    moved = ct.moved()
    if not moved:
        return "1"
    return "(" + ",".join(str(p) for p in moved) + ")"


@lru_cache(maxsize=8)
def enumerate_group(spec: GroupSpec) -> MonolithGroup:
    return MonolithGroup(spec)
