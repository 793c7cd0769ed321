"""Element sets as Python integers (bit i set = element i present)."""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


def from_mask(mask: np.ndarray) -> int:
    mask = np.asarray(mask, dtype=bool)
    if not mask.size:
        return 0
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def from_indices(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << int(i)
    return out


def to_mask(bits: int, size: int) -> np.ndarray:
    nbytes = (size + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def to_indices(bits: int, size: int) -> np.ndarray:
    return np.flatnonzero(to_mask(bits, size))


def iter_indices(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def lowest(bits: int) -> int:
    """Index of the least set bit, or -1 for the empty set."""
    return (bits & -bits).bit_length() - 1


def count(bits: int) -> int:
    return bits.bit_count()


def full(size: int) -> int:
    return (1 << size) - 1


def union(sets: Iterable[int]) -> int:
    out = 0
    for s in sets:
        out |= s
    return out
