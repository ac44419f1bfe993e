"""Small helpers for sets encoded as Python ints (bit i set = index i present)."""

from typing import Iterable, Iterator


def full(n: int) -> int:
    return (1 << n) - 1


def mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def members(bits: int) -> Iterator[int]:
    """Yield the indices present in ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def count(bits: int) -> int:
    return bin(bits).count("1")


def subsets(n: int) -> range:
    """All subsets of an ``n``-element index space, as masks."""
    return range(1 << n)


def submasks(bits: int) -> Iterator[int]:
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def image(table: tuple[int, ...], bits: int) -> int:
    out = 0
    for i in members(bits):
        out |= 1 << table[i]
    return out


def preimage_table(table: tuple[int, ...], target_size: int) -> tuple[int, ...]:
    """For each target index, the mask of source indices mapped onto it."""
    pre = [0] * target_size
    for i, t in enumerate(table):
        pre[t] |= 1 << i
    return tuple(pre)


def preimage(pre: tuple[int, ...], bits: int) -> int:
    out = 0
    for t in members(bits):
        out |= pre[t]
    return out
