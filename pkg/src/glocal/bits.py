"""Vertex sets as int bitmasks (bit i <-> vertex i)."""

from __future__ import annotations

from typing import Iterable, Iterator


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(x: int) -> Iterator[int]:
    """Yield the set bit positions of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_list(x: int) -> list[int]:
    return list(iter_bits(x))


def from_iter(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def full(n: int) -> int:
    return (1 << n) - 1


def lowest(x: int) -> int:
    return (x & -x).bit_length() - 1


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of row bitmasks."""
    basis: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in basis:
                row ^= basis[top]
            else:
                basis[top] = row
                rank += 1
                break
    return rank
