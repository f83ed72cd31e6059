"""Local sets, minimal local sets and vertex types.

All non-empty generators ``D`` are swept at once: the odd neighbourhood of
every subset is built by doubling (``Odd(D | {i}) = Odd(D) ^ N(i)`` for
``D`` below bit ``i``), which costs one XOR per subset.  Minimality is
decided with a subset-OR (zeta) transform over the indicator of local sets:
``L`` is minimal iff no ``L - {v}`` contains a local set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .bits import popcount, to_list
from .genlc import CapExceeded
from .graph import Graph

DEFAULT_MAX_N = int(os.environ.get("GLOCAL_CAPS_N", "20"))

X, Y, Z, BOT = "X", "Y", "Z", "bot"
LABELS = (X, Y, Z, BOT)


@dataclass(frozen=True)
class LocalSetRecord:
    set: int
    generators: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return 1 if len(self.generators) == 1 else 2

    @property
    def size(self) -> int:
        return popcount(self.set)

    def to_json(self) -> dict:
        return {
            "set": to_list(self.set),
            "generators": [to_list(d) for d in self.generators],
            "signs": list(self.signs),
            "dimension": self.dimension,
        }


@dataclass(frozen=True)
class TypePartition:
    labels: tuple[str, ...]

    def __post_init__(self):
        bad = set(self.labels) - set(LABELS)
        if bad:
            raise ValueError(f"unknown vertex labels {sorted(bad)}")

    @classmethod
    def from_masks(cls, n: int, x: int = 0, y: int = 0, z: int = 0) -> "TypePartition":
        labels = []
        for u in range(n):
            bit = 1 << u
            labels.append(X if x & bit else Y if y & bit else Z if z & bit else BOT)
        return cls(tuple(labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __getitem__(self, u: int) -> str:
        return self.labels[u]

    def mask(self, label: str) -> int:
        m = 0
        for u, lab in enumerate(self.labels):
            if lab == label:
                m |= 1 << u
        return m

    def count(self, label: str) -> int:
        return self.labels.count(label)

    def to_json(self) -> dict:
        return {lab: [u for u, l in enumerate(self.labels) if l == lab] for lab in LABELS}

    @classmethod
    def from_json(cls, obj: dict) -> "TypePartition":
        n = sum(len(v) for v in obj.values())
        labels = [None] * n
        for lab, members in obj.items():
            for u in members:
                labels[u] = lab
        return cls(tuple(labels))

    def __str__(self):
        return "".join("_" if lab == BOT else lab for lab in self.labels)


def local_set(g: Graph, d: int) -> int:
    if not d:
        raise ValueError("a generator must be non-empty")
    return d | g.odd_neighborhood(d)


def _odd_table(g: Graph) -> np.ndarray:
    odd = np.zeros(1 << g.n, dtype=np.int64)
    for i in range(g.n):
        half = 1 << i
        odd[half:2 * half] = odd[:half] ^ g.rows[i]
    return odd


def _check_cap(g: Graph, max_n: int | None) -> None:
    cap = DEFAULT_MAX_N if max_n is None else max_n
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds the local-set enumeration cap {cap}")
    if g.n > 62:
        raise CapExceeded("local-set enumeration is limited to 62 vertices")


def local_set_table(g: Graph, max_n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``(odd, L)`` indexed by generator bitmask; ``L[0]`` is meaningless."""
    _check_cap(g, max_n)
    odd = _odd_table(g)
    ls = np.arange(1 << g.n, dtype=np.int64) | odd
    return odd, ls


def all_local_sets(g: Graph, max_n: int | None = None) -> set[int]:
    _, ls = local_set_table(g, max_n)
    return set(np.unique(ls[1:]).tolist())


def enumerate_mls(g: Graph, max_n: int | None = None) -> list[LocalSetRecord]:
    """All minimal local sets with their generators, sorted by set bitmask."""
    if g.n == 0:
        return []
    odd, ls = local_set_table(g, max_n)
    size = 1 << g.n
    is_local = np.zeros(size, dtype=bool)
    is_local[ls[1:]] = True
    # contains[m]: some local set is a subset of m
    contains = is_local.copy()
    for i in range(g.n):
        view = contains.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    idx = np.arange(size, dtype=np.int64)
    dominated = np.zeros(size, dtype=bool)
    for i in range(g.n):
        bit = np.int64(1 << i)
        has = (idx & bit) != 0
        dominated |= has & contains[idx ^ bit]
    minimal = np.flatnonzero(is_local & ~dominated)

    order = np.argsort(ls[1:], kind="stable") + 1
    sorted_ls = ls[order]
    lo = np.searchsorted(sorted_ls, minimal, side="left")
    hi = np.searchsorted(sorted_ls, minimal, side="right")
    records = []
    for m, a, b in zip(minimal.tolist(), lo.tolist(), hi.tolist()):
        gens = tuple(sorted(order[a:b].tolist()))
        if len(gens) not in (1, 3):
            raise AssertionError(f"minimal local set {to_list(m)} has {len(gens)} generators")
        signs = tuple(-1 if g.induced_edge_count(d) % 2 else 1 for d in gens)
        records.append(LocalSetRecord(m, gens, signs))
    return records


def types_from_mls(n: int, records: list[LocalSetRecord], g: Graph) -> TypePartition:
    seen_x = seen_y = seen_z = 0
    for rec in records:
        for d in rec.generators:
            o = g.odd_neighborhood(d)
            seen_x |= d & ~o
            seen_y |= d & o
            seen_z |= o & ~d
    labels = []
    for u in range(n):
        bit = 1 << u
        hits = [lab for lab, seen in ((X, seen_x), (Y, seen_y), (Z, seen_z)) if seen & bit]
        if not hits:
            raise AssertionError(f"vertex {u} is not covered by any minimal local set")
        labels.append(hits[0] if len(hits) == 1 else BOT)
    return TypePartition(tuple(labels))


def vertex_types(g: Graph, max_n: int | None = None) -> TypePartition:
    return types_from_mls(g.n, enumerate_mls(g, max_n), g)


def mls_cover_check(g: Graph, max_n: int | None = None) -> bool:
    covered = 0
    for rec in enumerate_mls(g, max_n):
        covered |= rec.set
    return covered == g.vertices


def mls_signature(records: list[LocalSetRecord]) -> dict[int, int]:
    """Map each minimal local set to its dimension (an LU invariant)."""
    return {rec.set: rec.dimension for rec in records}
