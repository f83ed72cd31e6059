"""Ordered simple graphs stored as adjacency bitset rows.

Vertex ``i`` is the ``i``-th vertex of the ambient total order; nothing in
this package ever reorders vertices implicitly.  Vertex sets are plain int
bitmasks (see :mod:`glocal.bits`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .bits import from_iter, full, gf2_rank, iter_bits, popcount


class InvalidGraphOperation(ValueError):
    """An operation was asked of a graph that does not satisfy its precondition."""


@dataclass(frozen=True)
class CutRank:
    cut: int
    rank: int


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Sequence[int], *, check: bool = True):
        rows = tuple(rows)
        if check:
            if len(rows) != n:
                raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
            mask = full(n)
            for u, row in enumerate(rows):
                if row & ~mask:
                    raise ValueError(f"row {u} references a vertex outside 0..{n - 1}")
                if (row >> u) & 1:
                    raise ValueError(f"self-loop at vertex {u}")
                for v in iter_bits(row):
                    if not (rows[v] >> u) & 1:
                        raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", hash(rows))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n, check=False)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        m = full(n)
        return cls(n, [m & ~(1 << u) for u in range(n)], check=False)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """Centre is vertex 0, leaves are ``1..leaves``."""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def random(cls, n: int, p: float = 0.5, rng: random.Random | int | None = None) -> "Graph":
        if not isinstance(rng, random.Random):
            rng = random.Random(rng)
        return cls.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])

    @classmethod
    def from_key(cls, n: int, key: int) -> "Graph":
        """Inverse of :attr:`key`."""
        edges = []
        i = 0
        for v in range(1, n):
            for u in range(v):
                if (key >> i) & 1:
                    edges.append((u, v))
                i += 1
        return cls.from_edges(n, edges)

    # -- basic queries -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def vertices(self) -> int:
        return full(self.n)

    @property
    def key(self) -> int:
        """Upper-triangle adjacency bits packed in graph6 column order."""
        key = 0
        i = 0
        for v in range(1, self.n):
            row = self.rows[v]
            for u in range(v):
                if (row >> u) & 1:
                    key |= 1 << i
                i += 1
        return key

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.rows[u] >> v) & 1)

    def degree(self, u: int) -> int:
        return popcount(self.neighbors(u))

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise IndexError(f"vertex {u} out of range for n={self.n}")

    def _check_set(self, d: int) -> None:
        if d < 0 or d >> self.n:
            raise IndexError(f"vertex set {d:#x} not contained in 0..{self.n - 1}")

    def neighbors(self, u: int) -> int:
        self._check_vertex(u)
        return self.rows[u]

    def odd_neighborhood(self, d: int) -> int:
        """Vertices adjacent to an odd number of members of ``d``."""
        self._check_set(d)
        out = 0
        for u in iter_bits(d):
            out ^= self.rows[u]
        return out

    def common_neighborhood(self, k: int) -> int:
        """Vertices adjacent to every member of ``k``; ``k`` must be non-empty."""
        self._check_set(k)
        if not k:
            raise ValueError("common neighbourhood of the empty set is not defined here")
        out = self.vertices
        for u in iter_bits(k):
            out &= self.rows[u]
        return out

    def induced_edge_count(self, d: int) -> int:
        self._check_set(d)
        return sum(popcount(self.rows[u] & d) for u in iter_bits(d)) // 2

    def is_independent(self, d: int) -> bool:
        self._check_set(d)
        return all(not (self.rows[u] & d) for u in iter_bits(d))

    # -- transformations -----------------------------------------------------

    def local_complement(self, u: int) -> "Graph":
        """Complement the subgraph induced by the neighbourhood of ``u``."""
        nb = self.neighbors(u)
        rows = list(self.rows)
        for v in iter_bits(nb):
            rows[v] ^= nb & ~(1 << v)
        return Graph(self.n, rows, check=False)

    def pivot(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise InvalidGraphOperation(f"pivot needs an edge, ({u}, {v}) is not one")
        return self.local_complement(u).local_complement(v).local_complement(u)

    def lc_over_independent_set(self, s: int) -> "Graph":
        """Toggle ``uv`` whenever ``u`` and ``v`` have an odd number of common neighbours in ``s``."""
        if not self.is_independent(s):
            raise InvalidGraphOperation("local complementation over a set needs an independent set")
        rows = list(self.rows)
        for u in range(self.n):
            acc = 0
            for w in iter_bits(self.rows[u] & s):
                acc ^= self.rows[w]
            rows[u] ^= acc & ~(1 << u)
        return Graph(self.n, rows, check=False)

    def cut_rank(self, a: int) -> CutRank:
        self._check_set(a)
        rest = self.vertices & ~a
        return CutRank(a, gf2_rank(self.rows[u] & rest for u in iter_bits(a)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``u`` becomes ``perm[u]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of 0..n-1")
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def delete(self, u: int) -> "Graph":
        """Remove vertex ``u``; later vertices shift down by one."""
        self._check_vertex(u)
        keep = [w for w in range(self.n) if w != u]
        return self.induced(keep)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertices renumbered in the given order."""
        index = {w: i for i, w in enumerate(vertices)}
        rows = []
        for w in vertices:
            rows.append(from_iter(index[x] for x in iter_bits(self.rows[w]) if x in index))
        return Graph(len(vertices), rows, check=False)
