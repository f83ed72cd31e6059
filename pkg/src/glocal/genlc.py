"""Vertex multisets, r-incidence and r-local complementation.

A multiset ``S`` is stored as its multiplicity vector.  Weighted counts
``S . T`` over a vertex set ``T`` are evaluated with one popcount per bit
plane of the multiplicities, so they stay exact for arbitrarily large
multiplicities and graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .bits import iter_bits, popcount, to_list
from .graph import Graph, InvalidGraphOperation


class InvalidRLC(InvalidGraphOperation):
    """The multiset is dependent or not r-incident in the graph."""


class CapExceeded(RuntimeError):
    """An exponential enumeration was refused because it exceeds its cap."""


@dataclass(frozen=True)
class VertexMultiset:
    mult: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def zeros(cls, n: int) -> "VertexMultiset":
        return cls((0,) * n)

    @classmethod
    def from_mask(cls, n: int, mask: int, value: int = 1) -> "VertexMultiset":
        return cls(tuple(value if (mask >> u) & 1 else 0 for u in range(n)))

    @classmethod
    def from_dict(cls, n: int, mult: Mapping[int, int]) -> "VertexMultiset":
        vec = [0] * n
        for u, m in mult.items():
            u = int(u)
            if not 0 <= u < n:
                raise IndexError(f"vertex {u} out of range for n={n}")
            vec[u] = int(m)
        return cls(tuple(vec))

    @property
    def n(self) -> int:
        return len(self.mult)

    @cached_property
    def support(self) -> int:
        m = 0
        for u, k in enumerate(self.mult):
            if k:
                m |= 1 << u
        return m

    @cached_property
    def _planes(self) -> tuple[int, ...]:
        top = max(self.mult, default=0).bit_length()
        planes = []
        for j in range(top):
            p = 0
            for u, k in enumerate(self.mult):
                if (k >> j) & 1:
                    p |= 1 << u
            planes.append(p)
        return tuple(planes)

    def dot(self, t: int) -> int:
        """``S . T``: total multiplicity of the members of ``T``."""
        return sum(popcount(t & p) << j for j, p in enumerate(self._planes))

    def doubled(self) -> "VertexMultiset":
        return VertexMultiset(tuple(2 * k for k in self.mult))

    def reduced(self, r: int) -> "VertexMultiset":
        return reduce_multiset(self, r)

    def __add__(self, other: "VertexMultiset") -> "VertexMultiset":
        if self.n != other.n:
            raise ValueError("multisets over different vertex counts")
        return VertexMultiset(tuple(a + b for a, b in zip(self.mult, other.mult)))

    def to_json(self) -> dict:
        return {"mult": {str(u): k for u, k in enumerate(self.mult) if k}}

    @classmethod
    def from_json(cls, n: int, obj: Mapping) -> "VertexMultiset":
        return cls.from_dict(n, obj["mult"])


def reduce_multiset(s: VertexMultiset, r: int) -> VertexMultiset:
    if r < 1:
        raise ValueError("r must be >= 1")
    mod = 1 << r
    return VertexMultiset(tuple(k % mod for k in s.mult))


def delta(k: int) -> int:
    return 1 if k == 0 else 0


def incidence_modulus(r: int, k: int) -> int:
    """Required divisor of ``S . Lambda^K`` for ``|K| = k + 2``."""
    return 1 << max(r - k - delta(k), 0)


@dataclass(frozen=True)
class Violation:
    K: int
    k: int
    value: int
    modulus: int

    def to_json(self) -> dict:
        return {"K": to_list(self.K), "k": self.k, "value": self.value, "modulus": self.modulus}


@dataclass(frozen=True)
class IncidenceReport:
    r: int
    ok: bool
    violations: tuple[Violation, ...] = ()
    truncated: bool = False

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "truncated": self.truncated,
        }


@dataclass(frozen=True)
class IncidenceCaps:
    max_n: int | None = 64
    max_r: int = 8
    max_violations: int = 64


DEFAULT_CAPS = IncidenceCaps()


def _check_instance(g: Graph, s: VertexMultiset, r: int) -> None:
    if s.n != g.n:
        raise ValueError(f"multiset over {s.n} vertices used with a graph of order {g.n}")
    if r < 1:
        raise ValueError("r must be >= 1")
    if not g.is_independent(s.support):
        raise InvalidRLC("support of the multiset is not independent")


def is_r_incident(g: Graph, s: VertexMultiset, r: int, caps: IncidenceCaps = DEFAULT_CAPS) -> IncidenceReport:
    """Check every ``K`` outside ``supp(S)`` with ``2 <= |K| <= r + 1``.

    Violations are listed in lexicographic order of ``K`` (as sorted
    tuples) up to ``caps.max_violations``; ``ok`` is exact regardless of the
    listing cap.
    """
    _check_instance(g, s, r)
    if caps.max_n is not None and g.n > caps.max_n:
        raise CapExceeded(f"n={g.n} exceeds the incidence cap {caps.max_n}")
    if r > caps.max_r:
        raise CapExceeded(f"r={r} exceeds the incidence cap {caps.max_r}")
    supp = s.support
    # only vertices adjacent to the support can make S . Lambda^K non-zero
    touch = 0
    for x in iter_bits(supp):
        touch |= g.rows[x]
    cand = to_list(touch & ~supp)
    violations: list[Violation] = []
    ok = True
    truncated = False

    def dfs(start: int, kset: int, size: int, common: int) -> None:
        nonlocal ok, truncated
        for i in range(start, len(cand)):
            v = cand[i]
            c = common & g.rows[v]
            if not c & supp:
                continue
            kk = kset | (1 << v)
            if size + 1 >= 2:
                k = size + 1 - 2
                value = s.dot(c)
                mod = incidence_modulus(r, k)
                if value % mod:
                    ok = False
                    if len(violations) < caps.max_violations:
                        violations.append(Violation(kk, k, value, mod))
                    else:
                        truncated = True
            if size + 1 < r + 1:
                dfs(i + 1, kk, size + 1, c)

    dfs(0, 0, 0, g.vertices)
    return IncidenceReport(r, ok, tuple(violations), truncated)


def toggled_pairs(g: Graph, s: VertexMultiset, r: int) -> list[tuple[int, int]]:
    """Pairs whose weighted common-neighbour count is ``2^(r-1) mod 2^r``."""
    mod = 1 << r
    half = mod >> 1
    touch = 0
    for x in iter_bits(s.support):
        touch |= g.rows[x]
    cand = to_list(touch)
    out = []
    for i, u in enumerate(cand):
        ru = g.rows[u]
        for v in cand[i + 1:]:
            if s.dot(ru & g.rows[v]) % mod == half:
                out.append((u, v))
    return out


def apply_rlc(g: Graph, s: VertexMultiset, r: int, caps: IncidenceCaps = DEFAULT_CAPS, check: bool = True) -> Graph:
    """The r-local complementation of ``g`` over ``s``.

    Raises :class:`InvalidRLC` when ``s`` is dependent or not r-incident
    (unless ``check`` is off, in which case only independence is checked).
    """
    _check_instance(g, s, r)
    if check:
        rep = is_r_incident(g, s, r, caps)
        if not rep.ok:
            v = rep.violations[0]
            raise InvalidRLC(
                f"multiset is not {r}-incident: K={to_list(v.K)} has weight {v.value}, "
                f"not a multiple of {v.modulus}"
            )
    rows = list(g.rows)
    for u, v in toggled_pairs(g, s, r):
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return Graph(g.n, rows, check=False)


def inclusion_exclusion_check(g: Graph, s: VertexMultiset, k: int, max_size: int = 12) -> bool:
    """Compare ``S . Odd(K)`` with the signed sum over non-empty ``R`` of ``S . Lambda^R``."""
    size = popcount(k)
    if size < 1:
        raise ValueError("K must be non-empty")
    if size > max_size:
        raise CapExceeded(f"|K|={size} exceeds the cap {max_size}")
    lhs = s.dot(g.odd_neighborhood(k))
    members = to_list(k)
    rhs = 0
    for sub in range(1, 1 << size):
        rmask = 0
        for i in iter_bits(sub):
            rmask |= 1 << members[i]
        rsize = popcount(sub)
        term = s.dot(g.common_neighborhood(rmask))
        # (-2)^(|R|-1)
        rhs += (-2) ** (rsize - 1) * term
    return lhs == rhs


# -- valid-instance sampling ---------------------------------------------------


def random_independent_set(g: Graph, rng: random.Random, max_size: int | None = None) -> int:
    order = list(range(g.n))
    rng.shuffle(order)
    target = rng.randint(1, max(1, max_size or g.n))
    s = 0
    for u in order:
        if popcount(s) >= target:
            break
        if not g.rows[u] & s:
            s |= 1 << u
    return s


def sample_valid_instance(
    rng: random.Random,
    n_range: Sequence[int] = (2, 10),
    r_range: Sequence[int] = (1, 3),
    p: float | None = None,
    max_tries: int = 100_000,
    nontrivial: bool = False,
) -> tuple[Graph, VertexMultiset, int]:
    """Rejection-sample ``(G, S, r)`` with ``S`` independent and r-incident.

    With ``nontrivial`` the instance must toggle at least one edge.
    """
    for _ in range(max_tries):
        n = rng.randint(*n_range)
        r = rng.randint(*r_range)
        g = Graph.random(n, rng.random() if p is None else p, rng)
        supp = random_independent_set(g, rng)
        mult = [rng.randrange(1, 1 << r) if (supp >> u) & 1 else 0 for u in range(n)]
        s = VertexMultiset(tuple(mult))
        if not is_r_incident(g, s, r).ok:
            continue
        if nontrivial and not toggled_pairs(g, s, r):
            continue
        return g, s, r
    raise RuntimeError("no valid instance found")
