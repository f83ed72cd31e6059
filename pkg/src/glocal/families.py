"""The Kneser-like families C_{t,k} / C'_{t,k}, repeater graphs, the leaf
criterion, and exact 2-adic binomial arithmetic.

Vertex layout of C_{t,k}: the k-subsets of [1, t] in colex order, then the
integers 1..t.  C'_{t,k} adds the clique on the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .bits import popcount
from .genlc import IncidenceCaps, VertexMultiset, apply_rlc, is_r_incident
from .graph import Graph

MAX_FAMILY_VERTICES = 50_000


def binom(m: int, s: int) -> int:
    """``C(m, s)``, zero outside ``0 <= s <= m``."""
    if m < 0 or s < 0 or s > m:
        return 0
    return math.comb(m, s)


def v2_binomial(m: int, s: int) -> int:
    """2-adic valuation of ``C(m, s)`` as ``w(s) + w(m - s) - w(m)`` (Hamming weights)."""
    if not 0 <= s <= m:
        raise ValueError(f"need 0 <= s <= m, got m={m}, s={s}")
    return popcount(s) + popcount(m - s) - popcount(m)


def v2(x: int) -> int:
    if x == 0:
        raise ValueError("the 2-adic valuation of 0 is infinite")
    return (x & -x).bit_length() - 1


# -- families ------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    t: int
    k: int
    variant: str = "C"

    def __post_init__(self):
        if not 1 <= self.k <= self.t:
            raise ValueError(f"need t >= k >= 1, got t={self.t}, k={self.k}")
        if self.variant not in ("C", "C'"):
            raise ValueError(f"variant must be C or C', got {self.variant!r}")

    @property
    def num_subsets(self) -> int:
        return math.comb(self.t, self.k)

    @property
    def order(self) -> int:
        return self.num_subsets + self.t

    def subsets(self) -> list[tuple[int, ...]]:
        return sorted(combinations(range(1, self.t + 1), self.k), key=lambda c: c[::-1])

    def labels(self) -> list[str]:
        subs = ["{" + ",".join(map(str, c)) + "}" for c in self.subsets()]
        return subs + [str(i) for i in range(1, self.t + 1)]

    def integer_vertex(self, i: int) -> int:
        return self.num_subsets + i - 1

    @property
    def subset_mask(self) -> int:
        return (1 << self.num_subsets) - 1

    @property
    def integer_mask(self) -> int:
        return ((1 << self.t) - 1) << self.num_subsets


def gen_family(spec: FamilySpec, max_vertices: int = MAX_FAMILY_VERTICES) -> Graph:
    if spec.order > max_vertices:
        raise MemoryError(f"C_{{{spec.t},{spec.k}}} has {spec.order} vertices, above the cap {max_vertices}")
    m = spec.num_subsets
    rows = [0] * spec.order
    for a, sub in enumerate(spec.subsets()):
        for i in sub:
            v = m + i - 1
            rows[a] |= 1 << v
            rows[v] |= 1 << a
    if spec.variant == "C'":
        ints = spec.integer_mask
        for i in range(spec.t):
            v = m + i
            rows[v] |= ints & ~(1 << v)
    return Graph(spec.order, rows, check=False)


def all_ones_witness(spec: FamilySpec) -> VertexMultiset:
    return VertexMultiset.from_mask(spec.order, spec.subset_mask)


def family_caps() -> IncidenceCaps:
    return IncidenceCaps(max_n=None)


# -- hierarchy arithmetic ------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    name: str
    value: int
    modulus: int
    target: int
    ok: bool

    def to_json(self) -> dict:
        return {"condition": self.name, "value": self.value, "modulus": self.modulus,
                "target": self.target, "pass": self.ok}


@dataclass
class HierarchyCheck:
    t: int
    k: int
    r: int
    sufficient_ok: bool
    obstruction_ok_at: int | None
    details: list[Condition] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"t": self.t, "k": self.k, "r": self.r, "sufficient_ok": self.sufficient_ok,
                "obstruction_ok_at": self.obstruction_ok_at, "details": [d.to_json() for d in self.details]}


def _cond(name: str, value: int, modulus: int, target: int) -> Condition:
    return Condition(name, value, modulus, target, value % modulus == target % modulus)


def obstruction_level(t: int, k: int) -> int | None:
    """Largest ``r`` with ``C(t,2)`` odd and ``C(k,2) = 0 mod 2^r`` (``None`` if ``C(t,2)`` is even)."""
    if binom(t, 2) % 2 == 0:
        return None
    ck = binom(k, 2)
    return v2(ck) if ck else None


def check_sufficient_lcr(t: int, k: int, r: int) -> HierarchyCheck:
    """Closed-form conditions under which the all-ones multiset on the subset
    side is r-incident in C_{t,k} and maps it to C'_{t,k}."""
    if not 1 <= k <= t:
        raise ValueError(f"need t >= k >= 1, got t={t}, k={k}")
    if r < 1:
        raise ValueError("r must be >= 1")
    mod = 1 << r
    details = [_cond(f"C({t - 2},{k - 2}) = 2^{r - 1} mod 2^{r}", binom(t - 2, k - 2), mod, mod >> 1)]
    for i in range(1, r):
        details.append(_cond(f"C({t - i - 2},{k - i - 2}) = 0 mod 2^{r - i}",
                             binom(t - i - 2, k - i - 2), 1 << (r - i), 0))
    ok = all(d.ok for d in details)
    obs = obstruction_level(t, k) if k % 2 == 1 and k >= 3 and t >= k + 2 else None
    return HierarchyCheck(t, k, r, ok, obs, details)


def check_obstruction(t: int, k: int, r: int) -> bool:
    """``C(t,2)`` odd and ``C(k,2) = 0 mod 2^r``: then C_{t,k} and C'_{t,k}
    are not r-locally equivalent."""
    if k < 3 or k % 2 == 0 or t < k + 2:
        raise ValueError(f"need odd k >= 3 and t >= k + 2, got t={t}, k={k}")
    if r < 1:
        raise ValueError("r must be >= 1")
    return binom(t, 2) % 2 == 1 and binom(k, 2) % (1 << r) == 0


@dataclass
class HierarchyParams:
    r: int
    t: int
    k: int
    sufficient: HierarchyCheck
    obstruction_below: bool
    fallback: tuple[int, int] | None = None

    @property
    def valid(self) -> bool:
        return self.sufficient.sufficient_ok and self.obstruction_below

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "formula": {"t": self.t, "k": self.k},
            "valid": self.valid,
            "sufficient": self.sufficient.to_json(),
            "obstruction_at_r_minus_1": self.obstruction_below,
            "fallback": None if self.fallback is None else {"t": self.fallback[0], "k": self.fallback[1]},
        }


def formula_params(r: int) -> tuple[int, int]:
    """``k = 2^r + 1``, ``t = 2^r + 2^(floor(log2 r) + 1) - 1``."""
    if r < 2:
        raise ValueError("the closed form is stated for r >= 2")
    return (1 << r) + (1 << (r.bit_length())) - 1, (1 << r) + 1


def pair_is_separating(t: int, k: int, r: int) -> bool:
    """All-ones witness valid at level r and the obstruction at level r - 1."""
    if not check_sufficient_lcr(t, k, r).sufficient_ok:
        return False
    if r == 1:
        return True
    return check_obstruction(t, k, r - 1)


def search_hierarchy_pair(r: int, t_max: int) -> tuple[int, int] | None:
    """Least ``(k, t)`` (k first) with odd ``k >= 3``, ``k + 2 <= t <= t_max``
    separating levels ``r`` and ``r - 1``.  At ``r = 1`` there is no lower level,
    so only the sufficient condition is required."""
    if r < 1:
        raise ValueError("r must be >= 1")
    for k in range(3, t_max - 1, 2):
        for t in range(k + 2, t_max + 1):
            if pair_is_separating(t, k, r):
                return t, k
    return None


def hierarchy_params(r: int, t_max: int | None = None) -> HierarchyParams:
    """Closed-form parameters, re-validated; on failure a scan supplies a fallback."""
    t, k = formula_params(r)
    suff = check_sufficient_lcr(t, k, r)
    obs = check_obstruction(t, k, r - 1)
    out = HierarchyParams(r, t, k, suff, obs)
    if not out.valid:
        out.fallback = search_hierarchy_pair(r, t_max if t_max is not None else 4 * t)
    return out


def incidence_closed_form(t: int, k: int, size: int) -> int:
    """``S . Lambda^K`` for the all-ones multiset and ``K`` of ``size`` integers."""
    return binom(t - size, k - size)


def verify_family_pair(t: int, k: int, r: int) -> dict:
    """Graph-level check that the all-ones multiset maps C_{t,k} to C'_{t,k}."""
    spec = FamilySpec(t, k)
    g = gen_family(spec)
    gp = gen_family(FamilySpec(t, k, "C'"))
    s = all_ones_witness(spec)
    rep = is_r_incident(g, s, r, family_caps())
    out = {"t": t, "k": k, "r": r, "order": g.n, "r_incident": rep.ok, "maps_to_prime": False}
    if rep.ok:
        out["maps_to_prime"] = apply_rlc(g, s, r, family_caps(), check=False) == gp
    return out


# -- repeaters -----------------------------------------------------------------


def gen_repeater(kind: str, n: int) -> Graph:
    """Leaves first (vertex ``i`` hangs off core vertex ``i + half``), then the core."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "complete":
        core = n
        edges = [(n + a, n + b) for a, b in combinations(range(core), 2)]
    elif kind == "biclique":
        core = 2 * n
        edges = [(core + a, core + n + b) for a in range(n) for b in range(n)]
    else:
        raise ValueError(f"unknown repeater kind {kind!r}")
    edges += [(i, core + i) for i in range(core)]
    return Graph.from_edges(2 * core, edges)


def repeater_leaves(g: Graph) -> int:
    """The pendant half of a :func:`gen_repeater` graph (its first ``n/2`` vertices)."""
    return (1 << (g.n // 2)) - 1


def leaf_mask(g: Graph) -> int:
    m = 0
    for u in range(g.n):
        if popcount(g.rows[u]) == 1:
            m |= 1 << u
    return m


def leaf_criterion(g: Graph) -> bool:
    """Every vertex is a leaf or adjacent to one."""
    leaves = leaf_mask(g)
    return all((leaves >> u) & 1 or g.rows[u] & leaves for u in range(g.n))
