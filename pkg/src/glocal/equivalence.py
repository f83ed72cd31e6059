"""Bounded decision procedures for LC, r-local and LU equivalence of graphs.

Every search here is exponential.  Hitting a cap yields the verdict
``unknown``; ``not-equivalent`` is only returned with a re-checkable
obstruction or after a search that is complete for the instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .bits import iter_bits, popcount, to_list
from .clifford import LocalCliffordOp, NotAGraphState, apply_to_graph
from .genlc import DEFAULT_CAPS, CapExceeded, IncidenceCaps, VertexMultiset, apply_rlc, is_r_incident
from .graph import Graph
from .localsets import BOT, X, TypePartition, enumerate_mls, mls_signature, vertex_types
from .moves import LC, RLC, InvalidMove, Move, moves_to_json, replay
from .standardform import to_standard_form

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not-equivalent"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchCaps:
    max_n: int = 12
    orbit: int = 1_000_000
    witness_bits: int = 24
    mls_n: int | None = None


DEFAULT_SEARCH_CAPS = SearchCaps()


@dataclass
class EquivalenceCertificate:
    verdict: str
    level: int | str
    moves: list[Move] = field(default_factory=list)
    obstruction: dict | None = None

    def __post_init__(self):
        if self.verdict not in (EQUIVALENT, NOT_EQUIVALENT, UNKNOWN):
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def exit_code(self) -> int:
        return {EQUIVALENT: 0, NOT_EQUIVALENT: 1, UNKNOWN: 2}[self.verdict]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "level": self.level,
            "moves": moves_to_json(self.moves) if self.verdict == EQUIVALENT else None,
            "obstruction": self.obstruction,
        }


def _same_order(g1: Graph, g2: Graph) -> None:
    if g1.n != g2.n:
        raise ValueError(f"graphs have different orders ({g1.n} and {g2.n})")


# -- LC orbits -----------------------------------------------------------------


@dataclass
class OrbitResult:
    graphs: set[Graph]
    partial: bool


def lc_orbit(g: Graph, caps: SearchCaps = DEFAULT_SEARCH_CAPS, vertices: int | None = None) -> OrbitResult:
    """All graphs reachable by local complementations (restricted to ``vertices`` if given)."""
    if g.n > caps.max_n:
        raise CapExceeded(f"n={g.n} exceeds the orbit cap {caps.max_n}")
    allowed = to_list(g.vertices if vertices is None else vertices)
    seen = {g}
    queue = deque([g])
    while queue:
        cur = queue.popleft()
        for u in allowed:
            nxt = cur.local_complement(u)
            if nxt not in seen:
                if len(seen) >= caps.orbit:
                    return OrbitResult(seen, True)
                seen.add(nxt)
                queue.append(nxt)
    return OrbitResult(seen, False)


def _path(parents: dict, g: Graph) -> list[Move]:
    out = []
    while parents[g] is not None:
        prev, u = parents[g]
        out.append(LC(u))
        g = prev
    out.reverse()
    return out


def _lc_path(g1: Graph, g2: Graph, caps: SearchCaps, vertices: int | None = None):
    """Bidirectional BFS; ``(moves | None, exhausted)``."""
    allowed = to_list(g1.vertices if vertices is None else vertices)
    if g1 == g2:
        return [], False
    par1 = {g1: None}
    par2 = {g2: None}
    front1, front2 = [g1], [g2]
    while front1 and front2:
        if len(par1) + len(par2) > caps.orbit:
            return None, False
        forward = len(front1) <= len(front2)
        front, par, other = (front1, par1, par2) if forward else (front2, par2, par1)
        nxt = []
        for cur in front:
            for u in allowed:
                h = cur.local_complement(u)
                if h in par:
                    continue
                par[h] = (cur, u)
                if h in other:
                    a = _path(par1, h)
                    b = _path(par2, h)
                    return a + list(reversed(b)), False
                nxt.append(h)
        if forward:
            front1 = nxt
        else:
            front2 = nxt
    return None, True


def decide_lc1(g1: Graph, g2: Graph, caps: SearchCaps = DEFAULT_SEARCH_CAPS) -> EquivalenceCertificate:
    """Shortest LC sequence from ``g1`` to ``g2``, or an exhausted orbit."""
    _same_order(g1, g2)
    if g1.n > caps.max_n:
        raise CapExceeded(f"n={g1.n} exceeds the orbit cap {caps.max_n}")
    moves, exhausted = _lc_path(g1, g2, caps)
    if moves is not None:
        if len(moves) > (3 * g1.n) // 2:
            raise AssertionError(f"shortest LC path has {len(moves)} moves, above floor(3n/2)")
        return EquivalenceCertificate(EQUIVALENT, 1, moves)
    if exhausted:
        return EquivalenceCertificate(NOT_EQUIVALENT, 1, obstruction={
            "kind": "orbit-exhausted",
            "detail": "the LC orbit of one graph was enumerated completely without meeting the other",
        })
    return EquivalenceCertificate(UNKNOWN, 1, obstruction={"kind": "orbit-cap", "cap": caps.orbit})


def verify_certificate(g1: Graph, moves: Iterable[Move], g2: Graph, caps: IncidenceCaps = DEFAULT_CAPS) -> bool:
    """Replay ``moves`` with every r-local complementation re-validated.

    Malformed moves raise :class:`InvalidMove` with their index.
    """
    _same_order(g1, g2)
    return replay(g1, moves, caps, verify=True) == g2


# -- r-LC witness search -------------------------------------------------------


@dataclass
class _Constraint:
    members: list[int]  # positions into the variable list
    target: int
    modulus: int


def _witness_problem(g1: Graph, g2: Graph, r: int, over: int):
    """Variables and congruences whose solutions are exactly the witnesses over ``over``."""
    vars_ = [u for u in iter_bits(over) if popcount(g1.rows[u]) >= 2]
    pos = {u: i for i, u in enumerate(vars_)}
    var_mask = 0
    for u in vars_:
        var_mask |= 1 << u
    mod = 1 << r
    diff = [g1.rows[u] ^ g2.rows[u] for u in range(g1.n)]
    touch = 0
    for u in vars_:
        touch |= g1.rows[u]
    # edges can only change between two common neighbours of some variable
    for u in range(g1.n):
        if diff[u] and (not (touch >> u) & 1 or diff[u] & ~touch):
            return None
    cand = to_list(touch & ~over)
    constraints = []

    def members_of(common: int) -> list[int]:
        return [pos[u] for u in iter_bits(common & var_mask)]

    def dfs(start: int, kset: list[int], common: int) -> None:
        for i in range(start, len(cand)):
            v = cand[i]
            c = common & g1.rows[v]
            if not c & var_mask:
                continue
            ks = kset + [v]
            if len(ks) == 2:
                toggled = (diff[ks[0]] >> ks[1]) & 1
                constraints.append(_Constraint(members_of(c), (mod >> 1) if toggled else 0, mod))
            elif len(ks) >= 3:
                k = len(ks) - 2
                constraints.append(_Constraint(members_of(c), 0, 1 << (r - k)))
            if len(ks) < r + 1:
                dfs(i + 1, ks, c)

    dfs(0, [], g1.vertices)
    # pairs that must toggle but have no common variable are unsatisfiable
    for u in range(g1.n):
        for v in iter_bits(diff[u] >> (u + 1) << (u + 1)):
            if not g1.rows[u] & g1.rows[v] & var_mask:
                return None
    return vars_, [c for c in constraints if c.modulus > 1]


def search_rlc_witness(
    g1: Graph,
    g2: Graph,
    r: int,
    caps: SearchCaps = DEFAULT_SEARCH_CAPS,
    over: int | None = None,
    types: TypePartition | None = None,
) -> VertexMultiset | None:
    """Least multiset ``S`` over ``over`` with ``apply_rlc(g1, S, r) == g2``.

    ``over`` defaults to the type-X vertices of ``g1``, which must be
    independent.  Multiplicities lie in ``[0, 2^r)``; vertices of degree
    below 2 never occur in a common neighbourhood and stay at 0.  ``None``
    means no such multiset exists.
    """
    _same_order(g1, g2)
    if r < 1:
        raise ValueError("r must be >= 1")
    if over is None:
        types = types or vertex_types(g1, caps.mls_n)
        over = types.mask(X)
    if not g1.is_independent(over):
        raise ValueError("the search set must be independent in the first graph")
    problem = _witness_problem(g1, g2, r, over)
    if problem is None:
        return None
    vars_, constraints = problem
    if len(vars_) * r > caps.witness_bits:
        raise CapExceeded(f"{len(vars_)} variables x {r} bits exceeds the witness budget {caps.witness_bits}")
    by_last: list[list[_Constraint]] = [[] for _ in vars_]
    for c in constraints:
        if not c.members:
            if c.target % c.modulus:
                return None
            continue
        by_last[max(c.members)].append(c)
    mod = 1 << r
    values = [0] * len(vars_)

    def solve(i: int) -> bool:
        if i == len(vars_):
            return True
        for val in range(mod):
            values[i] = val
            if all(sum(values[j] for j in c.members) % c.modulus == c.target % c.modulus for c in by_last[i]):
                if solve(i + 1):
                    return True
        values[i] = 0
        return False

    if not solve(0):
        return None
    mult = [0] * g1.n
    for u, val in zip(vars_, values):
        mult[u] = val
    s = VertexMultiset(tuple(mult))
    if apply_rlc(g1, s, r, IncidenceCaps(max_n=None, max_r=max(8, r))) != g2:
        raise AssertionError("witness search produced a multiset that does not map g1 to g2")
    return s


def reachable_rlc_graphs(
    g: Graph, w: int, r: int, caps: SearchCaps = DEFAULT_SEARCH_CAPS, reduce: bool = True
) -> set[Graph]:
    """Every graph ``g *^r S`` over valid multisets with support inside ``w``.

    With ``reduce`` the multiplicities of vertices of degree below 2 are
    fixed to 0 (they cannot affect incidence or toggles); otherwise all
    ``2^(r|w|)`` multisets are tried.
    """
    if not g.is_independent(w):
        raise ValueError("the vertex set must be independent")
    vars_ = [u for u in iter_bits(w) if not reduce or popcount(g.rows[u]) >= 2]
    if len(vars_) * r > caps.witness_bits:
        raise CapExceeded(f"{len(vars_)} variables x {r} bits exceeds the budget {caps.witness_bits}")
    mod = 1 << r
    inc_caps = IncidenceCaps(max_n=None, max_r=max(8, r))
    out = set()
    for code in range(mod ** len(vars_)):
        mult = [0] * g.n
        for u in vars_:
            code, mult[u] = divmod(code, mod)
        s = VertexMultiset(tuple(mult))
        if is_r_incident(g, s, r, inc_caps).ok:
            out.add(apply_rlc(g, s, r, inc_caps, check=False))
    return out


# -- desk-scale LU decision ----------------------------------------------------


def _mls_obstruction(g1: Graph, g2: Graph, caps: SearchCaps) -> dict | None:
    sig1 = mls_signature(enumerate_mls(g1, caps.mls_n))
    sig2 = mls_signature(enumerate_mls(g2, caps.mls_n))
    mismatches = [
        {"set": to_list(m), "dimension_g1": sig1.get(m), "dimension_g2": sig2.get(m)}
        for m in sorted(set(sig1) | set(sig2))
        if sig1.get(m) != sig2.get(m)
    ]
    if not mismatches:
        return None
    return {
        "kind": "mls-dimension",
        **mismatches[0],
        "mismatches": mismatches,
        "detail": "minimal local sets and their dimensions are invariant under local unitaries",
    }


def _bot_orbit_paths(g: Graph, bot: int, caps: SearchCaps):
    """BFS over the LC orbit restricted to ``bot`` vertices; yields ``(graph, moves)``."""
    parents = {g: None}
    queue = deque([g])
    while queue:
        cur = queue.popleft()
        yield cur, _path(parents, cur)
        for u in iter_bits(bot):
            h = cur.local_complement(u)
            if h not in parents:
                if len(parents) >= caps.orbit:
                    raise CapExceeded(f"bot-restricted orbit exceeds {caps.orbit} graphs")
                parents[h] = (cur, u)
                queue.append(h)


def lu_level_bound(n: int) -> int:
    return max(1, n // 2 - 1)


def _certificate_moves(sf1, path, r, s, sf2) -> list[Move]:
    middle = [RLC(r, s)] if s.support else []
    return list(sf1.moves) + path + middle + list(reversed(sf2.moves))


def decide_lu_small(
    g1: Graph, g2: Graph, caps: SearchCaps = DEFAULT_SEARCH_CAPS, max_level: int | None = None
) -> EquivalenceCertificate:
    """Decide LU equivalence through standard forms and a single r-LC over type-X vertices.

    Levels ``1..max(1, floor(n/2) - 1)`` are tried in order; the returned
    level is the least one with a witness.  A smaller ``max_level`` turns
    a failed search into ``unknown``.
    """
    _same_order(g1, g2)
    obstruction = _mls_obstruction(g1, g2, caps)
    if obstruction:
        return EquivalenceCertificate(NOT_EQUIVALENT, "LU", obstruction=obstruction)
    sf1 = to_standard_form(g1, max_n=caps.mls_n)
    sf2 = to_standard_form(g2, max_n=caps.mls_n)
    if sf1.types != sf2.types:
        bot1, bot2 = sf1.types.mask(BOT), sf2.types.mask(BOT)
        kind = "bot-set" if bot1 != bot2 else "type-partition"
        return EquivalenceCertificate(NOT_EQUIVALENT, "LU", obstruction={
            "kind": kind,
            "types_g1": sf1.types.to_json(),
            "types_g2": sf2.types.to_json(),
            "detail": "standard forms of LU-equivalent graphs carry identical vertex types",
        })
    types = sf1.types
    bound = lu_level_bound(g1.n)
    top = bound if max_level is None else min(max_level, bound)
    bot = types.mask(BOT)
    x_mask = types.mask(X)
    try:
        orbit = list(_bot_orbit_paths(sf1.graph, bot, caps))
        for r in range(1, top + 1):
            for h, path in orbit:
                s = search_rlc_witness(h, sf2.graph, r, caps, over=x_mask)
                if s is not None:
                    return EquivalenceCertificate(EQUIVALENT, r, _certificate_moves(sf1, path, r, s, sf2))
    except CapExceeded as exc:
        return EquivalenceCertificate(UNKNOWN, "LU", obstruction={"kind": "cap", "detail": str(exc)})
    if top < bound:
        return EquivalenceCertificate(UNKNOWN, "LU", obstruction={
            "kind": "level-cap", "searched_up_to": top, "needed": bound,
        })
    return EquivalenceCertificate(NOT_EQUIVALENT, "LU", obstruction={
        "kind": "witness-search-exhausted",
        "levels": [1, bound],
        "bot_orbit_size": len(orbit),
        "detail": "no single r-local complementation over type-X vertices relates the standard forms",
    })


def decide_level(g1: Graph, g2: Graph, r: int, caps: SearchCaps = DEFAULT_SEARCH_CAPS) -> EquivalenceCertificate:
    """r-local equivalence via the same reduction, at one fixed level."""
    if r == 1:
        return decide_lc1(g1, g2, caps)
    _same_order(g1, g2)
    obstruction = _mls_obstruction(g1, g2, caps)
    if obstruction:
        return EquivalenceCertificate(NOT_EQUIVALENT, r, obstruction=obstruction)
    sf1 = to_standard_form(g1, max_n=caps.mls_n)
    sf2 = to_standard_form(g2, max_n=caps.mls_n)
    if sf1.types != sf2.types:
        return EquivalenceCertificate(NOT_EQUIVALENT, r, obstruction={
            "kind": "type-partition", "types_g1": sf1.types.to_json(), "types_g2": sf2.types.to_json(),
        })
    bot = sf1.types.mask(BOT)
    try:
        for h, path in _bot_orbit_paths(sf1.graph, bot, caps):
            s = search_rlc_witness(h, sf2.graph, r, caps, over=sf1.types.mask(X))
            if s is not None:
                return EquivalenceCertificate(EQUIVALENT, r, _certificate_moves(sf1, path, r, s, sf2))
    except CapExceeded as exc:
        return EquivalenceCertificate(UNKNOWN, r, obstruction={"kind": "cap", "detail": str(exc)})
    return EquivalenceCertificate(NOT_EQUIVALENT, r, obstruction={
        "kind": "witness-search-exhausted", "level": r,
    })


# -- Clifford extraction -------------------------------------------------------


def clifford_of_moves(g: Graph, moves: Iterable[Move]) -> tuple[LocalCliffordOp, Graph]:
    """The Clifford induced by a sequence of local complementations."""
    op = LocalCliffordOp.identity(g.n)
    for i, m in enumerate(moves):
        if not isinstance(m, LC):
            raise InvalidMove(i, m, "only local complementations induce a tracked Clifford")
        op = op.then(LocalCliffordOp.lc(g, m.u))
        g = g.local_complement(m.u)
    return op, g


def extract_lc_sequence(
    g1: Graph, c: LocalCliffordOp, clear_pauli: bool = False
) -> tuple[list[Move], Graph]:
    """LC moves taking ``g1`` to the graph of ``C|G1>``.

    The induced Clifford equals ``C`` up to a Pauli operator.  With
    ``clear_pauli`` extra ``LC(u), LC(u)`` pairs (each a stabilizer
    ``X_u Z_N(u)``) make it equal ``Z_D C`` exactly, where ``D`` is the
    Z-correction in ``C|G1> = Z_D |G2>`` (empty whenever ``C|G1>`` is the
    graph state itself).  Raises :class:`NotAGraphState` when ``C|G1>`` is
    not a graph state up to such a correction.
    """
    if c.n != g1.n:
        raise ValueError("operator and graph differ in size")
    g2, d = apply_to_graph(g1, c)
    target = g2
    # fold the Z-Pauli into C so that C|G1> = |G2>
    folded = c.then(LocalCliffordOp.pauli(g1.n, 0, d))
    cur = folded
    g = g2
    peeled: list[Move] = []
    while cur.zweight:
        ys = [q for q, cq in enumerate(cur.qubits) if cq.z[1] == "Y"]
        if ys:
            q = ys[0]
            cur = cur.then(LocalCliffordOp.lc(g, q))
            g = g.local_complement(q)
            peeled.append(LC(q))
            continue
        q = next(q for q, cq in enumerate(cur.qubits) if cq.z[1] == "X")
        w = next((w for w in iter_bits(g.rows[q]) if cur.qubits[w].z[1] != "Z"), None)
        if w is None:
            raise NotAGraphState(f"qubit {q} has an X-like image but no eligible neighbour")
        cur = cur.then(LocalCliffordOp.pivot(g, q, w))
        g = g.pivot(q, w)
        peeled.extend([LC(q), LC(w), LC(q)])
    if g != g1:
        raise AssertionError("Z-weight reached 0 away from the source graph")
    moves = list(reversed(peeled))
    if len(moves) > (3 * g1.n) // 2:
        raise AssertionError(f"extracted {len(moves)} moves, above floor(3n/2)")
    if clear_pauli:
        induced, _ = clifford_of_moves(g1, moves)
        residual = induced.inverse().then(folded)
        x_mask, z_mask = residual.pauli_masks()
        if z_mask != g2.odd_neighborhood(x_mask):
            raise AssertionError("residual Pauli is not a stabilizer of the target")
        for u in iter_bits(x_mask):
            moves += [LC(u), LC(u)]
    return moves, target


def lc_clifford_matches(g1: Graph, moves: list[Move], c: LocalCliffordOp) -> bool:
    induced, _ = clifford_of_moves(g1, moves)
    return induced == c


__all__ = [
    "DEFAULT_SEARCH_CAPS", "EQUIVALENT", "NOT_EQUIVALENT", "UNKNOWN", "EquivalenceCertificate",
    "LocalCliffordOp", "NotAGraphState", "OrbitResult", "SearchCaps", "clifford_of_moves", "decide_level",
    "decide_lc1", "decide_lu_small", "extract_lc_sequence", "lc_clifford_matches", "lc_orbit",
    "reachable_rlc_graphs", "search_rlc_witness", "verify_certificate",
]
