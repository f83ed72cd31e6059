"""Standard form: no type-Y vertex, and every type-X vertex precedes its
(type-Z) neighbours in the vertex order.

:func:`to_standard_form` runs the five-step rewriting loop, maintaining the
vertex types through the local-complementation/pivot update tables instead
of recomputing them after every move.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import iter_bits
from .graph import Graph, InvalidGraphOperation
from .localsets import BOT, X, Y, Z, TypePartition, vertex_types
from .moves import LC, Move, Pivot

_LC_SELF = {X: X, Y: Z, Z: Y, BOT: BOT}
_LC_NEIGHBOUR = {X: Y, Y: X, Z: Z, BOT: BOT}
_PIVOT_ENDPOINT = {X: Z, Y: Y, Z: X, BOT: BOT}


def update_types_lc(types: TypePartition, g: Graph, u: int) -> TypePartition:
    """Types of ``g * u`` given the types of ``g``."""
    labels = list(types.labels)
    labels[u] = _LC_SELF[labels[u]]
    for v in iter_bits(g.neighbors(u)):
        labels[v] = _LC_NEIGHBOUR[labels[v]]
    return TypePartition(tuple(labels))


def update_types_pivot(types: TypePartition, g: Graph, u: int, v: int) -> TypePartition:
    if not g.has_edge(u, v):
        raise InvalidGraphOperation(f"pivot needs an edge, ({u}, {v}) is not one")
    labels = list(types.labels)
    labels[u] = _PIVOT_ENDPOINT[labels[u]]
    labels[v] = _PIVOT_ENDPOINT[labels[v]]
    return TypePartition(tuple(labels))


def is_standard_form(g: Graph, types: TypePartition) -> bool:
    if types.n != g.n:
        raise ValueError("type partition and graph differ in order")
    if Y in types.labels:
        return False
    for u in range(g.n):
        if types[u] != X:
            continue
        for v in iter_bits(g.rows[u]):
            if types[v] != Z or v < u:
                return False
    return True


def measure(types: TypePartition) -> int:
    return 2 * types.count(Y) + types.count(X)


@dataclass(frozen=True)
class Step:
    rule: int
    move: Move
    measure_before: int
    measure_after: int


@dataclass
class StandardFormResult:
    graph: Graph
    moves: list[Move]
    types: TypePartition
    trace: list[Step] = field(default_factory=list)


def _edges_by_type(g: Graph, types: TypePartition, a: str, b: str):
    """Edges ``(u, v)`` with ``types[u] == a`` and ``types[v] == b``, smallest first.

    Edges are ordered by ``(min, max)`` endpoint.
    """
    for p in range(g.n):
        for q in iter_bits(g.rows[p] >> (p + 1) << (p + 1)):
            if types[p] == a and types[q] == b:
                yield p, q
            elif types[p] == b and types[q] == a:
                yield q, p


def _first(it):
    return next(iter(it), None)


def _next_move(g: Graph, types: TypePartition) -> tuple[int, Move] | None:
    e = _first(_edges_by_type(g, types, X, X))
    if e:
        return 1, Pivot(*e)
    e = _first(_edges_by_type(g, types, X, Y))
    if e:
        return 2, LC(e[0])
    if Y in types.labels:
        return 3, LC(types.labels.index(Y))
    e = _first(_edges_by_type(g, types, X, BOT))
    if e:
        return 4, Pivot(*e)
    e = _first((u, v) for u, v in _edges_by_type(g, types, X, Z) if v < u)
    if e:
        return 5, Pivot(*e)
    return None


def to_standard_form(
    g: Graph,
    types: TypePartition | None = None,
    *,
    check_tables: bool = False,
    final_check: bool = True,
    max_n: int | None = None,
) -> StandardFormResult:
    """Bring ``g`` into standard form by local complementations and pivots.

    ``check_tables`` recomputes the types after every move and compares them
    with the table-updated ones; ``final_check`` does so once at the end.
    Both raise ``AssertionError`` on disagreement.
    """
    if types is None:
        types = vertex_types(g, max_n)
    moves: list[Move] = []
    trace: list[Step] = []
    while True:
        nxt = _next_move(g, types)
        if nxt is None:
            break
        rule, mv = nxt
        before = measure(types)
        if isinstance(mv, LC):
            new_types = update_types_lc(types, g, mv.u)
            g = g.local_complement(mv.u)
        else:
            new_types = update_types_pivot(types, g, mv.u, mv.v)
            g = g.pivot(mv.u, mv.v)
        after = measure(new_types)
        if rule <= 4 and not after < before:
            raise AssertionError(f"rule {rule} did not decrease the measure ({before} -> {after})")
        if rule == 5 and not (new_types[mv.v] == X and new_types[mv.u] == Z and mv.v < mv.u):
            raise AssertionError("rule 5 did not replace an X vertex by a smaller one")
        if check_tables:
            fresh = vertex_types(g, max_n)
            if fresh != new_types:
                raise AssertionError(f"type tables disagree after {mv}: {new_types} vs {fresh}")
        types = new_types
        moves.append(mv)
        trace.append(Step(rule, mv, before, after))
    if final_check and not check_tables and moves:
        fresh = vertex_types(g, max_n)
        if fresh != types:
            raise AssertionError(f"type tables disagree at the end: {types} vs {fresh}")
    if not is_standard_form(g, types):
        raise AssertionError("rewriting loop ended outside standard form")
    return StandardFormResult(g, moves, types, trace)
