"""Replayable graph moves: local complementation, pivot and r-local complementation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .genlc import DEFAULT_CAPS, IncidenceCaps, VertexMultiset, apply_rlc
from .graph import Graph, InvalidGraphOperation


@dataclass(frozen=True)
class LC:
    u: int

    def to_json(self) -> dict:
        return {"op": "lc", "u": self.u}


@dataclass(frozen=True)
class Pivot:
    u: int
    v: int

    def to_json(self) -> dict:
        return {"op": "pivot", "u": self.u, "v": self.v}


@dataclass(frozen=True)
class RLC:
    r: int
    S: VertexMultiset

    def to_json(self) -> dict:
        return {"op": "rlc", "r": self.r, "mult": self.S.to_json()["mult"]}


Move = Union[LC, Pivot, RLC]


class InvalidMove(ValueError):
    def __init__(self, index: int, move, reason: str):
        super().__init__(f"move {index} ({move_to_str(move)}) is invalid: {reason}")
        self.index = index
        self.move = move
        self.reason = reason


def move_to_str(m) -> str:
    if isinstance(m, LC):
        return f"lc({m.u})"
    if isinstance(m, Pivot):
        return f"pivot({m.u},{m.v})"
    if isinstance(m, RLC):
        return f"rlc{m.r}({ {u: k for u, k in enumerate(m.S.mult) if k} })"
    return repr(m)


def apply_move(g: Graph, m: Move, caps: IncidenceCaps = DEFAULT_CAPS, verify: bool = True) -> Graph:
    if isinstance(m, LC):
        return g.local_complement(m.u)
    if isinstance(m, Pivot):
        return g.pivot(m.u, m.v)
    if isinstance(m, RLC):
        return apply_rlc(g, m.S, m.r, caps, check=verify)
    raise TypeError(f"not a move: {m!r}")


def replay(g: Graph, moves: Iterable[Move], caps: IncidenceCaps = DEFAULT_CAPS, verify: bool = True) -> Graph:
    """Apply ``moves`` in order; failures raise :class:`InvalidMove` carrying the index."""
    for i, m in enumerate(moves):
        try:
            g = apply_move(g, m, caps, verify)
        except (InvalidGraphOperation, IndexError, ValueError) as exc:
            raise InvalidMove(i, m, str(exc)) from exc
    return g


def inverse(moves: list[Move]) -> list[Move]:
    """Every move is an involution, so the inverse is the reversed sequence."""
    return list(reversed(moves))


def moves_to_json(moves: Iterable[Move]) -> list[dict]:
    return [m.to_json() for m in moves]


def moves_from_json(n: int, data: list[dict]) -> list[Move]:
    out: list[Move] = []
    for i, item in enumerate(data):
        op = item.get("op")
        try:
            if op == "lc":
                out.append(LC(int(item["u"])))
            elif op == "pivot":
                out.append(Pivot(int(item["u"]), int(item["v"])))
            elif op == "rlc":
                out.append(RLC(int(item["r"]), VertexMultiset.from_dict(n, item["mult"])))
            else:
                raise ValueError(f"unknown op {op!r}")
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValueError(f"move {i}: {exc}") from exc
    return out
