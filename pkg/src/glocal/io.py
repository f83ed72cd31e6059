"""Serialisation: graph6, edge-list JSON, DOT, and the figure fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"graph6 cannot encode n={n}")


def _decode_n(data: bytes) -> tuple[int, int]:
    def val(c):
        if not 63 <= c <= 126:
            raise ValueError(f"invalid graph6 byte {c!r}")
        return c - 63

    if data[0] != 126:
        return val(data[0]), 1
    if len(data) > 1 and data[1] == 126:
        if len(data) < 8:
            raise ValueError("truncated graph6 size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | val(c)
        return n, 8
    if len(data) < 4:
        raise ValueError("truncated graph6 size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | val(c)
    return n, 4


def to_graph6(g: Graph) -> str:
    """Encode without header."""
    bits = []
    for v in range(1, g.n):
        row = g.rows[v]
        for u in range(v):
            bits.append((row >> u) & 1)
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        chars.append(chr(x + 63))
    return _encode_n(g.n) + "".join(chars)


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]
    if not text:
        raise ValueError("empty graph6 string")
    data = text.encode("ascii")
    n, pos = _decode_n(data)
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    rows = [0] * n
    i = 0
    u, v = 0, 1
    for c in body:
        if not 63 <= c <= 126:
            raise ValueError(f"invalid graph6 byte {c!r}")
        x = c - 63
        for shift in range(5, -1, -1):
            if i >= nbits:
                break
            if (x >> shift) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            i += 1
            u += 1
            if u == v:
                u, v = 0, v + 1
    return Graph(n, rows, check=False)


def to_edge_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_edge_json(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed edge-list JSON: {exc}") from exc
    return Graph.from_edges(n, edges)


def to_dot(g: Graph, labels: list[str] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for u in range(g.n):
        if labels:
            lines.append(f'  {u} [label="{labels[u]}"];')
        else:
            lines.append(f"  {u};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Accept either edge-list JSON or a graph6 line."""
    text = text.strip()
    if text.startswith("{"):
        return from_edge_json(json.loads(text))
    return from_graph6(text.splitlines()[0])


# -- fixtures ------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    labels: tuple[str, ...]
    caption: str = ""

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def mask(self, labels) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "caption": self.caption,
            "n": self.graph.n,
            "labels": list(self.labels),
            "edges": [list(e) for e in self.graph.edges()],
            "graph6": to_graph6(self.graph),
        }


FIXTURE_NAMES = (
    "fig1_c43", "fig1_c43_prime",
    "fig2_lhs", "fig2_rhs",
    "fig3_lhs", "fig3_rhs",
    "fig4_c42", "fig4_c42_prime",
)


def load_fixture(name: str) -> Fixture:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    raw = json.loads(resources.files("glocal.fixtures").joinpath(f"{name}.json").read_text())
    g = from_edge_json(raw)
    if to_graph6(g) != raw["graph6"]:
        raise ValueError(f"fixture {name}: graph6 and edge list disagree")
    return Fixture(raw["name"], g, tuple(raw["labels"]), raw.get("caption", ""))
