"""Regenerate the figure fixtures shipped in src/glocal/fixtures/.

Edges are transcribed from the figures by hand (vertex labels kept), not
produced by the family generators, so the fixtures can serve as independent
checks of those generators.
"""

import json
from itertools import combinations
from pathlib import Path

from glocal.graph import Graph
from glocal.io import Fixture, to_graph6

OUT = Path(__file__).resolve().parents[1] / "src" / "glocal" / "fixtures"


def named(name, labels, edges, caption):
    idx = {lab: i for i, lab in enumerate(labels)}
    g = Graph.from_edges(len(labels), [(idx[a], idx[b]) for a, b in edges])
    return Fixture(name, g, tuple(labels), caption)


def split(s):
    return [tuple(e) for e in s.split()]


def main():
    fig1 = split("af ag ah be bg bh ce cf ch de df dg")
    fig2 = split("ac ad ae bc bd be de")
    fig2_rhs = split("ac ad ae bc bd be cd ce")
    fig3 = split("ad ae af be bf ce cf de ef")
    fig3_rhs = split("ad ae af be bf ce cf df ef")
    subsets = [f"{{{a},{b}}}" for a, b in combinations(range(1, 5), 2)]
    fig4 = [(f"{{{a},{b}}}", str(x)) for a, b in combinations(range(1, 5), 2) for x in (a, b)]
    clique4 = [(str(a), str(b)) for a, b in combinations(range(1, 5), 2)]
    fixtures = [
        named("fig1_c43", "abcdefgh", fig1, "C_{4,3}"),
        named("fig1_c43_prime", "abcdefgh", fig1 + list(combinations("efgh", 2)), "C'_{4,3}"),
        named("fig2_lhs", "abcde", fig2, "2-local complementation over {a,b}: input"),
        named("fig2_rhs", "abcde", fig2_rhs, "2-local complementation over {a,b}: output"),
        named("fig3_lhs", "abcdef", fig3, "2-local complementation over {a,a,b,c}: input"),
        named("fig3_rhs", "abcdef", fig3_rhs, "2-local complementation over {a,a,b,c}: output"),
        named("fig4_c42", subsets + ["1", "2", "3", "4"], fig4, "C_{4,2}"),
        named("fig4_c42_prime", subsets + ["1", "2", "3", "4"], fig4 + clique4, "C'_{4,2}"),
    ]
    for fx in fixtures:
        (OUT / f"{fx.name}.json").write_text(json.dumps(fx.to_json()) + "\n")
        (OUT / f"{fx.name}.g6").write_text(to_graph6(fx.graph) + "\n")
        print(fx.name, to_graph6(fx.graph))


if __name__ == "__main__":
    main()
