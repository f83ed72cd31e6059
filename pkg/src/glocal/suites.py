"""Reusable statevector sweeps shared by the CLI, scripts and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .genlc import VertexMultiset, apply_rlc, sample_valid_instance
from .graph import Graph
from .io import load_fixture
from .qoracle import (
    apply_gates,
    build_graph_state,
    lc_unitary,
    phase_aligned_deviation,
    pivot_unitary,
    rlc_unitary,
    stabilizer_deviation,
)

# known r-local complementations drawn in the figures: (lhs, rhs, r, multiset by label)
FIGURE_RLC = {
    "fig2": ("fig2_lhs", "fig2_rhs", 2, {"a": 1, "b": 1}),
    "fig3": ("fig3_lhs", "fig3_rhs", 2, {"a": 2, "b": 1, "c": 1}),
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    max_deviation: float = 0.0
    failures: list[str] = field(default_factory=list)
    tol: float = 1e-10

    @property
    def passed(self) -> bool:
        return not self.failures and self.max_deviation <= self.tol

    def record(self, dev: float, what: str) -> None:
        self.checked += 1
        self.max_deviation = max(self.max_deviation, dev)
        if dev > self.tol and len(self.failures) < 20:
            self.failures.append(f"{what}: deviation {dev:.3e}")

    def to_json(self) -> dict:
        return {"suite": self.name, "pass": self.passed, "checked": self.checked,
                "max_deviation": self.max_deviation, "tol": self.tol, "failures": self.failures}


def all_graphs(n: int) -> Iterator[Graph]:
    for key in range(1 << (n * (n - 1) // 2)):
        yield Graph.from_key(n, key)


def stabilizer_suite(n_max: int = 5, tol: float = 1e-10, n_min: int = 1) -> SuiteResult:
    res = SuiteResult("stabilizers", tol=tol)
    for n in range(n_min, n_max + 1):
        for g in all_graphs(n):
            st = build_graph_state(g)
            for d in range(1, 1 << n):
                res.record(stabilizer_deviation(g, d, st), f"{g} D={d:b}")
    return res


def lc_suite(n_max: int = 5, tol: float = 1e-10, n_min: int = 1) -> SuiteResult:
    res = SuiteResult("lc", tol=tol)
    for n in range(n_min, n_max + 1):
        for g in all_graphs(n):
            st = build_graph_state(g)
            for u in range(n):
                dev = phase_aligned_deviation(apply_gates(st, lc_unitary(g, u)),
                                              build_graph_state(g.local_complement(u)))
                res.record(dev, f"{g} u={u}")
    return res


def pivot_suite(n_max: int = 5, tol: float = 1e-10, n_min: int = 2) -> SuiteResult:
    res = SuiteResult("pivot", tol=tol)
    for n in range(max(2, n_min), n_max + 1):
        for g in all_graphs(n):
            st = build_graph_state(g)
            for u, v in g.edges():
                dev = phase_aligned_deviation(apply_gates(st, pivot_unitary(g, u, v)),
                                              build_graph_state(g.pivot(u, v)))
                res.record(dev, f"{g} uv=({u},{v})")
    return res


def figure_instance(name: str) -> tuple[Graph, Graph, VertexMultiset, int]:
    lhs, rhs, r, by_label = FIGURE_RLC[name]
    f1, f2 = load_fixture(lhs), load_fixture(rhs)
    s = VertexMultiset.from_dict(f1.graph.n, {f1.index(k): v for k, v in by_label.items()})
    return f1.graph, f2.graph, s, r


def rlc_instance_deviation(g: Graph, s: VertexMultiset, r: int) -> float:
    out = apply_gates(build_graph_state(g), rlc_unitary(g, s, r))
    return phase_aligned_deviation(out, build_graph_state(apply_rlc(g, s, r)))


def rlc_suite(count: int = 200, seed: int = 0, tol: float = 1e-9, figures: bool = True,
              n_range=(2, 10), r_range=(1, 3)) -> SuiteResult:
    res = SuiteResult("rlc", tol=tol)
    if figures:
        for name in FIGURE_RLC:
            g, g2, s, r = figure_instance(name)
            if apply_rlc(g, s, r) != g2:
                res.failures.append(f"{name}: graph-level mismatch")
            res.record(rlc_instance_deviation(g, s, r), name)
    rng = random.Random(seed)
    for i in range(count):
        g, s, r = sample_valid_instance(rng, n_range, r_range)
        res.record(rlc_instance_deviation(g, s, r), f"random #{i}")
    return res
