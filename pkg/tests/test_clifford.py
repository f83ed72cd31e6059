import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glocal.clifford import (
    IDENTITY_Q,
    LocalCliffordOp,
    NotAGraphState,
    QubitClifford,
    all_qubit_cliffords,
    apply_to_graph,
    gate_clifford,
)
from glocal.graph import Graph
from glocal.qoracle import GateSpec, apply_gates, build_graph_state, equal_up_to_phase
from strategies import graph_and_edge, graph_and_vertex


def test_group_table():
    cs = all_qubit_cliffords()
    assert len(cs) == 24 and len(set(cs)) == 24
    for c in cs:
        assert c.then(c.inverse()) == IDENTITY_Q
        m = c.matrix()
        assert np.allclose(m @ m.conj().T, np.eye(2))


def test_bad_images():
    with pytest.raises(ValueError):
        QubitClifford((1, "X"), (1, "X"))


def test_gate_cliffords():
    h = gate_clifford(GateSpec("H", 0))
    assert h.x == (1, "Z") and h.z == (1, "X") and h.y == (-1, "Y")
    s = gate_clifford(GateSpec("Zrot", 0, np.pi / 2))
    assert s.x == (1, "Y") and s.z == (1, "Z")
    with pytest.raises(ValueError):
        gate_clifford(GateSpec("Zrot", 0, 0.1))


@given(st.sampled_from(all_qubit_cliffords()), st.sampled_from(all_qubit_cliffords()))
def test_composition_matches_matrices(a, b):
    ab = a.then(b)
    m = b.matrix() @ a.matrix()
    phase = np.vdot(ab.matrix().ravel(), m.ravel())
    assert np.allclose(m, phase / abs(phase) * ab.matrix())


@settings(max_examples=80)
@given(graph_and_vertex(max_n=7))
def test_lc_clifford_on_tableau(gu):
    g, u = gu
    h, d = apply_to_graph(g, LocalCliffordOp.lc(g, u))
    assert h == g.local_complement(u) and d == 0


@settings(max_examples=80)
@given(graph_and_edge(max_n=7))
def test_pivot_clifford_on_tableau(ge):
    g, (u, v) = ge
    h, _ = apply_to_graph(g, LocalCliffordOp.pivot(g, u, v))
    assert h == g.pivot(u, v)


@settings(max_examples=60)
@given(graph_and_vertex(max_n=6), st.lists(st.sampled_from(range(24)), min_size=1, max_size=6))
def test_tableau_agrees_with_statevector(gu, idx):
    g, _ = gu
    cs = all_qubit_cliffords()
    op = LocalCliffordOp(tuple(cs[idx[q % len(idx)]] for q in range(g.n)))
    psi = apply_gates(build_graph_state(g), op.gates())
    try:
        h, d = apply_to_graph(g, op)
    except NotAGraphState:
        return
    expect = apply_gates(build_graph_state(h), [GateSpec("PauliZ", q) for q in range(g.n) if (d >> q) & 1])
    assert equal_up_to_phase(psi, expect)


def test_hadamard_on_isolated_vertex_is_not_a_graph_state():
    with pytest.raises(NotAGraphState):
        apply_to_graph(Graph.empty(1), LocalCliffordOp((gate_clifford(GateSpec("H", 0)),)))


def test_pauli_masks_and_json():
    p = LocalCliffordOp.pauli(3, 0b011, 0b110)
    assert p.is_pauli() and p.pauli_masks() == (0b011, 0b110)
    assert LocalCliffordOp.from_json(p.to_json()) == p
    op = LocalCliffordOp.lc(Graph.complete(3), 0)
    assert op.zweight == 1
    assert op.then(op.inverse()) == LocalCliffordOp.identity(3)
    with pytest.raises(ValueError):
        op.pauli_masks()
