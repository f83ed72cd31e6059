import math
import random
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glocal.bits import iter_bits
from glocal.genlc import CapExceeded, VertexMultiset, apply_rlc, sample_valid_instance
from glocal.graph import Graph
from glocal.io import load_fixture
from glocal.qoracle import (
    H_MAT,
    AngleAssignment,
    GateSpec,
    StateVector,
    angle_constraint_check,
    apply_gates,
    build_graph_state,
    equal_up_to_phase,
    lc_unitary,
    phase_aligned_deviation,
    pivot_unitary,
    project_qubit,
    rlc_unitary,
    stabilizer_check,
    weight_sum_check,
    x_rot,
    z_rot,
)
from glocal.suites import all_graphs
from strategies import graph_and_edge, graph_and_vertex, graphs


def _basis(n, x):
    amp = np.zeros(1 << n, dtype=complex)
    amp[x] = 1
    return StateVector(n, amp)


def _random_state(n, rng):
    amp = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amp / np.linalg.norm(amp))


def test_small_graph_states():
    s = build_graph_state(Graph.empty(1))
    assert np.allclose(s.amplitudes, [2 ** -0.5] * 2)
    e = build_graph_state(Graph.path(2))
    assert np.allclose(e.amplitudes, np.array([1, 1, 1, -1]) / 2)


def test_k3_signs_by_edge_count():
    s = build_graph_state(Graph.complete(3))
    for x in range(8):
        edges = math.comb(bin(x).count("1"), 2)
        assert np.isclose(s.amplitudes[x] * 8 ** 0.5, (-1) ** edges)


def test_gate_conventions():
    for a in np.linspace(-3, 3, 7):
        assert np.allclose(x_rot(a), H_MAT @ z_rot(a) @ H_MAT, atol=1e-15)
    assert np.allclose(z_rot(0), np.eye(2))
    with pytest.raises(ValueError):
        GateSpec("T", 0)


def test_gate_actions():
    rng = np.random.default_rng(0)
    s = _random_state(3, rng)
    hh = apply_gates(s, [GateSpec("H", 1), GateSpec("H", 1)])
    assert np.allclose(hh.amplitudes, s.amplitudes)
    assert np.allclose(apply_gates(s, [GateSpec("Zrot", 2, 0.0)]).amplitudes, s.amplitudes)
    plus = build_graph_state(Graph.empty(1))
    assert equal_up_to_phase(apply_gates(plus, [GateSpec("Xrot", 0, math.pi / 2)]), plus)
    assert math.isclose(apply_gates(s, [GateSpec("Xrot", 0, 0.3)]).norm(), 1.0)
    with pytest.raises(IndexError):
        apply_gates(s, [GateSpec("H", 3)])


def test_qubit_order_is_lsb_first():
    s = apply_gates(_basis(2, 0), [GateSpec("PauliX", 0)])
    assert s.amplitudes[1] == 1


def test_equal_up_to_phase():
    rng = np.random.default_rng(1)
    s = _random_state(3, rng)
    assert equal_up_to_phase(s, StateVector(3, np.exp(1j * math.pi / 7) * s.amplitudes))
    assert not equal_up_to_phase(_basis(2, 0), _basis(2, 1))
    t = StateVector(3, s.amplitudes.copy())
    t.amplitudes[0] += 1e-6
    dev = phase_aligned_deviation(t, s)
    assert equal_up_to_phase(t, s, dev)
    assert not equal_up_to_phase(t, s, dev / 2)


def test_state_dump_roundtrip(tmp_path):
    s = build_graph_state(Graph.complete(3))
    s.dump(tmp_path / "k3")
    assert np.array_equal(StateVector.load(tmp_path / "k3").amplitudes, s.amplitudes)


def test_qubit_cap():
    with pytest.raises(CapExceeded):
        build_graph_state(Graph.empty(15))
    with pytest.raises(CapExceeded):
        build_graph_state(Graph.empty(21), max_qubits=30)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        build_graph_state(Graph.empty(15), max_qubits=15)
    assert any(issubclass(x.category, ResourceWarning) for x in w)


def test_stabilizers_exhaustive_small():
    for n in range(1, 5):
        for g in all_graphs(n):
            st_ = build_graph_state(g)
            assert all(stabilizer_check(g, d, state=st_) for d in range(1, 1 << n))


@given(graph_and_vertex(max_n=7))
def test_defining_stabilizer(gu):
    g, u = gu
    assert stabilizer_check(g, 1 << u)


@settings(max_examples=80)
@given(graph_and_vertex(max_n=7))
def test_lc_unitary(gu):
    g, u = gu
    out = apply_gates(build_graph_state(g), lc_unitary(g, u))
    assert equal_up_to_phase(out, build_graph_state(g.local_complement(u)), 1e-10)


@settings(max_examples=80)
@given(graph_and_edge(max_n=7))
def test_pivot_unitary(ge):
    g, (u, v) = ge
    out = apply_gates(build_graph_state(g), pivot_unitary(g, u, v))
    assert equal_up_to_phase(out, build_graph_state(g.pivot(u, v)), 1e-10)


def test_pivot_on_single_edge():
    e = Graph.path(2)
    assert e.pivot(0, 1) == e
    assert equal_up_to_phase(apply_gates(build_graph_state(e), pivot_unitary(e, 0, 1)), build_graph_state(e))


def test_rlc_unitary_random():
    rng = random.Random(2)
    for _ in range(40):
        g, s, r = sample_valid_instance(rng, n_range=(2, 8))
        out = apply_gates(build_graph_state(g), rlc_unitary(g, s, r))
        assert equal_up_to_phase(out, build_graph_state(apply_rlc(g, s, r)))


def test_rlc_unitary_zero_multiset_is_identity():
    g = Graph.complete(4)
    assert rlc_unitary(g, VertexMultiset.zeros(4), 2) == []


@given(graph_and_vertex(max_n=7))
def test_projections(gu):
    g, u = gu
    st_ = build_graph_state(g)
    rest = build_graph_state(g.delete(u))
    p0, w0 = project_qubit(st_, u, "Z0")
    assert math.isclose(w0, 0.5)
    assert np.allclose(p0.amplitudes, rest.amplitudes / 2 ** 0.5)
    p1, _ = project_qubit(st_, u, "Z1")
    nb = [v - (v > u) for v in iter_bits(g.rows[u])]
    expect = apply_gates(rest, [GateSpec("PauliZ", v) for v in nb])
    assert np.allclose(p1.amplitudes, expect.amplitudes / 2 ** 0.5)
    assert math.isclose(weight_sum_check(g, u), 1.0)


def test_xplus_on_isolated_vertex():
    g = Graph.from_edges(3, [(1, 2)])
    p, w = project_qubit(build_graph_state(g), 0, "Xplus")
    assert math.isclose(w, 1.0)
    assert np.allclose(p.amplitudes, build_graph_state(g.delete(0)).amplitudes)


def _fig2():
    lhs, rhs = load_fixture("fig2_lhs"), load_fixture("fig2_rhs")
    s = VertexMultiset.from_dict(5, {lhs.index("a"): 1, lhs.index("b"): 1})
    x = lhs.mask("ab")
    return lhs.graph, rhs.graph, s, x, lhs.graph.vertices & ~x


def test_angles_from_witness():
    g1, g2, s, x, z = _fig2()
    a = AngleAssignment.from_witness(g1, s, 2, x, z)
    assert angle_constraint_check(g1, g2, a, x, z)


def test_zero_angles_identity():
    g1, _, _, x, z = _fig2()
    assert angle_constraint_check(g1, g1, AngleAssignment(), x, z)


def test_perturbed_angle_fails():
    g1, g2, s, x, z = _fig2()
    a = AngleAssignment.from_witness(g1, s, 2, x, z)
    u = min(a.alpha)
    a.alpha[u] += math.pi / 2 ** 5
    assert not angle_constraint_check(g1, g2, a, x, z)


def test_angles_on_rotations_outside_masks_rejected():
    g1, g2, _, x, z = _fig2()
    with pytest.raises(ValueError):
        angle_constraint_check(g1, g2, AngleAssignment(alpha={next(iter_bits(z)): 0.1}), x, z)


@settings(max_examples=30, deadline=None)
@given(graphs(2, 6), st.integers(0, 2 ** 31))
def test_random_states_equal_themselves(g, seed):
    s = build_graph_state(g)
    ph = np.exp(1j * (seed % 628) / 100)
    assert equal_up_to_phase(StateVector(g.n, ph * s.amplitudes), s)
