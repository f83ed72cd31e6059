"""Dense statevector oracle for graph states.

Basis convention: vertex ``i`` is bit ``i`` of the amplitude index (vertex 0
is the least significant bit).  Rotations follow ``Z(a) = diag(1, e^{ia})``
and ``X(a) = H Z(a) H``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bits import iter_bits
from .genlc import CapExceeded, VertexMultiset, is_r_incident
from .graph import Graph, InvalidGraphOperation

DEFAULT_MAX_QUBITS = 14
HARD_MAX_QUBITS = 20
CONVENTION = "v0-lsb"

_SQ2 = 1 / math.sqrt(2)
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2
PAULI = {
    "PauliX": np.array([[0, 1], [1, 0]], dtype=complex),
    "PauliY": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "PauliZ": np.array([[1, 0], [0, -1]], dtype=complex),
}


def z_rot(alpha: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * alpha)]], dtype=complex)


def x_rot(alpha: float) -> np.ndarray:
    return H_MAT @ z_rot(alpha) @ H_MAT


@dataclass(frozen=True)
class GateSpec:
    kind: str
    qubit: int
    alpha: float = 0.0

    KINDS = ("H", "Zrot", "Xrot", "PauliX", "PauliY", "PauliZ")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def matrix(self) -> np.ndarray:
        if self.kind == "H":
            return H_MAT
        if self.kind == "Zrot":
            return z_rot(self.alpha)
        if self.kind == "Xrot":
            return x_rot(self.alpha)
        return PAULI[self.kind]

    def to_json(self) -> dict:
        return {"kind": self.kind, "qubit": self.qubit, "alpha": self.alpha}


def _check_qubits(n: int, max_qubits: int | None) -> None:
    cap = DEFAULT_MAX_QUBITS if max_qubits is None else max_qubits
    if n > min(cap, HARD_MAX_QUBITS):
        raise CapExceeded(f"{n} qubits exceeds the statevector cap {min(cap, HARD_MAX_QUBITS)}")
    if n > DEFAULT_MAX_QUBITS:
        warnings.warn(f"{n}-qubit statevector needs {16 << n} bytes", ResourceWarning, stacklevel=3)


@dataclass
class StateVector:
    n: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())

    def apply_matrix(self, q: int, m: np.ndarray) -> "StateVector":
        if not 0 <= q < self.n:
            raise IndexError(f"qubit {q} out of range for n={self.n}")
        a = self.amplitudes.reshape(1 << (self.n - 1 - q), 2, 1 << q)
        out = np.einsum("ij,ajb->aib", m, a).reshape(-1)
        return StateVector(self.n, out)

    def dump(self, path: str | Path) -> None:
        """Write ``path.bin`` (little-endian complex128 pairs) and ``path.json``."""
        path = Path(path)
        self.amplitudes.astype("<c16").tofile(path.with_suffix(".bin"))
        path.with_suffix(".json").write_text(json.dumps({"n": self.n, "convention": CONVENTION}))

    @classmethod
    def load(cls, path: str | Path) -> "StateVector":
        path = Path(path)
        header = json.loads(path.with_suffix(".json").read_text())
        if header.get("convention") != CONVENTION:
            raise ValueError(f"unsupported qubit convention {header.get('convention')!r}")
        amps = np.fromfile(path.with_suffix(".bin"), dtype="<c16")
        if amps.size != 1 << header["n"]:
            raise ValueError("amplitude count does not match the header")
        return cls(header["n"], amps.astype(complex))


def _parity_table(n: int) -> np.ndarray:
    par = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        half = 1 << i
        par[half:2 * half] = par[:half] ^ 1
    return par


def induced_edge_parity(g: Graph) -> np.ndarray:
    """``|G[x]| mod 2`` for every basis index ``x``."""
    par = _parity_table(g.n)
    out = np.zeros(1 << g.n, dtype=np.uint8)
    idx = np.arange(1 << g.n, dtype=np.int64)
    for i in range(g.n):
        half = 1 << i
        low = idx[:half]
        out[half:2 * half] = out[:half] ^ par[low & (g.rows[i] & (half - 1))]
    return out


def build_graph_state(g: Graph, max_qubits: int | None = None) -> StateVector:
    _check_qubits(g.n, max_qubits)
    signs = 1.0 - 2.0 * induced_edge_parity(g)
    return StateVector(g.n, signs.astype(complex) * 2.0 ** (-g.n / 2))


def apply_gates(state: StateVector, gates) -> StateVector:
    for gate in gates:
        state = state.apply_matrix(gate.qubit, gate.matrix())
    return state


def phase_aligned_deviation(s1: StateVector, s2: StateVector) -> float:
    """Max deviation after removing the phase fixed at ``s2``'s largest amplitude."""
    if s1.n != s2.n:
        raise ValueError("states differ in qubit count")
    a, b = s1.amplitudes, s2.amplitudes
    j = int(np.argmax(np.abs(b)))
    if abs(b[j]) == 0:
        return float(np.max(np.abs(a)))
    if abs(a[j]) == 0:
        return float(np.max(np.abs(a - b)))
    phase = a[j] / b[j]
    phase /= abs(phase)
    return float(np.max(np.abs(a - phase * b)))


def equal_up_to_phase(s1: StateVector, s2: StateVector, tol: float = 1e-9) -> bool:
    return phase_aligned_deviation(s1, s2) <= tol


def stabilizer_deviation(g: Graph, d: int, state: StateVector | None = None) -> float:
    if not d:
        raise ValueError("the stabilizer generator set must be non-empty")
    state = state or build_graph_state(g)
    odd = g.odd_neighborhood(d)
    idx = np.arange(1 << g.n, dtype=np.int64)
    par = _parity_table(g.n)
    sign = -1.0 if g.induced_edge_count(d) % 2 else 1.0
    # (X_D Z_Odd psi)[x] = (-1)^{|(x^D) & Odd|} psi[x ^ D]
    src = idx ^ d
    zs = 1.0 - 2.0 * par[src & odd]
    image = sign * zs * state.amplitudes[src]
    return float(np.max(np.abs(image - state.amplitudes)))


def stabilizer_check(g: Graph, d: int, tol: float = 1e-10, state: StateVector | None = None) -> bool:
    return stabilizer_deviation(g, d, state) <= tol


def lc_unitary(g: Graph, u: int) -> list[GateSpec]:
    if not 0 <= u < g.n:
        raise IndexError(f"vertex {u} out of range for n={g.n}")
    gates = [GateSpec("Xrot", u, math.pi / 2)]
    gates += [GateSpec("Zrot", v, -math.pi / 2) for v in iter_bits(g.rows[u])]
    return gates


def pivot_unitary(g: Graph, u: int, v: int) -> list[GateSpec]:
    if not g.has_edge(u, v):
        raise InvalidGraphOperation(f"pivot needs an edge, ({u}, {v}) is not one")
    gates = [GateSpec("PauliZ", w) for w in iter_bits(g.rows[u] & g.rows[v])]
    return gates + [GateSpec("H", u), GateSpec("H", v)]


def rlc_unitary(g: Graph, s: VertexMultiset, r: int, check: bool = True) -> list[GateSpec]:
    if check and not is_r_incident(g, s, r).ok:
        raise InvalidGraphOperation(f"multiset is not {r}-incident")
    unit = math.pi / (1 << r)
    gates = [GateSpec("Xrot", u, s.mult[u] * unit) for u in iter_bits(s.support)]
    for v in range(g.n):
        w = s.dot(g.rows[v])
        if w:
            gates.append(GateSpec("Zrot", v, -unit * w))
    return gates


def project_qubit(state: StateVector, u: int, basis: str) -> tuple[StateVector, float]:
    """Unnormalised projection of qubit ``u`` onto ``basis``; the qubit is removed."""
    if not 0 <= u < state.n:
        raise IndexError(f"qubit {u} out of range for n={state.n}")
    a = state.amplitudes.reshape(1 << (state.n - 1 - u), 2, 1 << u)
    if basis == "Z0":
        out = a[:, 0, :]
    elif basis == "Z1":
        out = a[:, 1, :]
    elif basis == "Xplus":
        out = (a[:, 0, :] + a[:, 1, :]) * _SQ2
    else:
        raise ValueError(f"unknown basis {basis!r}")
    out = np.ascontiguousarray(out).reshape(-1)
    return StateVector(state.n - 1, out), float(np.vdot(out, out).real)


# -- angle assignments ---------------------------------------------------------


@dataclass
class AngleAssignment:
    alpha: dict[int, float] = field(default_factory=dict)
    beta: dict[int, float] = field(default_factory=dict)

    @classmethod
    def from_witness(cls, g: Graph, s: VertexMultiset, r: int, x_mask: int, z_mask: int) -> "AngleAssignment":
        unit = math.pi / (1 << r)
        alpha = {u: s.mult[u] * unit for u in iter_bits(x_mask)}
        beta = {v: (-unit * s.dot(g.rows[v] & x_mask)) % (2 * math.pi) for v in iter_bits(z_mask)}
        return cls(alpha, beta)

    def gates(self) -> list[GateSpec]:
        return [GateSpec("Xrot", u, a) for u, a in sorted(self.alpha.items())] + [
            GateSpec("Zrot", v, b) for v, b in sorted(self.beta.items())
        ]


def _is_multiple(x: float, m: float, tol: float) -> bool:
    rem = math.fmod(x, m)
    if rem < 0:
        rem += m
    return min(rem, m - rem) <= tol


def angle_constraints_hold(g1: Graph, a: AngleAssignment, x_mask: int, z_mask: int, tol: float = 1e-9) -> bool:
    """The two congruences every LU map of this shape between standard forms obeys."""
    two_pi = 2 * math.pi
    for v in iter_bits(z_mask):
        total = a.beta.get(v, 0.0) + sum(a.alpha.get(u, 0.0) for u in iter_bits(g1.rows[v] & x_mask))
        if not _is_multiple(total, two_pi, tol):
            return False
    zs = list(iter_bits(z_mask))
    ok = True

    def dfs(start: int, size: int, common: int) -> None:
        nonlocal ok
        for i in range(start, len(zs)):
            if not ok:
                return
            c = common & g1.rows[zs[i]]
            if not c & x_mask:
                continue
            if size + 1 >= 2:
                k = size + 1 - 2
                m = math.pi / (1 << (k + (1 if k == 0 else 0)))
                if not _is_multiple(sum(a.alpha.get(u, 0.0) for u in iter_bits(c & x_mask)), m, tol):
                    ok = False
                    return
            dfs(i + 1, size + 1, c)

    dfs(0, 0, g1.vertices)
    return ok


def angle_constraint_check(
    g1: Graph, g2: Graph, a: AngleAssignment, x_mask: int, z_mask: int, tol: float = 1e-9
) -> bool:
    """Statevector check of ``|G2> = (X(alpha) x Z(beta)) |G1>`` plus the angle congruences.

    ``x_mask``/``z_mask`` are the type-X and type-Z vertices of ``g1``.
    """
    if g1.n != g2.n:
        raise ValueError("graphs differ in order")
    if any(u not in iter_bits(x_mask) for u in a.alpha) or any(v not in iter_bits(z_mask) for v in a.beta):
        raise ValueError("rotations must sit on type-X (alpha) and type-Z (beta) vertices")
    out = apply_gates(build_graph_state(g1), a.gates())
    if not equal_up_to_phase(out, build_graph_state(g2), tol):
        return False
    return angle_constraints_hold(g1, a, x_mask, z_mask, tol)


def weight_sum_check(g: Graph, u: int) -> float:
    """``|<0_u|G>|^2 + |<1_u|G>|^2``; equals 1 for every graph state."""
    st = build_graph_state(g)
    return project_qubit(st, u, "Z0")[1] + project_qubit(st, u, "Z1")[1]


__all__ = [
    "AngleAssignment", "GateSpec", "StateVector", "angle_constraint_check", "angle_constraints_hold",
    "apply_gates", "build_graph_state", "equal_up_to_phase", "lc_unitary", "phase_aligned_deviation",
    "pivot_unitary", "project_qubit", "rlc_unitary", "stabilizer_check", "stabilizer_deviation",
    "x_rot", "z_rot",
]
