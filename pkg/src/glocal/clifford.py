"""Local Clifford operators as conjugation images of X and Z, and their action
on graph-state stabilizer tableaux.

A single-qubit Clifford ``C`` is stored as ``(C X C^dag, C Z C^dag)``, each a
signed Pauli ``(sign, label)``.  Global phases are not tracked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import iter_bits, popcount
from .graph import Graph
from .qoracle import GateSpec, PAULI, H_MAT, z_rot

SignedPauli = tuple[int, str]

# A . B = i^c D for distinct labels A, B
_MUL = {
    ("X", "Y"): (1, "Z"), ("Y", "Z"): (1, "X"), ("Z", "X"): (1, "Y"),
    ("Y", "X"): (3, "Z"), ("Z", "Y"): (3, "X"), ("X", "Z"): (3, "Y"),
}
# signed Pauli -> i^e X^a Z^b  (Y = i X Z)
_XZ_FORM = {"X": (0, 1, 0), "Y": (1, 1, 1), "Z": (0, 0, 1)}


@dataclass(frozen=True)
class QubitClifford:
    x: SignedPauli
    z: SignedPauli

    def __post_init__(self):
        if self.x[1] == self.z[1] or self.x[0] not in (1, -1) or self.z[0] not in (1, -1):
            raise ValueError(f"images {self.x}, {self.z} do not define a Clifford")

    @property
    def y(self) -> SignedPauli:
        c, d = _MUL[(self.x[1], self.z[1])]
        # Y = iXZ  ->  i . sx sz . i^c D
        sign = self.x[0] * self.z[0] * (-1 if c == 1 else 1)
        return sign, d

    def image(self, p: SignedPauli) -> SignedPauli:
        s, lab = p
        t, out = {"X": self.x, "Y": self.y, "Z": self.z}[lab]
        return s * t, out

    def then(self, other: "QubitClifford") -> "QubitClifford":
        """``other`` applied after ``self``."""
        return QubitClifford(other.image(self.x), other.image(self.z))

    def inverse(self) -> "QubitClifford":
        for c in all_qubit_cliffords():
            if self.then(c) == IDENTITY_Q:
                return c
        raise AssertionError("unreachable: the single-qubit Clifford group is closed")

    def is_pauli(self) -> bool:
        return self.x[1] == "X" and self.z[1] == "Z"

    def matrix(self) -> np.ndarray:
        return _matrix_table()[self][0]

    def gates(self, q: int) -> list[GateSpec]:
        return [GateSpec(kind, q, alpha) for kind, alpha in _matrix_table()[self][1]]


IDENTITY_Q = QubitClifford((1, "X"), (1, "Z"))


def _images_of(m: np.ndarray) -> QubitClifford:
    out = []
    for p in (PAULI["PauliX"], PAULI["PauliZ"]):
        img = m @ p @ m.conj().T
        for lab, ref in (("X", PAULI["PauliX"]), ("Y", PAULI["PauliY"]), ("Z", PAULI["PauliZ"])):
            for s in (1, -1):
                if np.allclose(img, s * ref, atol=1e-12):
                    out.append((s, lab))
    return QubitClifford(*out)


@lru_cache(maxsize=1)
def _matrix_table() -> dict:
    """All 24 single-qubit Cliffords (modulo phase) as words in H and Z(pi/2)."""
    gens = (("H", 0.0, H_MAT), ("Zrot", math.pi / 2, z_rot(math.pi / 2)))
    start = np.eye(2, dtype=complex)
    table = {IDENTITY_Q: (start, ())}
    frontier = [(start, ())]
    while frontier:
        nxt = []
        for m, word in frontier:
            for kind, alpha, g in gens:
                m2 = g @ m
                key = _images_of(m2)
                if key not in table:
                    table[key] = (m2, word + ((kind, alpha),))
                    nxt.append((m2, word + ((kind, alpha),)))
        frontier = nxt
    assert len(table) == 24
    return table


def all_qubit_cliffords() -> list[QubitClifford]:
    return list(_matrix_table())


def gate_clifford(gate: GateSpec) -> QubitClifford:
    """The Clifford of a single gate; rotations must be multiples of pi/2."""
    if gate.kind in ("Zrot", "Xrot"):
        quarter = gate.alpha / (math.pi / 2)
        if abs(quarter - round(quarter)) > 1e-9:
            raise ValueError(f"rotation by {gate.alpha} is not Clifford")
    return _images_of(gate.matrix())


@dataclass(frozen=True)
class LocalCliffordOp:
    qubits: tuple[QubitClifford, ...]

    @classmethod
    def identity(cls, n: int) -> "LocalCliffordOp":
        return cls((IDENTITY_Q,) * n)

    @classmethod
    def from_gates(cls, n: int, gates) -> "LocalCliffordOp":
        qs = list(cls.identity(n).qubits)
        for gate in gates:
            qs[gate.qubit] = qs[gate.qubit].then(gate_clifford(gate))
        return cls(tuple(qs))

    @classmethod
    def lc(cls, g: Graph, u: int) -> "LocalCliffordOp":
        """``L_u^G = X_u(pi/2) Z_{N(u)}(-pi/2)``, mapping ``|G>`` to ``|G * u>``."""
        from .qoracle import lc_unitary
        return cls.from_gates(g.n, lc_unitary(g, u))

    @classmethod
    def pivot(cls, g: Graph, u: int, v: int) -> "LocalCliffordOp":
        from .qoracle import pivot_unitary
        return cls.from_gates(g.n, pivot_unitary(g, u, v))

    @classmethod
    def pauli(cls, n: int, x_mask: int, z_mask: int) -> "LocalCliffordOp":
        qs = []
        for q in range(n):
            xs = -1 if (z_mask >> q) & 1 else 1
            zs = -1 if (x_mask >> q) & 1 else 1
            qs.append(QubitClifford((xs, "X"), (zs, "Z")))
        return cls(tuple(qs))

    @property
    def n(self) -> int:
        return len(self.qubits)

    @property
    def zweight(self) -> int:
        """Qubits whose Z image is not ``+-Z``."""
        return sum(1 for c in self.qubits if c.z[1] != "Z")

    def then(self, other: "LocalCliffordOp") -> "LocalCliffordOp":
        if other.n != self.n:
            raise ValueError("operators on different qubit counts")
        return LocalCliffordOp(tuple(a.then(b) for a, b in zip(self.qubits, other.qubits)))

    def inverse(self) -> "LocalCliffordOp":
        return LocalCliffordOp(tuple(c.inverse() for c in self.qubits))

    def is_pauli(self) -> bool:
        return all(c.is_pauli() for c in self.qubits)

    def pauli_masks(self) -> tuple[int, int]:
        """``(x_mask, z_mask)`` of a Pauli operator."""
        if not self.is_pauli():
            raise ValueError("not a Pauli operator")
        x = z = 0
        for q, c in enumerate(self.qubits):
            if c.z[0] < 0:
                x |= 1 << q
            if c.x[0] < 0:
                z |= 1 << q
        return x, z

    def gates(self) -> list[GateSpec]:
        out = []
        for q, c in enumerate(self.qubits):
            out.extend(c.gates(q))
        return out

    def to_json(self) -> dict:
        def sp(p):
            return ("+" if p[0] > 0 else "-") + p[1]
        return {"qubits": [{"X": sp(c.x), "Z": sp(c.z)} for c in self.qubits]}

    @classmethod
    def from_json(cls, obj: dict) -> "LocalCliffordOp":
        def sp(s):
            return (1 if s[0] == "+" else -1), s[1]
        return cls(tuple(QubitClifford(sp(q["X"]), sp(q["Z"])) for q in obj["qubits"]))


# -- tableau -------------------------------------------------------------------


class NotAGraphState(ValueError):
    pass


def _row_mul(a, b):
    e1, x1, z1 = a
    e2, x2, z2 = b
    return ((e1 + e2 + 2 * popcount(z1 & x2)) % 4, x1 ^ x2, z1 ^ z2)


def _conjugate_row(row, op: LocalCliffordOp):
    e, x, z = row
    out_e, out_x, out_z = e, 0, 0
    for q in iter_bits(x | z):
        acc = (0, 0, 0)
        for present, p in (((x >> q) & 1, op.qubits[q].x), ((z >> q) & 1, op.qubits[q].z)):
            if present:
                s, lab = p
                pe, pa, pb = _XZ_FORM[lab]
                pe += 0 if s > 0 else 2
                acc = ((acc[0] + pe + 2 * (acc[2] & pa)) % 4, acc[1] ^ pa, acc[2] ^ pb)
        out_e += acc[0]
        out_x |= acc[1] << q
        out_z |= acc[2] << q
    return out_e % 4, out_x, out_z


def apply_to_graph(g: Graph, op: LocalCliffordOp) -> tuple[Graph, int]:
    """``(G2, D)`` with ``C|G> = Z_D |G2>`` up to global phase.

    Raises :class:`NotAGraphState` when ``C|G>`` is not of that form.
    """
    if op.n != g.n:
        raise ValueError("operator and graph differ in size")
    n = g.n
    rows = [_conjugate_row((0, 1 << u, g.rows[u]), op) for u in range(n)]
    for col in range(n):
        bit = 1 << col
        piv = next((i for i in range(col, n) if rows[i][1] & bit), None)
        if piv is None:
            raise NotAGraphState("stabilizer X-part is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        for i in range(n):
            if i != col and rows[i][1] & bit:
                rows[i] = _row_mul(rows[col], rows[i])
    adj = []
    d = 0
    for u, (e, x, z) in enumerate(rows):
        if z >> u & 1:
            raise NotAGraphState(f"qubit {u} carries a Y in its canonical stabilizer")
        if e % 2:
            raise AssertionError("non-Hermitian stabilizer row")
        if e == 2:
            d |= 1 << u
        adj.append(z)
    for u in range(n):
        for v in iter_bits(adj[u]):
            if not adj[v] >> u & 1:
                raise NotAGraphState("canonical stabilizer is not symmetric")
    return Graph(n, adj, check=False), d
