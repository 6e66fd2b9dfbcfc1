"""Pauli strings, small dense unitaries, statevector simulation, and the
phase-flip unitary attached to a boolean polynomial.

For f of degree <= 4 on n variables, the unitary

    U(f) = H^(x)n . prod_{monomials J} S_J . H^(x)n

(S_J negates exactly the basis states with all bits of J equal to 1; the
constant monomial contributes a global -1) has the closed-form matrix element
<0|U(f)|0> = 2^(-n) * delta(f). Variable i of the polynomial sits on qubit
i+1, and qubit 1 is the most significant bit of the basis-state index.

The fixed rotation angle used by the synthesis layer enters here through its
exact cosine and sine, 2/sqrt(5) and 1/sqrt(5); generator unitaries are built
from those closed forms, never from a numeric arccos.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeError
from .f2poly import BoolPoly

STATEVECTOR_MAX_QUBITS = 20
DENSE_MAX_QUBITS = 4

COS_PHI = 2.0 / np.sqrt(5.0)
SIN_PHI = 1.0 / np.sqrt(5.0)

_PAULI_2X2 = {
    (0, 0): np.eye(2, dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}

_AXIS_NAME = {(0, 1): "Z", (1, 0): "X", (1, 1): "Y"}
_NAME_AXIS = {v: k for k, v in _AXIS_NAME.items()}


@dataclass(frozen=True)
class PauliString:
    """One (alpha, beta) bit pair per qubit; (0,0) is the identity slot."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for p in self.pairs:
            if len(p) != 2 or p[0] not in (0, 1) or p[1] not in (0, 1):
                raise ValueError(f"bad pauli pair {p}")

    @staticmethod
    def from_axes(n_qubits: int, placed: dict[int, str]) -> "PauliString":
        """Build from {qubit (1-based): 'X'|'Y'|'Z'}; other slots identity."""
        pairs = [(0, 0)] * n_qubits
        for q, axis in placed.items():
            if not 1 <= q <= n_qubits:
                raise ValueError(f"qubit {q} out of range")
            pairs[q - 1] = _NAME_AXIS[axis]
        return PauliString(tuple(pairs))

    @property
    def n_qubits(self) -> int:
        return len(self.pairs)

    @property
    def weight(self) -> int:
        return sum(1 for p in self.pairs if p != (0, 0))

    def support(self) -> tuple[int, ...]:
        """1-based qubits where the string is not the identity."""
        return tuple(q for q, p in enumerate(self.pairs, start=1) if p != (0, 0))

    def axes(self) -> tuple[str, ...]:
        return tuple(_AXIS_NAME[p] for p in self.pairs if p != (0, 0))


class DenseUnitary:
    """Validated dense unitary on at most 4 qubits; determinant recorded."""

    __slots__ = ("entries", "determinant")

    def __init__(self, entries: np.ndarray):
        mat = np.asarray(entries, dtype=complex)
        dim = mat.shape[0]
        if mat.shape != (dim, dim) or dim & (dim - 1) or not 1 <= dim <= (1 << DENSE_MAX_QUBITS):
            raise ValueError(f"bad unitary shape {mat.shape}")
        err = np.abs(mat.conj().T @ mat - np.eye(dim)).max()
        if err > 1e-10:
            raise ValueError(f"matrix not unitary, defect {err:.3e}")
        mat = mat.copy()
        mat.flags.writeable = False
        self.entries = mat
        self.determinant = complex(np.linalg.det(mat))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1


@dataclass(frozen=True)
class GatePlacement:
    """A small gate embedded on specific (1-based, distinct) qubits.

    kind tags the dump format line: H, CZ (any number of controls, one
    target, all symmetric), PHASE (global -1), or GEN with its direction and
    per-qubit axes.
    """

    gate: DenseUnitary
    targets: tuple[int, ...]
    kind: str = "RAW"
    gen_direction: int = 0
    gen_axes: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("duplicate target qubits")
        if self.gate.n_qubits != len(self.targets):
            raise ValueError("target count does not match gate size")


def pauli_matrix(s: PauliString) -> DenseUnitary:
    """Tensor product of the 2x2 Pauli matrices, dense."""
    if s.n_qubits > DENSE_MAX_QUBITS:
        raise ValueError(f"{s.n_qubits} qubits too many for dense form")
    if s.n_qubits == 0:
        raise ValueError("empty pauli string")
    mat = _PAULI_2X2[s.pairs[0]]
    for p in s.pairs[1:]:
        mat = np.kron(mat, _PAULI_2X2[p])
    return DenseUnitary(mat)


def generator_unitary(s: PauliString, direction: int) -> DenseUnitary:
    """exp(direction * i * phi * sigma(s)) restricted to the support qubits.

    cos(phi) = 2/sqrt(5), sin(phi) = 1/sqrt(5) exactly. The support must hold
    one or two qubits; the identity slots of s are not represented in the
    returned matrix (place it with PauliString.support()).
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    w = s.weight
    if w == 0:
        raise ValueError("zero pauli string is a global phase, not a generator")
    if w > 2:
        raise ValueError(f"generator weight {w} unsupported, need 1 or 2")
    core = PauliString(tuple(p for p in s.pairs if p != (0, 0)))
    sigma = pauli_matrix(core).entries
    dim = sigma.shape[0]
    return DenseUnitary(COS_PHI * np.eye(dim) + direction * 1j * SIN_PHI * sigma)


def hadamard_gate() -> DenseUnitary:
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
    return DenseUnitary(h)


def phase_flip_gate(k: int) -> DenseUnitary:
    """Diagonal gate negating the all-ones basis state of k qubits."""
    if not 1 <= k <= DENSE_MAX_QUBITS:
        raise ValueError(f"phase flip on {k} qubits unsupported")
    d = np.ones(1 << k, dtype=complex)
    d[-1] = -1
    return DenseUnitary(np.diag(d))


def minus_identity_gate() -> DenseUnitary:
    return DenseUnitary(-np.eye(2, dtype=complex))


_H = None
_FLIPS: dict[int, DenseUnitary] = {}


def _cached_h() -> DenseUnitary:
    global _H
    if _H is None:
        _H = hadamard_gate()
    return _H


def _cached_flip(k: int) -> DenseUnitary:
    if k not in _FLIPS:
        _FLIPS[k] = phase_flip_gate(k)
    return _FLIPS[k]


def build_Uf_gates(poly: BoolPoly) -> list[GatePlacement]:
    """Gate list of the phase-flip unitary of a degree <= 4 polynomial.

    Layout: one Hadamard per qubit, one phase gate per monomial in graded
    lex order (constant monomial = global -1 on qubit 1), Hadamards again.
    """
    if poly.degree > 4:
        raise DegreeError(f"degree {poly.degree} polynomial, need <= 4")
    if poly.n_vars < 1:
        raise ValueError("need at least one variable")
    n = poly.n_vars
    h = _cached_h()
    walls = [GatePlacement(h, (q,), "H") for q in range(1, n + 1)]
    gates = list(walls)
    for m in poly.sorted_monomials():
        if not m:
            gates.append(GatePlacement(minus_identity_gate(), (1,), "PHASE"))
        else:
            targets = tuple(i + 1 for i in m)
            gates.append(GatePlacement(_cached_flip(len(m)), targets, "CZ"))
    gates.extend(walls)
    return gates


class StateVector:
    """Mutable n-qubit state; qubit 1 is the most significant index bit."""

    def __init__(self, n: int, amplitudes: np.ndarray | None = None):
        if not 1 <= n <= STATEVECTOR_MAX_QUBITS:
            raise ValueError(f"qubit count {n} outside 1..{STATEVECTOR_MAX_QUBITS}")
        self.n = n
        if amplitudes is None:
            amps = np.zeros(1 << n, dtype=complex)
            amps[0] = 1.0
        else:
            amps = np.asarray(amplitudes, dtype=complex).reshape(1 << n)
            norm = float(np.sum(np.abs(amps) ** 2))
            if abs(norm - 1.0) > 1e-9:
                raise ValueError(f"state not normalized: {norm}")
            amps = amps.copy()
        self._amps = amps

    def apply(self, gate: DenseUnitary | np.ndarray, targets) -> None:
        """Apply a k-qubit gate in place on the given 1-based qubits."""
        mat = gate.entries if isinstance(gate, DenseUnitary) else np.asarray(gate)
        targets = tuple(targets)
        k = len(targets)
        if mat.shape != (1 << k, 1 << k):
            raise ValueError("gate size does not match target count")
        for q in targets:
            if not 1 <= q <= self.n:
                raise ValueError(f"qubit index {q} out of range")
        axes = [q - 1 for q in targets]
        tensor = self._amps.reshape((2,) * self.n)
        gt = mat.reshape((2,) * (2 * k))
        moved = np.tensordot(gt, tensor, axes=(list(range(k, 2 * k)), axes))
        tensor = np.moveaxis(moved, list(range(k)), axes)
        self._amps = np.ascontiguousarray(tensor).reshape(1 << self.n)

    def apply_all(self, gates: list[GatePlacement]) -> None:
        for g in gates:
            self.apply(g.gate, g.targets)

    def amplitude(self, basis_index: int) -> complex:
        return complex(self._amps[basis_index])

    def amplitudes(self) -> np.ndarray:
        return self._amps.copy()


def amplitude_00(gates: list[GatePlacement], n: int) -> complex:
    """<0...0| (product of gates) |0...0> by statevector simulation."""
    state = StateVector(n)
    state.apply_all(gates)
    return state.amplitude(0)


def unitary_of_gates(gates: list[GatePlacement], n: int) -> np.ndarray:
    """Full 2^n x 2^n matrix of a gate list (column-by-column simulation)."""
    if n > 12:
        raise ValueError("full matrix reconstruction capped at 12 qubits")
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        amps = np.zeros(dim, dtype=complex)
        amps[col] = 1.0
        state = StateVector(n, amps)
        state.apply_all(gates)
        out[:, col] = state.amplitudes()
    return out


def operator_norm_distance(u, v) -> float:
    """Largest singular value of u - v."""
    a = u.entries if isinstance(u, DenseUnitary) else np.asarray(u)
    b = v.entries if isinstance(v, DenseUnitary) else np.asarray(v)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.svd(a - b, compute_uv=False)[0])


def pad_for_special_unitary(poly: BoolPoly) -> BoolPoly:
    """Same monomials over one extra (unused) variable.

    The gap doubles with unchanged sign. Each phase gate of the padded
    unitary negates 2^(n+1-|J|) >= 2 basis states and each Hadamard layer
    keeps determinant +-1 with even multiplicity, so the result always has
    determinant exactly +1.
    """
    return BoolPoly(poly.n_vars + 1, poly.monomials)


def format_gates(gates: list[GatePlacement]) -> str:
    """Debug dump, one gate per line."""
    lines = []
    for g in gates:
        qs = " ".join(str(q) for q in g.targets)
        if g.kind == "H":
            lines.append(f"H {qs}")
        elif g.kind == "CZ":
            lines.append(f"CZ {qs}")
        elif g.kind == "PHASE":
            lines.append(f"PHASE -1 {qs}")
        elif g.kind == "GEN":
            sign = "+" if g.gen_direction > 0 else "-"
            spec = " ".join(f"{q}:{ax}" for q, ax in zip(g.targets, g.gen_axes))
            lines.append(f"GEN {sign} {spec}")
        else:
            raise ValueError(f"gate kind {g.kind!r} has no dump form")
    return "\n".join(lines) + "\n"
