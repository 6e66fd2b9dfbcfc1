"""Pauli algebra, generators, the polynomial phase unitary, simulation."""

import numpy as np
import pytest

from deltasign.errors import DegreeError
from deltasign.f2poly import delta_bruteforce, parse_anf, random_poly
from deltasign.quantum import (
    COS_PHI,
    SIN_PHI,
    DenseUnitary,
    GatePlacement,
    PauliString,
    StateVector,
    amplitude_00,
    build_Uf_gates,
    format_gates,
    generator_unitary,
    hadamard_gate,
    operator_norm_distance,
    pad_for_special_unitary,
    pauli_matrix,
    phase_flip_gate,
    unitary_of_gates,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_pauli_table():
    assert np.allclose(pauli_matrix(PauliString(((0, 1),))).entries, Z)
    assert np.allclose(pauli_matrix(PauliString(((1, 1),))).entries, Y)
    assert np.allclose(pauli_matrix(PauliString(((1, 0),))).entries, X)
    ix = pauli_matrix(PauliString(((0, 0), (1, 0))))
    assert np.allclose(ix.entries, np.kron(np.eye(2), X))


def test_pauli_squares_and_anticommute():
    for pair in [(0, 1), (1, 0), (1, 1)]:
        m = pauli_matrix(PauliString((pair,))).entries
        assert np.allclose(m @ m, np.eye(2))
    for a, b in [(X, Y), (Y, Z), (X, Z)]:
        assert np.allclose(a @ b + b @ a, 0)


def test_pauli_weight_and_support():
    s = PauliString.from_axes(4, {2: "X", 4: "Z"})
    assert s.weight == 2
    assert s.support() == (2, 4)
    assert s.axes() == ("X", "Z")
    assert PauliString(((0, 0),) * 3).weight == 0


def test_generator_values():
    g = generator_unitary(PauliString(((1, 0),)), +1)
    # amplitude at |0> after applying to |0> is cos(phi) = 2/sqrt(5)
    assert abs(g.entries[0, 0] - 2 / np.sqrt(5)) < 1e-15
    gz = generator_unitary(PauliString(((0, 1),)), +1)
    phase = COS_PHI + 1j * SIN_PHI
    assert np.allclose(gz.entries, np.diag([phase, phase.conjugate()]))
    assert abs(g.determinant - 1) < 1e-12


def test_generator_inverse():
    for axes in [{1: "X"}, {1: "Y"}, {1: "X", 2: "Z"}, {2: "Y", 3: "Y"}]:
        s = PauliString.from_axes(3, axes)
        p = generator_unitary(s, +1).entries
        m = generator_unitary(s, -1).entries
        assert np.abs(p @ m - np.eye(p.shape[0])).max() < 1e-12


def test_generator_guards():
    with pytest.raises(ValueError):
        generator_unitary(PauliString(((0, 0),)), +1)
    with pytest.raises(ValueError):
        generator_unitary(PauliString(((1, 0), (1, 0), (0, 1))), +1)
    with pytest.raises(ValueError):
        generator_unitary(PauliString(((1, 0),)), 2)


def test_dense_unitary_validation():
    with pytest.raises(ValueError):
        DenseUnitary(np.array([[1, 1], [0, 1]], dtype=complex))
    u = DenseUnitary(np.diag([1, -1]).astype(complex))
    assert abs(u.determinant + 1) < 1e-12


def test_build_Uf_x1_is_sigma_x():
    gates = build_Uf_gates(parse_anf("nvars=1\nx1\n"))
    mat = unitary_of_gates(gates, 1)
    assert np.abs(mat - X).max() < 1e-12


def test_build_Uf_zero_is_identity():
    gates = build_Uf_gates(parse_anf("nvars=2\n0\n"))
    assert np.abs(unitary_of_gates(gates, 2) - np.eye(4)).max() < 1e-12


def test_build_Uf_product_monomial():
    gates = build_Uf_gates(parse_anf("nvars=2\nx1*x2\n"))
    amp = amplitude_00(gates, 2)
    assert abs(amp - 0.5) < 1e-12


def test_amplitude_examples():
    assert abs(amplitude_00(build_Uf_gates(parse_anf("nvars=1\nx1\n")), 1)) < 1e-12
    amp = amplitude_00(build_Uf_gates(parse_anf("nvars=1\n1\n")), 1)
    assert abs(amp + 1) < 1e-12
    amp = amplitude_00(build_Uf_gates(parse_anf("nvars=3\nx1*x2*x3\n")), 3)
    assert abs(amp - 0.75) < 1e-12


def test_amplitude_equals_scaled_gap():
    rng = np.random.default_rng(41)
    for _ in range(60):
        n = int(rng.integers(1, 7))
        f = random_poly(rng, n, min(4, n))
        amp = amplitude_00(build_Uf_gates(f), n)
        assert abs(amp - delta_bruteforce(f) / (1 << n)) <= 1e-9


def test_Uf_is_real_symmetric_involution():
    rng = np.random.default_rng(42)
    for _ in range(10):
        n = int(rng.integers(1, 5))
        f = random_poly(rng, n, min(4, n))
        u = unitary_of_gates(build_Uf_gates(f), n)
        assert np.abs(u.imag).max() < 1e-12
        assert np.abs(u - u.T).max() < 1e-12
        assert np.abs(u @ u - np.eye(1 << n)).max() < 1e-12


def test_degree_guard():
    with pytest.raises(DegreeError):
        build_Uf_gates(parse_anf("nvars=5\nx1*x2*x3*x4*x5\n"))


def test_operator_norm_examples():
    eye = np.eye(2)
    assert operator_norm_distance(eye, eye) == 0
    assert abs(operator_norm_distance(eye, -eye) - 2) < 1e-12
    rot = np.diag([1, np.exp(1j * np.pi / 2)])
    assert abs(operator_norm_distance(eye, rot) - np.sqrt(2)) < 1e-12
    with pytest.raises(ValueError):
        operator_norm_distance(np.eye(2), np.eye(4))


def test_pad_for_special_unitary():
    f = parse_anf("nvars=3\nx1*x2*x3\n")
    p = pad_for_special_unitary(f)
    assert p.n_vars == 4 and p.monomials == f.monomials
    assert delta_bruteforce(p) == 2 * delta_bruteforce(f) == 12
    rng = np.random.default_rng(43)
    for _ in range(15):
        n = int(rng.integers(1, 5))
        f = random_poly(rng, n, min(4, n))
        u = unitary_of_gates(build_Uf_gates(pad_for_special_unitary(f)), n + 1)
        assert abs(np.linalg.det(u) - 1) < 1e-9


def test_simulation_linearity():
    gates = build_Uf_gates(parse_anf("nvars=2\nx1*x2 + x1\n"))
    a = StateVector(2, np.array([1, 0, 0, 0], dtype=complex))
    b = StateVector(2, np.array([0, 0, 1, 0], dtype=complex))
    mix = StateVector(2, np.array([1, 0, 1, 0], dtype=complex) / np.sqrt(2))
    for st in (a, b, mix):
        st.apply_all(gates)
    combined = (a.amplitudes() + b.amplitudes()) / np.sqrt(2)
    assert np.abs(combined - mix.amplitudes()).max() < 1e-12


def test_statevector_guards():
    st = StateVector(2)
    with pytest.raises(ValueError):
        st.apply(hadamard_gate(), (3,))
    with pytest.raises(ValueError):
        StateVector(21)
    with pytest.raises(ValueError):
        StateVector(2, np.array([1, 1, 0, 0], dtype=complex))


def test_gate_dump_format():
    gates = build_Uf_gates(parse_anf("nvars=2\nx1*x2 + x1 + 1\n"))
    text = format_gates(gates)
    lines = text.strip().splitlines()
    assert lines[0] == "H 1" and lines[1] == "H 2"
    assert lines[2] == "PHASE -1 1"
    assert lines[3] == "CZ 1"
    assert lines[4] == "CZ 1 2"
    assert lines[5] == "H 1" and lines[6] == "H 2"
    gen = GatePlacement(generator_unitary(PauliString(((1, 0), (0, 1))), +1),
                        (1, 3), "GEN", +1, ("X", "Z"))
    assert format_gates([gen]).strip() == "GEN + 1:X 3:Z"
