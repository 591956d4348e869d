from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaqec import circuit, pauli
from eaqec.catalog import entries
from eaqec.circuit import (
    Circuit,
    Gate,
    apply_gate,
    apply_gate_matrix,
    canonical_rows,
    cnot,
    hadamard,
    parse_circuit,
    phase,
    serialize_circuit,
    swap,
    synthesize_encoding,
)
from eaqec.gf2 import BitMatrix, matmul

_I2 = np.eye(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_CNOT01 = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_H1 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_P1 = np.array([[1, 0], [0, 1j]], dtype=complex)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def _pauli_matrix(bits: int, n: int) -> np.ndarray:
    """Tensor product for a packed (x, z) pair, qubit 0 as the first factor."""
    out = np.array([[1.0 + 0j]])
    for q in range(n):
        factor = _I2.copy()
        if bits >> q & 1:
            factor = factor @ _X
        if bits >> (n + q) & 1:
            factor = factor @ _Z
        out = np.kron(out, factor)
    return out


def _unitary(gate: Gate, n: int) -> np.ndarray:
    single = {"H": _H1, "P": _P1}
    if gate.kind in single:
        (q,) = gate.qubits
        out = np.array([[1.0 + 0j]])
        for i in range(n):
            out = np.kron(out, single[gate.kind] if i == q else _I2)
        return out
    # Two-qubit gates on arbitrary positions.  Qubit q sits at bit n-1-q of
    # the basis index (kron puts the first factor highest).
    i, j = gate.qubits
    pi, pj = n - 1 - i, n - 1 - j
    base = _CNOT01 if gate.kind == "CNOT" else _SWAP
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=complex)
    for basis in range(dim):
        local_in = (basis >> pi & 1) << 1 | (basis >> pj & 1)
        for local_out in range(4):
            coeff = base[local_out, local_in]
            if coeff == 0:
                continue
            oi, oj = local_out >> 1 & 1, local_out & 1
            target = basis & ~((1 << pi) | (1 << pj)) | oi << pi | oj << pj
            u[target, basis] += coeff
    return u


def _same_up_to_phase(a: np.ndarray, b: np.ndarray) -> bool:
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < 1e-9:
        return np.allclose(a, b)
    ratio = a[idx] / b[idx]
    return np.allclose(a, ratio * b, atol=1e-9)


@pytest.mark.parametrize(
    "gate",
    [cnot(0, 1), cnot(1, 0), hadamard(0), hadamard(1), phase(0), phase(1), swap(0, 1)],
    ids=str,
)
def test_gate_rules_match_unitary_conjugation(gate: Gate):
    n = 2
    u = _unitary(gate, n)
    for bits in range(1 << (2 * n)):
        conjugated = u @ _pauli_matrix(bits, n) @ u.conj().T
        expected = apply_gate(bits, gate, n)
        assert _same_up_to_phase(conjugated, _pauli_matrix(expected, n)), (
            f"{gate} on packed {bits:04b}"
        )


def test_gate_rules_on_nonadjacent_qubits():
    gate = cnot(2, 0)
    n = 3
    u = _unitary(gate, n)
    for bits in range(1 << (2 * n)):
        conjugated = u @ _pauli_matrix(bits, n) @ u.conj().T
        expected = apply_gate(bits, gate, n)
        assert _same_up_to_phase(conjugated, _pauli_matrix(expected, n))


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CNOT", (1, 1))
    with pytest.raises(ValueError):
        Gate("H", (0, 1))
    with pytest.raises(ValueError):
        Gate("FLIP", (0,))
    with pytest.raises(ValueError):
        Gate("P", (-1,))


def test_each_gate_is_a_binary_involution():
    for gate in (cnot(0, 1), hadamard(1), phase(0), swap(0, 1)):
        for bits in range(16):
            once = apply_gate(bits, gate, 2)
            assert apply_gate(once, gate, 2) == bits


def test_apply_gate_matrix_maps_rows():
    m = BitMatrix.from_strings(["1000", "0010"])
    out = apply_gate_matrix(m, hadamard(0))
    assert out.to_strings() == ["0010", "1000"]


def test_serialize_parse_round_trip():
    circ = Circuit(4, (cnot(0, 3), hadamard(2), phase(1), swap(0, 2)))
    text = serialize_circuit(circ)
    assert text == "CNOT 0 3\nH 2\nP 1\nSWAP 0 2\n"
    back = parse_circuit(text, 4)
    assert back == circ


def test_parse_infers_width_and_skips_comments():
    circ = parse_circuit("# prep\nH 0\n\nCNOT 0 5 # entangle\n")
    assert circ.n == 6
    assert [str(g) for g in circ.gates] == ["H 0", "CNOT 0 5"]


def test_parse_errors_name_the_line():
    with pytest.raises(ValueError, match="line 2"):
        parse_circuit("H 0\nFROB 1\n")
    with pytest.raises(ValueError, match="line 1"):
        parse_circuit("CNOT 0 zero\n")
    with pytest.raises(ValueError, match="line 3"):
        parse_circuit("H 0\nH 1\nCNOT 2 2\n")


def test_inverse_undoes_application():
    circ = Circuit(3, (hadamard(0), cnot(0, 2), phase(2), swap(1, 2)))
    inv = circ.inverse()
    for bits in range(1 << 6):
        assert inv.apply_packed(circ.apply_packed(bits)) == bits


@given(
    st.lists(
        st.sampled_from(
            [cnot(0, 1), cnot(2, 1), hadamard(0), hadamard(2), phase(1), swap(0, 2)]
        ),
        max_size=12,
    ),
    st.integers(0, 63),
    st.integers(0, 63),
)
def test_conjugation_preserves_symplectic_products(gates, u, v):
    circ = Circuit(3, tuple(gates))
    assert pauli.sp_packed(u, v, 3) == pauli.sp_packed(
        circ.apply_packed(u), circ.apply_packed(v), 3
    )


def test_canonical_rows_shapes():
    rows = canonical_rows(5, 4, 0)
    assert rows == tuple(1 << (5 + i) for i in range(4))
    paired = canonical_rows(3, 2, 1)
    assert paired == (1 << 3, 1 << 0)
    gram = pauli.lambda_gram(BitMatrix.from_rows(paired, 6))
    assert gram.get(0, 1) == 1


def test_synthesis_reaches_canonical_form_on_all_catalog_codes():
    for entry in entries().values():
        h = entry.matrix
        circ, record = synthesize_encoding(h)
        reduced = circ.apply_matrix(matmul(record, h.mat))
        target = BitMatrix.from_rows(canonical_rows(h.n, h.m, h.c), 2 * h.n)
        assert reduced == target, entry.name


def test_synthesis_of_canonical_input_is_empty():
    n, m = 4, 3
    h = type(entries()["bch_7_1_3"].matrix)(
        n, BitMatrix.from_rows(canonical_rows(n, m, 0), 2 * n)
    )
    circ, record = synthesize_encoding(h)
    assert len(circ) == 0
    assert record == BitMatrix.identity(m)
