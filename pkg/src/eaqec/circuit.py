"""Clifford gates as column operations on check matrices.

Gates act on the binary symplectic data only; global phases are dropped
throughout.  Every gate squares to the identity at this level, so a
circuit's inverse is simply its reversed gate list.  The module also
synthesizes an encoding circuit reducing any simplified check matrix to a
canonical form of pure-Z and pure-X rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2, pauli
from .code import SimplifiedCheckMatrix
from .gf2 import BitMatrix

GATE_KINDS = ("CNOT", "H", "P", "SWAP")
_TWO_QUBIT = {"CNOT", "SWAP"}


@dataclass(frozen=True)
class Gate:
    """One gate: ``CNOT(control, target)``, ``H(q)``, ``P(q)``, ``SWAP(i, j)``."""

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in _TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind} qubits must differ")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.qubits)])


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def hadamard(q: int) -> Gate:
    return Gate("H", (q,))


def phase(q: int) -> Gate:
    return Gate("P", (q,))


def swap(i: int, j: int) -> Gate:
    return Gate("SWAP", (i, j))


def apply_gate(bits: int, gate: Gate, n: int) -> int:
    """Conjugates one packed symplectic vector by one gate.

    CNOT(i, j) sends X_i to X_i X_j and Z_j to Z_i Z_j; H(i) exchanges X_i
    and Z_i; P(i) sends X_i to X_i Z_i; SWAP exchanges two qubits.
    """
    if max(gate.qubits) >= n:
        raise ValueError(f"gate {gate} out of range for {n} qubits")
    mask = (1 << n) - 1
    x = bits & mask
    z = bits >> n
    if gate.kind == "CNOT":
        i, j = gate.qubits
        x ^= (x >> i & 1) << j
        z ^= (z >> j & 1) << i
    elif gate.kind == "H":
        (i,) = gate.qubits
        xb, zb = x >> i & 1, z >> i & 1
        if xb != zb:
            x ^= 1 << i
            z ^= 1 << i
    elif gate.kind == "P":
        (i,) = gate.qubits
        z ^= (x >> i & 1) << i
    else:
        i, j = gate.qubits
        if (x >> i ^ x >> j) & 1:
            x ^= (1 << i) | (1 << j)
        if (z >> i ^ z >> j) & 1:
            z ^= (1 << i) | (1 << j)
    return x | z << n


def apply_gate_matrix(mat: BitMatrix, gate: Gate) -> BitMatrix:
    """Applies one gate's column operations to every row of a matrix."""
    if mat.cols % 2:
        raise ValueError("matrix must have an even column count")
    n = mat.cols // 2
    return BitMatrix(mat.cols, tuple(apply_gate(r, gate, n) for r in mat.row_data))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list acting on ``n`` qubits."""

    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        for g in self.gates:
            if max(g.qubits) >= self.n:
                raise ValueError(f"gate {g} out of range for {self.n} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def inverse(self) -> "Circuit":
        """Each gate is a binary involution, so reverse the list."""
        return Circuit(self.n, tuple(reversed(self.gates)))

    def apply_packed(self, bits: int) -> int:
        for g in self.gates:
            bits = apply_gate(bits, g, self.n)
        return bits

    def apply_matrix(self, mat: BitMatrix) -> BitMatrix:
        if mat.cols != 2 * self.n:
            raise ValueError(f"matrix has {mat.cols} columns, circuit acts on {2 * self.n}")
        return BitMatrix(mat.cols, tuple(self.apply_packed(r) for r in mat.row_data))


def conjugate_matrix(circ: Circuit, mat: BitMatrix) -> BitMatrix:
    return circ.apply_matrix(mat)


def serialize_circuit(circ: Circuit) -> str:
    return "".join(f"{g}\n" for g in circ.gates)


def parse_circuit(text: str, n: int | None = None) -> Circuit:
    """Parses one gate per line (``CNOT 0 3``, ``H 2``, ``P 1``, ``SWAP 0 4``).

    ``#`` starts a comment.  When ``n`` is omitted it is inferred as one
    past the largest qubit index.
    """
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0].upper(), parts[1:]
        if kind not in GATE_KINDS:
            raise ValueError(f"line {lineno}: unknown gate {parts[0]!r}")
        try:
            qubits = tuple(int(a) for a in args)
        except ValueError:
            raise ValueError(f"line {lineno}: bad qubit index in {line!r}") from None
        try:
            gates.append(Gate(kind, qubits))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        n = 1 + max((q for g in gates for q in g.qubits), default=-1)
        n = max(n, 1)
    return Circuit(n, tuple(gates))


def canonical_rows(n: int, m: int, c: int) -> tuple[int, ...]:
    """Packed rows of the canonical target: ``Z_0..Z_{m-c-1}`` then X rows.

    The X rows sit on the qubits of the last ``c`` Z rows, so each pairs
    its partner and the whole set has the block Gram form.  For ``c = 0``
    this is ``[O | I_m 0]``; for ``m = 2c`` it is the fully entangled
    ``[[O | I_c 0], [I_c 0 | O]]``.
    """
    zs = [1 << (n + i) for i in range(m - c)]
    xs = [1 << (m - 2 * c + l) for l in range(c)]
    return tuple(zs + xs)


def synthesize_encoding(h: SimplifiedCheckMatrix) -> tuple[Circuit, BitMatrix]:
    """Reduces a simplified check matrix to canonical form.

    Returns ``(circuit, record)`` such that applying the circuit's column
    operations to ``record @ H`` yields exactly ``canonical_rows(n, m, c)``.
    Row operations all come first: a symplectic Gram-Schmidt pass that
    sorts the rows into commuting rows followed by the halves of each
    anticommuting pair.  After that pass only gates are used, chosen
    leftmost qubit first, preferring H over SWAP, with SWAP only when the
    pivot qubit is empty.  A canonical input yields an empty circuit.
    """
    n, m, c = h.n, h.m, h.c
    mask = (1 << n) - 1

    remaining: list[tuple[int, int]] = [
        (bits, 1 << idx) for idx, bits in enumerate(h.mat.row_data)
    ]
    iso: list[tuple[int, int]] = []
    pair_g: list[tuple[int, int]] = []
    pair_h: list[tuple[int, int]] = []
    while remaining:
        a = remaining.pop(0)
        partner = next(
            (t for t, w in enumerate(remaining) if pauli.sp_packed(a[0], w[0], n)), None
        )
        if partner is None:
            iso.append(a)
            continue
        b = remaining.pop(partner)
        for t, (wb, wc) in enumerate(remaining):
            if pauli.sp_packed(wb, b[0], n):
                wb, wc = wb ^ a[0], wc ^ a[1]
            if pauli.sp_packed(wb, a[0], n):
                wb, wc = wb ^ b[0], wc ^ b[1]
            remaining[t] = (wb, wc)
        pair_g.append(a)
        pair_h.append(b)
    if len(pair_g) != c:
        raise RuntimeError(f"pair extraction found {len(pair_g)} pairs, expected {c}")
    rows = iso + pair_g + pair_h

    gates: list[Gate] = []

    def emit(gate: Gate) -> None:
        gates.append(gate)
        for t, (wb, wc) in enumerate(rows):
            rows[t] = (apply_gate(wb, gate, n), wc)

    for i in range(m - c):
        target = 1 << (n + i)
        if rows[i][0] == target:
            continue
        x, z = rows[i][0] & mask, rows[i][0] >> n
        if not x >> i & 1:
            if z >> i & 1:
                emit(hadamard(i))
            else:
                q = next(q for q in range(i + 1, n) if (x >> q | z >> q) & 1)
                emit(swap(i, q))
                if not rows[i][0] >> i & 1:
                    emit(hadamard(i))
        x = rows[i][0] & mask
        for q in range(i + 1, n):
            if x >> q & 1:
                emit(cnot(i, q))
        z = rows[i][0] >> n
        for j in range(n):
            if j != i and z >> j & 1:
                emit(hadamard(j))
                emit(cnot(i, j))
                emit(hadamard(j))
        if rows[i][0] >> n >> i & 1:
            emit(phase(i))
        emit(hadamard(i))
        if rows[i][0] != target:
            raise RuntimeError(f"row {i} failed to reach canonical form")
    for l in range(c):
        idx = m - c + l
        ql = m - 2 * c + l
        target = 1 << ql
        if rows[idx][0] == target:
            continue
        # Commutation with the finalized Z rows pins the X part on the
        # first m - c qubits to e_ql; clear the unconstrained tail.
        x = rows[idx][0] & mask
        for q in range(m - c, n):
            if x >> q & 1:
                emit(cnot(ql, q))
        if rows[idx][0] & mask != 1 << ql:
            raise RuntimeError(f"pair row {idx} lost its forced X support")
        z = rows[idx][0] >> n
        for j in range(n):
            if j != ql and z >> j & 1:
                emit(hadamard(j))
                emit(cnot(ql, j))
                emit(hadamard(j))
        if rows[idx][0] >> n >> ql & 1:
            emit(phase(ql))
        if rows[idx][0] != target:
            raise RuntimeError(f"pair row {idx} failed to reach canonical form")

    expected = canonical_rows(n, m, c)
    if tuple(bits for bits, _ in rows) != expected:
        raise RuntimeError("synthesis did not reach the canonical form")
    record = BitMatrix(m, tuple(coef for _, coef in rows))
    return Circuit(n, tuple(gates)), record
