"""Binary symplectic representation of n-qubit Pauli operators.

A Pauli operator modulo phase maps to a pair of n-bit vectors ``(x, z)``:
per qubit, I -> (0,0), X -> (1,0), Z -> (0,1), Y -> (1,1).  Phases are not
tracked anywhere; distance, degeneracy, and every search in this package
depend only on ``(x, z)``.

A length-2n packed row stores the X part in bits ``0..n-1`` and the Z part
in bits ``n..2n-1`` (X block left of Z block, qubit 0 in the leftmost
column of either block).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, BitVector

_LABEL_TO_XZ = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_XZ_TO_LABEL = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True)
class SymplecticVector:
    """A Pauli operator modulo phase on ``n`` qubits.

    Attributes:
        n: Qubit count.
        x: Packed X part; bit ``i`` set means an X factor on qubit ``i``.
        z: Packed Z part; bit ``i`` set means a Z factor on qubit ``i``.
    """

    n: int
    x: int
    z: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative qubit count {self.n}")
        if self.x >> self.n or self.z >> self.n or self.x < 0 or self.z < 0:
            raise ValueError("x/z parts do not fit in n bits")

    @property
    def x_part(self) -> BitVector:
        return BitVector(self.n, self.x)

    @property
    def z_part(self) -> BitVector:
        return BitVector(self.n, self.z)

    def packed(self) -> int:
        """The 2n-bit row form: X part in the low n bits, Z part above."""
        return self.x | self.z << self.n

    @classmethod
    def from_packed(cls, n: int, bits: int) -> "SymplecticVector":
        mask = (1 << n) - 1
        return cls(n, bits & mask, bits >> n & mask)

    def __xor__(self, other: "SymplecticVector") -> "SymplecticVector":
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} != {other.n}")
        return SymplecticVector(self.n, self.x ^ other.x, self.z ^ other.z)

    def is_zero(self) -> bool:
        return self.x == 0 and self.z == 0


def from_label(s: str) -> SymplecticVector:
    """Parses a Pauli label such as ``"ZZIII"``; character ``i`` is qubit ``i``."""
    if not s:
        raise ValueError("empty Pauli label")
    x = z = 0
    for i, ch in enumerate(s):
        try:
            xb, zb = _LABEL_TO_XZ[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli letter {ch!r} at position {i}") from None
        x |= xb << i
        z |= zb << i
    return SymplecticVector(len(s), x, z)


def to_label(a: SymplecticVector) -> str:
    return "".join(
        _XZ_TO_LABEL[(a.x >> i & 1, a.z >> i & 1)] for i in range(a.n)
    )


def symplectic_product(a: SymplecticVector, b: SymplecticVector) -> int:
    """The alternating form ``x_a . z_b + z_a . x_b`` over GF(2).

    Zero exactly when the two Pauli operators commute.
    """
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} != {b.n}")
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1


def weight(a: SymplecticVector) -> int:
    """Number of qubits acted on non-trivially."""
    return (a.x | a.z).bit_count()


def sp_packed(u: int, v: int, n: int) -> int:
    """``symplectic_product`` on 2n-bit packed rows."""
    mask = (1 << n) - 1
    return (((u & (v >> n)) & mask).bit_count() + ((v & (u >> n)) & mask).bit_count()) & 1


def weight_packed(u: int, n: int) -> int:
    """``weight`` on a 2n-bit packed row."""
    return ((u | u >> n) & ((1 << n) - 1)).bit_count()


SymplecticGram = BitMatrix
"""A Gram matrix ``G_ij = row_i (.) row_j``: symmetric with zero diagonal."""


def lambda_gram(m: BitMatrix) -> SymplecticGram:
    """Gram matrix of the symplectic form on the rows of ``m``.

    Args:
        m: A matrix with an even column count ``2n``.

    Returns:
        The ``rows x rows`` matrix of pairwise symplectic products.
    """
    if m.cols % 2:
        raise ValueError(f"column count {m.cols} is odd")
    n = m.cols // 2
    out = [0] * m.rows
    for i in range(m.rows):
        for j in range(i + 1, m.rows):
            if sp_packed(m.row_data[i], m.row_data[j], n):
                out[i] |= 1 << j
                out[j] |= 1 << i
    return BitMatrix(m.rows, tuple(out))
