"""Word-packed linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers, bit ``j`` holding
column ``j``.  Python integers are arbitrary-precision packed words, so row
XOR and ``int.bit_count`` are the only primitives the hot paths need.  All
values are immutable after construction and safe to share across workers.

Indexing is 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def _validate_bits(bits: int, length: int) -> None:
    if length < 0:
        raise ValueError(f"negative length {length}")
    if bits < 0:
        raise ValueError("bit pattern must be non-negative")
    if bits >> length:
        raise ValueError(f"bit pattern 0x{bits:x} does not fit in {length} bits")


@dataclass(frozen=True)
class BitVector:
    """An immutable bit vector of fixed length.

    Attributes:
        length: Number of bits.
        bits: Packed binary digits; bit ``j`` is coordinate ``j``.  Bits at
            or beyond ``length`` are zero by construction.
    """

    length: int
    bits: int

    def __post_init__(self) -> None:
        _validate_bits(self.bits, self.length)

    @classmethod
    def from01(cls, text: str) -> "BitVector":
        """Parses a 0/1 string; character ``j`` becomes coordinate ``j``."""
        bits = 0
        for j, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << j
            elif ch != "0":
                raise ValueError(f"invalid character {ch!r} in bit string")
        return cls(len(text), bits)

    def to01(self) -> str:
        return "".join("1" if self.bits >> j & 1 else "0" for j in range(self.length))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"bit index {j} out of range [0, {self.length})")
        return self.bits >> j & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} != {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def __or__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} != {other.length}")
        return BitVector(self.length, self.bits | other.bits)

    def popcount(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """An immutable binary matrix stored as one packed integer per row.

    Attributes:
        cols: Number of columns.
        row_data: Row bit patterns; bit ``j`` of ``row_data[i]`` is entry
            ``(i, j)``.
    """

    cols: int
    row_data: tuple[int, ...]

    def __post_init__(self) -> None:
        for bits in self.row_data:
            _validate_bits(bits, self.cols)

    @property
    def rows(self) -> int:
        return len(self.row_data)

    @classmethod
    def from_rows(cls, rows: Iterable[int], cols: int) -> "BitMatrix":
        return cls(cols, tuple(rows))

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> "BitMatrix":
        if not vectors:
            raise ValueError("cannot infer column count from an empty vector list")
        cols = vectors[0].length
        return cls(cols, tuple(v.bits for v in vectors))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        vectors = [BitVector.from01(r) for r in rows]
        cols = vectors[0].length if vectors else 0
        for v in vectors:
            if v.length != cols:
                raise ValueError("rows of unequal length")
        return cls(cols, tuple(v.bits for v in vectors))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_data[i])

    def get(self, i: int, j: int) -> int:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range [0, {self.cols})")
        return self.row_data[i] >> j & 1

    def to_strings(self) -> list[str]:
        return [self.row(i).to01() for i in range(self.rows)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.row_data)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, bits in enumerate(self.row_data):
            while bits:
                low = bits & -bits
                out[low.bit_length() - 1] |= 1 << i
                bits ^= low
        return BitMatrix(self.rows, tuple(out))

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError(f"column mismatch: {self.cols} != {other.cols}")
        return BitMatrix(self.cols, self.row_data + other.row_data)

    def is_zero(self) -> bool:
        return all(bits == 0 for bits in self.row_data)


def dot(u: int, v: int) -> int:
    """Inner product of two packed vectors over GF(2)."""
    return (u & v).bit_count() & 1


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2).

    Each output row is the XOR of the rows of ``b`` selected by the bits of
    the corresponding row of ``a``.
    """
    if a.cols != b.rows:
        raise ValueError(f"inner dimension mismatch: {a.cols} != {b.rows}")
    out = []
    for bits in a.row_data:
        acc = 0
        while bits:
            low = bits & -bits
            acc ^= b.row_data[low.bit_length() - 1]
            bits ^= low
        out.append(acc)
    return BitMatrix(b.cols, tuple(out))


def matvec(m: BitMatrix, v: int) -> int:
    """Applies ``m`` to a packed column vector: bit ``i`` of the result is
    ``<row_i, v>``."""
    out = 0
    for i, bits in enumerate(m.row_data):
        out |= dot(bits, v) << i
    return out


def rref(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns:
        A pair ``(reduced, pivots)``.  ``reduced`` has the same shape as the
        input: pivot rows come first with strictly increasing pivot columns,
        dependent rows are zeroed and moved to the bottom.  ``pivots`` lists
        the pivot columns in increasing order; its length is the rank.
    """
    work = list(m.row_data)
    pivots: list[int] = []
    rank = 0
    for col in range(m.cols):
        sel = 1 << col
        pivot_row = next((i for i in range(rank, len(work)) if work[i] & sel), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & sel:
                work[i] ^= work[rank]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return BitMatrix(m.cols, tuple(work)), tuple(pivots)


def rank(m: BitMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the right kernel ``{v : m v^T = 0}``.

    Returns one row per free column of the reduced form, in increasing
    free-column order, so the result is deterministic.  The row count is
    ``cols - rank``.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, p in enumerate(pivots):
            if reduced.row_data[i] >> free & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(m.cols, tuple(basis))


def in_rowspace(v: BitVector, m: BitMatrix) -> bool:
    """Tests whether ``v`` is a GF(2) combination of the rows of ``m``."""
    if v.length != m.cols:
        raise ValueError(f"length mismatch: {v.length} != {m.cols}")
    reduced, pivots = rref(m)
    residue = v.bits
    for i, p in enumerate(pivots):
        if residue >> p & 1:
            residue ^= reduced.row_data[i]
    return residue == 0


def reduce_against(v: int, reduced_rows: Sequence[int], pivots: Sequence[int]) -> int:
    """Reduces a packed vector against pre-computed RREF rows.

    Split out of ``in_rowspace`` so membership tests inside enumeration
    loops do not re-run elimination.
    """
    for bits, p in zip(reduced_rows, pivots):
        if v >> p & 1:
            v ^= bits
    return v


def solve(m: BitMatrix, rhs: int) -> int | None:
    """Solves ``m x = rhs`` for a packed column vector ``x``.

    ``rhs`` packs one bit per row of ``m``.  Returns one solution, or None
    when the system is inconsistent.
    """
    augmented = BitMatrix(
        m.cols + 1,
        tuple(bits | (rhs >> i & 1) << m.cols for i, bits in enumerate(m.row_data)),
    )
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return None
    x = 0
    for i, p in enumerate(pivots):
        if reduced.row_data[i] >> m.cols & 1:
            x |= 1 << p
    return x


def inverse(m: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix.

    Raises:
        ValueError: if the matrix is not square or is singular.
    """
    n = m.cols
    if m.rows != n:
        raise ValueError(f"matrix is {m.rows}x{n}, not square")
    augmented = BitMatrix(2 * n, tuple(bits | 1 << (n + i) for i, bits in enumerate(m.row_data)))
    reduced, pivots = rref(augmented)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return BitMatrix(n, tuple(bits >> n for bits in reduced.row_data))


def span_iter(generators: Sequence[int]) -> Iterator[int]:
    """Yields every element of the span of ``generators`` exactly once.

    Walks the 2^t combinations in Gray-code order, so consecutive elements
    differ by a single generator XOR.  Starts with 0.
    """
    current = 0
    yield current
    for idx in range(1, 1 << len(generators)):
        current ^= generators[(idx & -idx).bit_length() - 1]
        yield current
