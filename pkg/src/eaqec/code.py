"""EAQEC code semantics over simplified check matrices.

A simplified check matrix lists the encoder-side parts of all stabilizer
generators of an entanglement-assisted code as rows of an ``m x 2n`` binary
matrix.  From it this module derives the ebit count, the isotropic subgroup
and centralizer, the minimum distance and weight enumerator, degeneracy,
and the singleton bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import gf2, pauli
from .gf2 import BitMatrix

_NUMPY_SPAN_THRESHOLD = 16


@dataclass(frozen=True)
class SimplifiedCheckMatrix:
    """An ``m x 2n`` simplified check matrix with independent rows.

    Attributes:
        n: Qubit count.
        mat: The row matrix; X block in columns ``0..n-1``, Z block in
            columns ``n..2n-1``.
        pairs: Optional pairing metadata: ``(i, j)`` declares rows ``i`` and
            ``j`` to be a symplectic pair.

    Derived parameters: ``c`` ebits, ``r = m - c`` stabilizer generators of
    the underlying standard code, ``k = n + c - m`` logical qubits.
    """

    n: int
    mat: BitMatrix
    pairs: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self) -> None:
        if self.mat.cols != 2 * self.n:
            raise ValueError(f"matrix has {self.mat.cols} columns, expected {2 * self.n}")
        if gf2.rank(self.mat) != self.mat.rows:
            raise ValueError("rows of a simplified check matrix must be independent")
        if self.k < 0:
            raise ValueError(f"inconsistent parameters: k = {self.k} < 0")

    @classmethod
    def from_strings(
        cls,
        rows: Sequence[str],
        pairs: Sequence[tuple[int, int]] | None = None,
    ) -> "SimplifiedCheckMatrix":
        """Builds from rows like ``"0011|0100"`` (X block, ``|``, Z block)."""
        cleaned = [r.replace("|", "").replace(" ", "") for r in rows]
        mat = BitMatrix.from_strings(cleaned)
        if mat.cols % 2:
            raise ValueError("rows must have an even number of bits")
        return cls(mat.cols // 2, mat, tuple(pairs) if pairs is not None else None)

    @property
    def m(self) -> int:
        return self.mat.rows

    @cached_property
    def gram(self) -> BitMatrix:
        return pauli.lambda_gram(self.mat)

    @cached_property
    def c(self) -> int:
        gram_rank = gf2.rank(self.gram)
        # The symplectic form is alternating, so the Gram rank is even.
        return gram_rank // 2

    @property
    def r(self) -> int:
        return self.m - self.c

    @property
    def k(self) -> int:
        return self.n + self.c - self.m


@dataclass(frozen=True)
class LogicalMatrix:
    """A ``2k x 2n`` simplified logical matrix.

    Rows ``0..k-1`` are logical-Z images, rows ``k..2k-1`` logical-X images.
    """

    n: int
    mat: BitMatrix

    def __post_init__(self) -> None:
        if self.mat.cols != 2 * self.n:
            raise ValueError(f"matrix has {self.mat.cols} columns, expected {2 * self.n}")
        if self.mat.rows % 2:
            raise ValueError("logical matrix must have an even row count")

    @property
    def k(self) -> int:
        return self.mat.rows // 2


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    c: int
    d: int
    degenerate: bool


@dataclass(frozen=True)
class WeightEnumerator:
    """Counts ``a_0..a_n`` of elements of each weight in ``N(S') - S'_I``."""

    coefficients: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def min_weight(self) -> int | None:
        for i, a in enumerate(self.coefficients):
            if a:
                return i
        return None


@dataclass(frozen=True)
class CodeReport:
    params: CodeParams
    enumerator: WeightEnumerator
    singleton_saturated: bool
    isotropic_min_weight: int | None
    elapsed_ms: float


def ebit_count(h: SimplifiedCheckMatrix) -> int:
    """Half the rank of the symplectic Gram matrix of the rows."""
    return h.c


def isotropic_basis(h: SimplifiedCheckMatrix) -> BitMatrix:
    """Basis of the radical ``{s in rowspace : s (.) row = 0 for all rows}``.

    The returned matrix has ``m - 2c`` rows.
    """
    coeff_kernel = gf2.kernel_basis(h.gram)
    return gf2.matmul(coeff_kernel, h.mat)


def centralizer_basis(h: SimplifiedCheckMatrix) -> BitMatrix:
    """Basis of ``{u in F_2^{2n} : u (.) row = 0 for all rows}``.

    The returned matrix has ``2n - m`` rows and its row space contains the
    isotropic basis.
    """
    n = h.n
    mask = (1 << n) - 1
    # u (.) v = <u, swap_halves(v)>, so the centralizer is the kernel of
    # the half-swapped row matrix.
    swapped = BitMatrix(
        2 * n, tuple((bits >> n & mask) | (bits & mask) << n for bits in h.mat.row_data)
    )
    return gf2.kernel_basis(swapped)


def span_weight_histogram(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """Weight histogram of the full span of packed 2n-bit generators.

    Returns ``n + 1`` counts summing to ``2^len(rows)``.  Switches to a
    vectorized doubling enumeration for large spans.
    """
    t = len(rows)
    if t >= _NUMPY_SPAN_THRESHOLD and n <= 64:
        return _span_histogram_numpy(rows, n)
    counts = [0] * (n + 1)
    for elem in gf2.span_iter(list(rows)):
        counts[pauli.weight_packed(elem, n)] += 1
    return tuple(counts)


def _span_histogram_numpy(rows: Sequence[int], n: int) -> tuple[int, ...]:
    t = len(rows)
    mask = (1 << n) - 1
    xs = np.zeros(1 << t, dtype=np.uint64)
    zs = np.zeros(1 << t, dtype=np.uint64)
    for i, bits in enumerate(rows):
        lo, hi = 1 << i, 2 << i
        xs[lo:hi] = xs[:lo] ^ np.uint64(bits & mask)
        zs[lo:hi] = zs[:lo] ^ np.uint64(bits >> n & mask)
    weights = np.bitwise_count(xs | zs)
    counts = np.bincount(weights.astype(np.int64), minlength=n + 1)
    return tuple(int(v) for v in counts)


def _check_logical(h: SimplifiedCheckMatrix, logical: LogicalMatrix) -> None:
    if logical.n != h.n:
        raise ValueError("logical matrix qubit count differs from check matrix")
    if logical.k != h.k:
        raise ValueError(f"logical matrix has k = {logical.k}, code has k = {h.k}")
    for u in logical.mat.row_data:
        for v in h.mat.row_data:
            if pauli.sp_packed(u, v, h.n):
                raise ValueError("logical rows must commute with all check rows")


def min_distance(
    h: SimplifiedCheckMatrix, logical: LogicalMatrix | None = None
) -> tuple[int, WeightEnumerator]:
    """Minimum weight of an element of ``N(S') - S'_I`` and the enumerator.

    Without a logical matrix, enumerates the full centralizer span
    (``2^{2n-m}`` elements).  With one, enumerates products of isotropic and
    logical generators (``2^{(m-2c)+2k}`` elements) -- the identical set, by
    construction.  Either way the isotropic span's histogram is subtracted
    to exclude ``S'_I``.

    When ``k = 0`` the difference set is empty; the distance is then the
    minimum nonzero weight in the centralizer, and the returned enumerator
    is all zeros.
    """
    n = h.n
    iso = isotropic_basis(h)
    iso_hist = span_weight_histogram(iso.row_data, n)
    if logical is None:
        gens: Sequence[int] = centralizer_basis(h).row_data
    else:
        _check_logical(h, logical)
        gens = iso.row_data + logical.mat.row_data
    full_hist = span_weight_histogram(gens, n)
    diff = tuple(a - b for a, b in zip(full_hist, iso_hist))
    if h.k == 0:
        d = next((i for i in range(1, n + 1) if full_hist[i]), None)
        if d is None:
            raise ValueError("centralizer is trivial; distance is undefined")
        return d, WeightEnumerator(diff)
    d = next((i for i in range(1, n + 1) if diff[i]), None)
    if d is None:
        raise ValueError("no nonzero element outside the isotropic subgroup")
    return d, WeightEnumerator(diff)


def isotropic_min_weight(h: SimplifiedCheckMatrix) -> int | None:
    """Minimum nonzero weight in the isotropic span; None when it is trivial."""
    iso = isotropic_basis(h)
    if iso.rows == 0:
        return None
    hist = span_weight_histogram(iso.row_data, h.n)
    return next((i for i in range(1, h.n + 1) if hist[i]), None)


def degeneracy_check(h: SimplifiedCheckMatrix, d: int) -> bool:
    """True when two distinct correctable errors share a syndrome.

    That happens exactly when some nonzero isotropic element has weight at
    most ``2 * floor((d - 1) / 2)``.
    """
    threshold = 2 * ((d - 1) // 2)
    if threshold == 0:
        return False
    low = isotropic_min_weight(h)
    return low is not None and low <= threshold


def singleton_bound(n: int, k: int, c: int) -> int:
    """Largest distance allowed by ``n + c - k >= 2(d - 1)``."""
    if not (n >= k >= 0 and 0 <= c <= n - k):
        raise ValueError(f"invalid parameters n={n}, k={k}, c={c}")
    return (n + c - k) // 2 + 1


def validate(
    h: SimplifiedCheckMatrix, logical: LogicalMatrix | None = None
) -> list[str]:
    """Checks the declared structure; returns a list of violations.

    An empty list means every check passed.  Checks row independence, the
    pairing metadata when present, the ``[[O,I],[I,O]]`` Gram block form for
    fully entangled matrices, and the logical commutation relations.
    """
    violations: list[str] = []
    mat, gram, m = h.mat, h.gram, h.m
    if gf2.rank(mat) != m:
        violations.append("check rows are linearly dependent")
    if h.pairs is not None:
        expected = BitMatrix.zeros(m, m)
        rows = [0] * m
        seen: set[int] = set()
        for i, j in h.pairs:
            if i == j or not (0 <= i < m and 0 <= j < m) or {i, j} & seen:
                violations.append(f"malformed pairing entry ({i}, {j})")
                continue
            seen |= {i, j}
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        expected = BitMatrix(m, tuple(rows))
        if len(h.pairs) != h.c:
            violations.append(
                f"pairing metadata declares {len(h.pairs)} pairs, Gram rank gives c = {h.c}"
            )
        if gram != expected:
            violations.append("Gram matrix does not match the declared pairing")
    elif h.c * 2 == m:
        # Fully entangled matrix without metadata: rows must split into a
        # g block and an h block with identity cross products.
        half = h.c
        ok = all(
            gram.row_data[i] == 1 << (i + half) and gram.row_data[i + half] == 1 << i
            for i in range(half)
        )
        if not ok:
            violations.append("Gram matrix is not in [[O,I],[I,O]] block form")
    if logical is not None:
        if logical.k != h.k:
            violations.append(f"logical matrix has k = {logical.k}, code has k = {h.k}")
        bad_commute = any(
            pauli.sp_packed(u, v, h.n)
            for u in h.mat.row_data
            for v in logical.mat.row_data
        )
        if bad_commute:
            violations.append("some logical row anticommutes with a check row")
        lgram = pauli.lambda_gram(logical.mat)
        kk = logical.k
        pair_ok = all(
            lgram.row_data[i] == 1 << (i + kk) and lgram.row_data[i + kk] == 1 << i
            for i in range(kk)
        )
        if not pair_ok:
            violations.append("logical Gram matrix is not in [[O,I],[I,O]] block form")
    return violations


def report(
    h: SimplifiedCheckMatrix, logical: LogicalMatrix | None = None
) -> CodeReport:
    """Computes the full parameter report for one code."""
    start = time.perf_counter()
    d, enum = min_distance(h, logical)
    degenerate = degeneracy_check(h, d)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    params = CodeParams(n=h.n, k=h.k, c=h.c, d=d, degenerate=degenerate)
    return CodeReport(
        params=params,
        enumerator=enum,
        singleton_saturated=h.n + h.c - h.k == 2 * (d - 1),
        isotropic_min_weight=isotropic_min_weight(h),
        elapsed_ms=elapsed_ms,
    )
