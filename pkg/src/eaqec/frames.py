"""Symplectic frames and the row-operator algebra on them.

A frame holds a full symplectic basis of ``F_2^{2n}``: r stabilizer rows
``g``, their partners ``h``, and k logical pairs ``lz``/``lx``.  Encoding
optimization works by mutating the partner and logical rows through the
four compensated row-operator types, then reading off an induced code for
an ebit pattern T.  All row content is stored packed, X bits low.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from . import gf2, pauli
from .circuit import Circuit, synthesize_encoding
from .code import LogicalMatrix, SimplifiedCheckMatrix
from .gf2 import BitMatrix


@dataclass
class SymplecticFrame:
    """Mutable frame of ``2n`` packed rows; indices are 0-based throughout."""

    n: int
    g_rows: list[int]
    h_rows: list[int]
    lz_rows: list[int]
    lx_rows: list[int]

    @property
    def r(self) -> int:
        return len(self.g_rows)

    @property
    def k(self) -> int:
        return len(self.lz_rows)

    def copy(self) -> "SymplecticFrame":
        return SymplecticFrame(
            self.n,
            list(self.g_rows),
            list(self.h_rows),
            list(self.lz_rows),
            list(self.lx_rows),
        )

    def all_rows(self) -> list[int]:
        return self.g_rows + self.h_rows + self.lz_rows + self.lx_rows

    def validate(self) -> list[str]:
        return validate_frame(self)


def canonical_frame(n: int, k: int) -> SymplecticFrame:
    """``g_i = Z_i``, ``h_i = X_i``, logicals on the last ``k`` qubits."""
    r = n - k
    if not 0 <= k <= n:
        raise ValueError(f"invalid parameters n={n}, k={k}")
    return SymplecticFrame(
        n,
        [1 << (n + i) for i in range(r)],
        [1 << i for i in range(r)],
        [1 << (n + r + j) for j in range(k)],
        [1 << (r + j) for j in range(k)],
    )


def validate_frame(frame: SymplecticFrame) -> list[str]:
    """Checks the symplectic-basis relations; returns violations."""
    n, r, k = frame.n, frame.r, frame.k
    violations: list[str] = []
    if r + k != n:
        violations.append(f"row counts r={r}, k={k} do not fill n={n} qubits")
        return violations
    rows = frame.all_rows()
    names = (
        [f"g_{i}" for i in range(r)]
        + [f"h_{i}" for i in range(r)]
        + [f"lz_{j}" for j in range(k)]
        + [f"lx_{j}" for j in range(k)]
    )
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            got = pauli.sp_packed(rows[a], rows[b], n)
            partner = (a < r and b == a + r) or (
                2 * r <= a < 2 * r + k and b == a + k
            )
            if got != int(partner):
                violations.append(
                    f"{names[a]} (.) {names[b]} = {got}, expected {int(partner)}"
                )
    if gf2.rank(BitMatrix.from_rows(rows, 2 * n)) != 2 * n:
        violations.append("frame rows do not form a basis")
    return violations


def frame_from_code(
    h: SimplifiedCheckMatrix, heavy_logicals: bool = True
) -> SymplecticFrame:
    """Extends a standard code's check matrix to a full frame.

    The g rows of the result are exactly the input rows; the completion is
    fixed by the encoding-circuit synthesis, so repeated calls agree.  By
    default the logical rows are then normalized to their heaviest coset
    representatives (see :func:`canonicalize_logicals`); the raw synthesis
    output tends to carry low-weight logicals, which drag down the best
    reachable distance once partner rows are promoted to check rows.
    """
    if h.c != 0:
        raise ValueError("check rows must mutually commute")
    n, r = h.n, h.m
    k = n - r
    circ, record = synthesize_encoding(h)
    inv = circ.inverse()
    base = canonical_frame(n, k)
    g_mixed = [inv.apply_packed(row) for row in base.g_rows]
    h_mixed = [inv.apply_packed(row) for row in base.h_rows]
    lz = [inv.apply_packed(row) for row in base.lz_rows]
    lx = [inv.apply_packed(row) for row in base.lx_rows]
    # The conjugated g rows equal record @ H; undo the mixing so the frame
    # exposes the caller's own generators, compensating the partners.
    rec_inv = gf2.inverse(record)
    g_rows = list(gf2.matmul(rec_inv, BitMatrix.from_rows(g_mixed, 2 * n)).row_data)
    h_rows = list(
        gf2.matmul(record.transpose(), BitMatrix.from_rows(h_mixed, 2 * n)).row_data
    )
    if g_rows != list(h.mat.row_data):
        raise RuntimeError("frame synthesis failed to reproduce the input rows")
    frame = SymplecticFrame(n, g_rows, h_rows, lz, lx)
    problems = validate_frame(frame)
    if problems:
        raise RuntimeError(f"synthesized frame invalid: {problems[0]}")
    if heavy_logicals:
        canonicalize_logicals(frame)
    return frame


_CANONICALIZE_LIMIT = 20


def canonicalize_logicals(frame: SymplecticFrame) -> SymplecticFrame:
    """Replaces each logical row by its heaviest stabilizer-coset member.

    Logical operators are only defined up to stabilizer factors, and which
    coset member the frame carries matters: the frame rows seed every
    optimization, and a low-weight representative caps the distances that
    compensated row operations can reach.  Each lz and lx row in turn is
    shifted to the maximum-weight element of ``row + span(g)``, breaking
    ties by smallest packed value, with the partner rows compensated so the
    frame stays symplectic.  Scans all ``2^r`` coset members per logical
    row, so this refuses frames with more than 20 stabilizer rows.

    Mutates and returns the frame.
    """
    r, n = frame.r, frame.n
    if r > _CANONICALIZE_LIMIT:
        raise ValueError(
            f"coset scan over 2^{r} stabilizer combinations is too large"
        )
    span: list[tuple[int, int]] = []
    for w in range(1 << r):
        v = 0
        for j in range(r):
            if w >> j & 1:
                v ^= frame.g_rows[j]
        span.append((w, v))
    for m in range(frame.k):
        for op_type, rows in ((4, frame.lz_rows), (3, frame.lx_rows)):
            best_key = None
            best_w = 0
            for w, v in span:
                cand = rows[m] ^ v
                key = (-pauli.weight_packed(cand, n), cand)
                if best_key is None or key < best_key:
                    best_key, best_w = key, w
            for l in range(r):
                if best_w >> l & 1:
                    apply_type(frame, op_type, l, m)
    return frame


@dataclass(frozen=True)
class SelectionParams:
    """Coefficient blocks for the logical-mixing phase, both ``c x k``."""

    a: BitMatrix
    b: BitMatrix

    def __post_init__(self) -> None:
        if (self.a.rows, self.a.cols) != (self.b.rows, self.b.cols):
            raise ValueError("A and B blocks must have identical shapes")


@dataclass(frozen=True)
class PartnerSubspace:
    """A rank-c choice of partner combinations, rows over the h span.

    Enumeration and counting use the reduced-row-echelon representative of
    each subspace; the constructor also accepts non-canonical full-rank
    matrices so specific partner rows can be installed directly.
    """

    m_v: BitMatrix

    def __post_init__(self) -> None:
        if gf2.rank(self.m_v) != self.m_v.rows:
            raise ValueError("partner matrix must have full row rank")

    @property
    def c(self) -> int:
        return self.m_v.rows

    @property
    def r(self) -> int:
        return self.m_v.cols


def check_ebit_pattern(t: Sequence[int], r: int) -> tuple[int, ...]:
    tt = tuple(t)
    if any(b <= a for a, b in zip(tt, tt[1:])) or any(
        not 0 <= v < r for v in tt
    ):
        raise ValueError(f"T must be strictly increasing within 0..{r - 1}: {tt}")
    return tt


def apply_type(frame: SymplecticFrame, op_type: int, l: int, m: int) -> SymplecticFrame:
    """One compensated row operator; mutates and returns the frame.

    Type 1: ``h_l += h_m``, ``g_m += g_l``.  Type 2: ``h_l += g_m``,
    ``h_m += g_l``.  Type 3: ``h_l += lz_m``, ``lx_m += g_l``.  Type 4:
    ``h_l += lx_m``, ``lz_m += g_l``.  Types 1-2 take two distinct
    stabilizer slots; types 3-4 take a stabilizer slot and a logical slot.
    """
    r, k = frame.r, frame.k
    if not 0 <= l < r:
        raise ValueError(f"stabilizer index l={l} out of range 0..{r - 1}")
    if op_type in (1, 2):
        if not 0 <= m < r:
            raise ValueError(f"stabilizer index m={m} out of range 0..{r - 1}")
        if l == m:
            raise ValueError("type 1 and 2 operators need two distinct slots")
    elif op_type in (3, 4):
        if not 0 <= m < k:
            raise ValueError(f"logical index m={m} out of range 0..{k - 1}")
    else:
        raise ValueError(f"unknown operator type {op_type}")
    if op_type == 1:
        frame.h_rows[l] ^= frame.h_rows[m]
        frame.g_rows[m] ^= frame.g_rows[l]
    elif op_type == 2:
        frame.h_rows[l] ^= frame.g_rows[m]
        frame.h_rows[m] ^= frame.g_rows[l]
    elif op_type == 3:
        frame.h_rows[l] ^= frame.lz_rows[m]
        frame.lx_rows[m] ^= frame.g_rows[l]
    else:
        frame.h_rows[l] ^= frame.lx_rows[m]
        frame.lz_rows[m] ^= frame.g_rows[l]
    return frame


def apply_selection(
    frame: SymplecticFrame, t: Sequence[int], sel: SelectionParams
) -> SymplecticFrame:
    """All type-4 operators for set bits of A, then all type-3 for B.

    The phase order matters: the type-3 additions pick up lz rows already
    shifted by the type-4 compensations.  Mutates and returns the frame.
    """
    tt = check_ebit_pattern(t, frame.r)
    c, k = sel.a.rows, sel.a.cols
    if len(tt) != c:
        raise ValueError(f"T has {len(tt)} slots, selection blocks have {c} rows")
    if k != frame.k:
        raise ValueError(f"selection blocks have {k} columns, frame has k={frame.k}")
    for i, ti in enumerate(tt):
        for m in range(k):
            if sel.a.get(i, m):
                apply_type(frame, 4, ti, m)
    for i, ti in enumerate(tt):
        for m in range(k):
            if sel.b.get(i, m):
                apply_type(frame, 3, ti, m)
    return frame


def apply_partner_choice(
    frame: SymplecticFrame, t: Sequence[int], p: PartnerSubspace
) -> SymplecticFrame:
    """Installs ``sum_j M_V[i, j] h_j`` at partner slot ``t_i``.

    The remaining partner slots and the g side are recompensated so every
    frame invariant still holds and the g row space is untouched.  Mutates
    and returns the frame.
    """
    r = frame.r
    tt = check_ebit_pattern(t, r)
    if p.r != r:
        raise ValueError(f"partner matrix has {p.r} columns, frame has r={r}")
    if p.c != len(tt):
        raise ValueError(f"partner matrix has {p.c} rows, T has {len(tt)} slots")
    slot_rows: dict[int, int] = {
        ti: p.m_v.row_data[i] for i, ti in enumerate(tt)
    }
    # Complete to an invertible mixing matrix: fill the free slots with the
    # first standard basis rows that keep the rank growing.
    chosen: list[int] = []
    reduced: list[int] = []
    pivots: list[int] = []

    def try_add(row: int) -> bool:
        rem = gf2.reduce_against(row, reduced, pivots)
        if rem == 0:
            return False
        reduced.append(rem)
        pivots.append(rem.bit_length() - 1)
        return True

    for ti in tt:
        if not try_add(slot_rows[ti]):
            raise ValueError("partner matrix must have full row rank")
    fill = iter(range(r))
    full_rows = [0] * r
    for ti in tt:
        full_rows[ti] = slot_rows[ti]
    for s in range(r):
        if s in slot_rows:
            continue
        for j in fill:
            if try_add(1 << j):
                full_rows[s] = 1 << j
                break
        else:
            raise RuntimeError("completion failed")
    mix = BitMatrix(r, tuple(full_rows))
    comp = gf2.inverse(mix).transpose()
    h_mat = BitMatrix.from_rows(frame.h_rows, 2 * frame.n)
    g_mat = BitMatrix.from_rows(frame.g_rows, 2 * frame.n)
    frame.h_rows = list(gf2.matmul(mix, h_mat).row_data)
    frame.g_rows = list(gf2.matmul(comp, g_mat).row_data)
    return frame


def induced_code(
    frame: SymplecticFrame, t: Sequence[int]
) -> tuple[SimplifiedCheckMatrix, LogicalMatrix]:
    """All g rows plus the partner rows at T, with pairing metadata."""
    tt = check_ebit_pattern(t, frame.r)
    rows = frame.g_rows + [frame.h_rows[ti] for ti in tt]
    pairs = tuple((ti, frame.r + i) for i, ti in enumerate(tt))
    check = SimplifiedCheckMatrix(
        frame.n, BitMatrix.from_rows(rows, 2 * frame.n), pairs
    )
    logical = LogicalMatrix(
        frame.n,
        BitMatrix.from_rows(frame.lz_rows + frame.lx_rows, 2 * frame.n),
    )
    return check, logical


def conjugate_frame(circ: Circuit, frame: SymplecticFrame) -> SymplecticFrame:
    """Applies the circuit's column action to every row of a copy."""
    if circ.n != frame.n:
        raise ValueError(f"circuit acts on {circ.n} qubits, frame has {frame.n}")
    return SymplecticFrame(
        frame.n,
        [circ.apply_packed(v) for v in frame.g_rows],
        [circ.apply_packed(v) for v in frame.h_rows],
        [circ.apply_packed(v) for v in frame.lz_rows],
        [circ.apply_packed(v) for v in frame.lx_rows],
    )


@lru_cache(maxsize=None)
def count_N(r: int, c: int) -> int:
    """Number of c-dimensional subspaces of ``F_2^r`` (Gaussian binomial)."""
    if c < 0 or c > r:
        raise ValueError(f"need 0 <= c <= r, got r={r}, c={c}")
    if c == 0 or c == r:
        return 1
    return count_N(r - 1, c - 1) + (1 << c) * count_N(r - 1, c)


def _free_cells(r: int, pivots: tuple[int, ...]) -> list[tuple[int, int]]:
    pivot_set = set(pivots)
    return [
        (i, j)
        for i, p in enumerate(pivots)
        for j in range(p + 1, r)
        if j not in pivot_set
    ]


def _build_rref(r: int, pivots: tuple[int, ...], cells: list[tuple[int, int]], bits: int) -> BitMatrix:
    rows = [1 << p for p in pivots]
    for idx, (i, j) in enumerate(cells):
        if bits >> idx & 1:
            rows[i] |= 1 << j
    return BitMatrix(r, tuple(rows))


def enumerate_partner_subspaces(r: int, c: int) -> Iterator[PartnerSubspace]:
    """All reduced-echelon rank-c matrices, pivot sets in lex order."""
    if c < 0 or c > r:
        raise ValueError(f"need 0 <= c <= r, got r={r}, c={c}")
    for pivots in itertools.combinations(range(r), c):
        cells = _free_cells(r, pivots)
        for bits in range(1 << len(cells)):
            yield PartnerSubspace(_build_rref(r, pivots, cells, bits))


def unrank_partner_subspace(r: int, c: int, index: int) -> PartnerSubspace:
    """The index-th matrix of the enumeration order, without streaming."""
    if not 0 <= index < count_N(r, c):
        raise ValueError(f"index {index} out of range for N({r},{c}) = {count_N(r, c)}")
    for pivots in itertools.combinations(range(r), c):
        cells = _free_cells(r, pivots)
        block = 1 << len(cells)
        if index < block:
            return PartnerSubspace(_build_rref(r, pivots, cells, index))
        index -= block
    raise AssertionError("unreachable")
