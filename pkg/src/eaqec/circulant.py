"""Codes generated by cyclic shifts of a single 2n-bit seed.

The construction takes a binary string ``a_0 a_1 ... a_{2n-1}`` and stacks
r rows, each one the seed rotated one position further; the first n
positions form the X block and the rest the Z block of a simplified check
matrix.  Scanning all seeds for small n turns up codes whose distance
beats every standard code with the same net parameters.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import annotations, code as code_mod, gf2
from .code import SimplifiedCheckMatrix
from .gf2 import BitMatrix

CSV_HEADER = "n,r,k,c,d,seed_hex,degenerate,saturates_singleton"


@dataclass(frozen=True)
class CirculantSeed:
    """A packed 2n-bit seed plus the number of shifted rows to take.

    Bit ``j`` of ``bits`` holds ``a_j``, so the leftmost character of the
    written-out string is the lowest bit, matching the row format used
    everywhere else.
    """

    n: int
    bits: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if not 1 <= self.r <= 2 * self.n:
            raise ValueError(f"need 1 <= r <= 2n = {2 * self.n}, got r = {self.r}")
        if not 0 <= self.bits < 1 << (2 * self.n):
            raise ValueError("seed bits do not fit in 2n positions")

    @classmethod
    def from_string(cls, s: str, r: int) -> "CirculantSeed":
        if len(s) % 2 or any(ch not in "01" for ch in s):
            raise ValueError(f"seed must be an even-length 0/1 string: {s!r}")
        bits = sum(1 << j for j, ch in enumerate(s) if ch == "1")
        return cls(len(s) // 2, bits, r)

    def to_string(self) -> str:
        return "".join(str(self.bits >> j & 1) for j in range(2 * self.n))


def rotate(bits: int, shift: int, width: int) -> int:
    """Moves every string position ``j`` to ``j + shift`` modulo the width."""
    shift %= width
    mask = (1 << width) - 1
    return ((bits << shift) | (bits >> (width - shift))) & mask


def reverse(bits: int, width: int) -> int:
    """Mirrors the string: position ``j`` becomes ``width - 1 - j``."""
    out = 0
    for j in range(width):
        if bits >> j & 1:
            out |= 1 << (width - 1 - j)
    return out


def circulant_matrix(seed: CirculantSeed) -> BitMatrix:
    """Row ``i`` is the seed rotated ``i`` positions; row 0 is the seed."""
    width = 2 * seed.n
    return BitMatrix.from_rows(
        [rotate(seed.bits, i, width) for i in range(seed.r)], width
    )


def seed_orbit(bits: int, width: int, *, cyclic: bool, reflect: bool) -> Iterable[int]:
    """All seeds reachable by the selected parameter-preserving symmetries.

    Rotating the seed rotates every row of the circulant matrix by the
    same amount, which is a relabeling of the qubits combined with an X/Z
    exchange at the wrap position; mirroring the string reflects the qubit
    order and exchanges the blocks.  Both leave (k, c, d) unchanged, so
    one representative per orbit suffices in a scan.
    """
    base = [bits]
    if reflect:
        base.append(reverse(bits, width))
    for b in base:
        if cyclic:
            for s in range(width):
                yield rotate(b, s, width)
        else:
            yield b


def _is_canonical(bits: int, width: int, cyclic: bool, reflect: bool) -> bool:
    return all(v >= bits for v in seed_orbit(bits, width, cyclic=cyclic, reflect=reflect))


@dataclass(frozen=True)
class ScanRecord:
    """Smallest-seed exemplar of one achieved ``(n, k, c, d)`` class."""

    n: int
    r: int
    k: int
    c: int
    d: int
    seed: int
    degenerate: bool
    saturates_singleton: bool
    known_nonequivalent: bool

    def csv_row(self) -> str:
        return (
            f"{self.n},{self.r},{self.k},{self.c},{self.d},"
            f"{self.seed:0{(self.n + 1) // 2}x},"
            f"{str(self.degenerate).lower()},{str(self.saturates_singleton).lower()}"
        )


def evaluate_seed(seed: CirculantSeed, min_k: int = 0) -> ScanRecord | None:
    """Parameters of one seed, or None when it yields no code.

    A seed is rejected when its rows are dependent (the construction asks
    for exactly r independent generators) or when the implied k falls
    below the floor.
    """
    n, r = seed.n, seed.r
    mat = circulant_matrix(seed)
    if gf2.rank(mat) != r:
        return None
    try:
        h = SimplifiedCheckMatrix(n, mat)
    except ValueError:
        # More rows than n + c generators can support (k would be negative).
        return None
    c = h.c
    k = n + c - r
    if k < max(min_k, 0):
        return None
    d, _ = code_mod.min_distance(h)
    return ScanRecord(
        n=n,
        r=r,
        k=k,
        c=c,
        d=d,
        seed=seed.bits,
        degenerate=code_mod.degeneracy_check(h, d),
        saturates_singleton=n + c - k == 2 * (d - 1),
        known_nonequivalent=annotations.is_nonequivalent(n, k, d, c),
    )


def _smaller_seed(a: ScanRecord | None, b: ScanRecord) -> ScanRecord:
    return b if a is None or b.seed < a.seed else a


def _scan_chunk(
    args: tuple[int, int, int, tuple[int, ...], bool, bool, int]
) -> dict[tuple[int, int, int, int], ScanRecord]:
    n, lo, hi, r_values, cyclic, reflect, min_k = args
    width = 2 * n
    best: dict[tuple[int, int, int, int], ScanRecord] = {}
    for bits in range(lo, hi):
        if (cyclic or reflect) and not _is_canonical(bits, width, cyclic, reflect):
            continue
        for r in r_values:
            rec = evaluate_seed(CirculantSeed(n, bits, r), min_k)
            if rec is None:
                continue
            key = (rec.n, rec.k, rec.c, rec.d)
            best[key] = _smaller_seed(best.get(key), rec)
    return best


def scan(
    n: int,
    r_values: Sequence[int] | None = None,
    *,
    dedup_cyclic: bool = True,
    dedup_reverse: bool = True,
    min_k: int = 0,
    workers: int | None = None,
) -> list[ScanRecord]:
    """One exemplar per achieved ``(n, k, c, d)`` over all seeds and rows.

    The default row range is ``1..2(n-1)``.  Each class keeps its smallest
    seed, so the result is identical whichever dedup options or worker
    count are used.  Full scans are desk-scale through n = 7; n = 10
    takes hours.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rv = tuple(r_values) if r_values is not None else tuple(range(1, 2 * n - 1))
    if any(not 1 <= r <= 2 * n for r in rv):
        raise ValueError(f"row counts must lie in 1..{2 * n}")
    if workers is None:
        workers = 1
    total = 1 << (2 * n)
    if workers > 1 and total >= 4 * workers:
        bounds = [total * i // workers for i in range(workers + 1)]
        jobs = [
            (n, lo, hi, rv, dedup_cyclic, dedup_reverse, min_k)
            for lo, hi in zip(bounds, bounds[1:])
            if hi > lo
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
        best: dict[tuple[int, int, int, int], ScanRecord] = {}
        for part in parts:
            for key, rec in part.items():
                best[key] = _smaller_seed(best.get(key), rec)
    else:
        best = _scan_chunk((n, 0, total, rv, dedup_cyclic, dedup_reverse, min_k))
    return [best[key] for key in sorted(best)]


def best_per_class(records: Iterable[ScanRecord]) -> list[ScanRecord]:
    """Reduces exemplars to the best code per ``(n, k, c)``.

    Highest distance wins; ties keep the smallest seed.
    """
    best: dict[tuple[int, int, int], ScanRecord] = {}
    for rec in records:
        key = (rec.n, rec.k, rec.c)
        cur = best.get(key)
        if cur is None or rec.d > cur.d or (rec.d == cur.d and rec.seed < cur.seed):
            best[key] = rec
    return [best[key] for key in sorted(best)]


def scan_csv(records: Iterable[ScanRecord]) -> str:
    lines = [CSV_HEADER]
    lines.extend(rec.csv_row() for rec in records)
    return "\n".join(lines) + "\n"
