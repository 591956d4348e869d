"""Encoding optimization: exhaustive candidate sweeps and random search.

A candidate encoding is a triple (A, B, M_V): logical-mixing blocks applied
at the ebit slots, then a partner-subspace choice.  The exhaustive sweep
scores all ``2^{2ck} * N(r,c)`` candidates for a fixed ebit pattern; the
random search walks the same space with a merit function, composing
accepted candidates incrementally.

The sweep never materializes frames.  For a fixed pattern T the centralizer
of a candidate's code is spanned by the kernel of M_V over the g rows
together with the shifted logicals ``lz_m + sum_i A[i,m] g_{t_i}`` and
``lx_m + sum_i B[i,m] g_{t_i}``; the distance is therefore a minimum over
precomputed weight tables indexed by g-coefficients, and only the kernel
depends on M_V.  The per-candidate equivalence with the frame-by-frame path
is property-tested.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from . import code as code_mod
from . import frames as frames_mod
from . import gf2
from .code import CodeReport, LogicalMatrix, SimplifiedCheckMatrix, WeightEnumerator
from .frames import (
    PartnerSubspace,
    SelectionParams,
    SymplecticFrame,
    count_N,
    unrank_partner_subspace,
)
from .gf2 import BitMatrix

WORKERS_ENV = "EAQEC_WORKERS"

ProgressHook = Callable[[int, int, int | None, float], None]


class SearchCostExceeded(Exception):
    """Raised instead of starting a sweep whose size exceeds the ceiling."""

    def __init__(self, estimated: int, limit: int):
        self.estimated = estimated
        self.limit = limit
        super().__init__(
            f"estimated sweep cost {estimated} exceeds the ceiling {limit}; "
            "raise --max-cost to run anyway"
        )


@dataclass(frozen=True)
class MeritConfig:
    """Window for the merit sum ``a_1 + ... + a_b`` over the enumerator."""

    window: int

    def check(self, n: int) -> None:
        if not 1 <= self.window <= n:
            raise ValueError(f"merit window {self.window} outside 1..{n}")


def merit(enumerator: WeightEnumerator, cfg: MeritConfig) -> int:
    """Total count of centralizer-minus-isotropic elements of weight <= b."""
    coeffs = enumerator.coefficients
    cfg.check(len(coeffs) - 1)
    return sum(coeffs[1 : cfg.window + 1])


@dataclass(frozen=True)
class SearchSpec:
    """What to optimize: a base frame, an ebit count, and mode knobs.

    ``t_policy`` is only meaningful in random mode (exhaustive always uses
    the first c slots).  ``stop_distance`` defaults to the singleton bound.
    ``restart`` makes the random walk apply every candidate to the original
    frame instead of the current best.
    """

    frame: SymplecticFrame
    c: int
    mode: str = "exhaustive"
    t_policy: str = "fixed"
    budget: int = 1000
    seed: int | None = None
    merit_window: int | None = None
    stop_distance: int | None = None
    restart: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.c <= self.frame.r:
            raise ValueError(f"need 1 <= c <= r = {self.frame.r}, got c = {self.c}")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.t_policy not in ("fixed", "random"):
            raise ValueError(f"unknown T policy {self.t_policy!r}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


@dataclass(frozen=True)
class OptimizationResult:
    d_opt: int
    n_opt: int
    total: int
    exemplars: tuple[tuple[SimplifiedCheckMatrix, LogicalMatrix, CodeReport], ...]
    degenerate_optima: int
    elapsed_s: float

    def csv_row(self, c: int) -> str:
        return f"{c},{self.d_opt},{self.n_opt},{self.total},{self.elapsed_s:.3f}"


CSV_HEADER = "c,d_opt,N_opt,total,elapsed"


def candidate_count(r: int, c: int, k: int) -> int:
    return (1 << (2 * c * k)) * count_N(r, c)


def sweep_cost(r: int, c: int, k: int) -> int:
    """Work estimate for an exhaustive sweep, in weight-lookup units.

    Scoring one candidate scans the ``2^{r-c}`` elements of the partner
    kernel, so the estimate is the candidate count times that factor.  The
    candidate count alone would misrank the sweeps: the subspace count
    peaks at ``c = r/2``, yet small-kernel sweeps at large c are cheap.
    """
    return candidate_count(r, c, k) << (r - c)


def _weight_tables(frame: SymplecticFrame) -> np.ndarray:
    """``W[s, b]`` = weight of sector-s logicals XOR the b-combination of g.

    Sector ``s`` packs lz coefficients in its low k bits and lx in the high
    k bits; ``b`` runs over all 2^r g-coefficients in doubling order.
    """
    n, r, k = frame.n, frame.r, frame.k
    mask = (1 << n) - 1
    table = np.empty((1 << (2 * k), 1 << r), dtype=np.uint8)
    xs = np.zeros(1 << r, dtype=np.uint64)
    zs = np.zeros(1 << r, dtype=np.uint64)
    for i, bits in enumerate(frame.g_rows):
        lo, hi = 1 << i, 2 << i
        xs[lo:hi] = xs[:lo] ^ np.uint64(bits & mask)
        zs[lo:hi] = zs[:lo] ^ np.uint64(bits >> n)
    for s in range(1 << (2 * k)):
        seed = 0
        for m in range(k):
            if s >> m & 1:
                seed ^= frame.lz_rows[m]
            if s >> (k + m) & 1:
                seed ^= frame.lx_rows[m]
        sx, sz = np.uint64(seed & mask), np.uint64(seed >> n)
        table[s] = np.bitwise_count((xs ^ sx) | (zs ^ sz))
    return table


def _sector_index_tables(c: int, k: int) -> list[np.ndarray | None]:
    """For each nonzero sector, the map ``(a_bits, b_bits) -> A gamma + B delta``.

    Selection blocks are packed column-major: bits ``m*c .. m*c+c-1`` of
    ``a_bits`` hold column m of A, so ``A gamma`` is an XOR of bit fields.
    """
    ab = np.arange(1 << (c * k), dtype=np.int64)
    cmask = (1 << c) - 1
    col = [np.zeros_like(ab)]
    for gamma in range(1, 1 << k):
        acc = np.zeros_like(ab)
        for m in range(k):
            if gamma >> m & 1:
                acc ^= (ab >> (m * c)) & cmask
        col.append(acc)
    tables: list[np.ndarray | None] = [None]
    for s in range(1, 1 << (2 * k)):
        gamma, delta = s & ((1 << k) - 1), s >> k
        tables.append(col[gamma][:, None] ^ col[delta][None, :])
    return tables


def _kernel_elements(m_v: BitMatrix) -> np.ndarray:
    basis = gf2.kernel_basis(m_v).row_data
    out = np.zeros(1 << len(basis), dtype=np.int64)
    for i, b in enumerate(basis):
        lo, hi = 1 << i, 2 << i
        out[lo:hi] = out[:lo] ^ b
    return out


@dataclass
class _SweepPartial:
    hist: np.ndarray
    deg_by_iso: np.ndarray
    exemplars: list[tuple[int, int, int, int]]  # (cand_index, mv_index, a, b)
    best_d: int


def _sweep_range(
    frame: SymplecticFrame,
    c: int,
    mv_lo: int,
    mv_hi: int,
    exemplar_limit: int,
    progress: ProgressHook | None = None,
    total: int | None = None,
    started: float | None = None,
) -> _SweepPartial:
    n, r, k = frame.n, frame.r, frame.k
    t = tuple(range(c))
    weights = _weight_tables(frame)
    sector_idx = _sector_index_tables(c, k)
    ext = np.zeros(1 << c, dtype=np.int64)
    for i, ti in enumerate(t):
        ext ^= ((np.arange(1 << c) >> i) & 1) << ti
    per_mv = 1 << (2 * c * k)
    nbins = n + 2
    iso_inf = n + 1
    hist = np.zeros(nbins, dtype=np.int64)
    deg_by_iso = np.zeros((nbins, nbins), dtype=np.int64)
    exemplars: list[tuple[int, int, int, int]] = []
    best_d = 0
    t0 = started if started is not None else time.perf_counter()
    last_tick = t0
    for mv_idx in range(mv_lo, mv_hi):
        m_v = unrank_partner_subspace(r, c, mv_idx).m_v
        kernel = _kernel_elements(m_v)
        iso_min = int(weights[0][kernel][1:].min()) if kernel.size > 1 else iso_inf
        if k == 0:
            if kernel.size == 1:
                raise ValueError("centralizer is trivial; distance is undefined")
            d_mv = iso_min
            hist[d_mv] += 1
            deg_by_iso[iso_min][d_mv] += 1
            if d_mv > best_d:
                best_d, exemplars = d_mv, []
            if d_mv == best_d and len(exemplars) < exemplar_limit:
                exemplars.append((mv_idx * per_mv, mv_idx, 0, 0))
            continue
        gathered = weights[:, ext[:, None] ^ kernel[None, :]]
        f_su = gathered.min(axis=2)
        d_grid = np.full((1 << (c * k), 1 << (c * k)), 255, dtype=np.uint8)
        for s in range(1, 1 << (2 * k)):
            np.minimum(d_grid, f_su[s][sector_idx[s]], out=d_grid)
        counts = np.bincount(d_grid.ravel(), minlength=nbins)[:nbins]
        hist += counts
        deg_by_iso[iso_min] += counts
        d_mv = int(d_grid.max())
        if d_mv > best_d:
            best_d, exemplars = d_mv, []
        if d_mv == best_d and len(exemplars) < exemplar_limit:
            side = 1 << (c * k)
            hits = np.argwhere(d_grid == best_d)
            for a_bits, b_bits in hits[: exemplar_limit - len(exemplars)]:
                idx = (mv_idx * side + int(a_bits)) * side + int(b_bits)
                exemplars.append((idx, mv_idx, int(a_bits), int(b_bits)))
            exemplars.sort()
            del exemplars[exemplar_limit:]
        if progress is not None and total is not None:
            now = time.perf_counter()
            if now - last_tick >= 0.5:
                done = (mv_idx - mv_lo + 1) * per_mv
                progress(done, total, best_d or None, now - t0)
                last_tick = now
    return _SweepPartial(hist, deg_by_iso, exemplars, best_d)


def _sweep_worker(args: tuple) -> tuple[np.ndarray, np.ndarray, list, int]:
    frame_fields, c, mv_lo, mv_hi, exemplar_limit = args
    frame = SymplecticFrame(*frame_fields)
    part = _sweep_range(frame, c, mv_lo, mv_hi, exemplar_limit)
    return part.hist, part.deg_by_iso, part.exemplars, part.best_d


def selection_from_bits(c: int, k: int, a_bits: int, b_bits: int) -> SelectionParams:
    """Unpacks column-major block bits into SelectionParams."""
    a_rows = [0] * c
    b_rows = [0] * c
    for m in range(k):
        for i in range(c):
            if a_bits >> (m * c + i) & 1:
                a_rows[i] |= 1 << m
            if b_bits >> (m * c + i) & 1:
                b_rows[i] |= 1 << m
    return SelectionParams(BitMatrix.from_rows(a_rows, k), BitMatrix.from_rows(b_rows, k))


def realize_candidate(
    frame: SymplecticFrame,
    t: Sequence[int],
    sel: SelectionParams,
    partner: PartnerSubspace,
) -> tuple[SimplifiedCheckMatrix, LogicalMatrix]:
    """Applies one candidate to a copy of the frame and induces its code."""
    work = frame.copy()
    frames_mod.apply_selection(work, t, sel)
    frames_mod.apply_partner_choice(work, t, partner)
    return frames_mod.induced_code(work, t)


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    return 1


def exhaustive_optimize(
    spec: SearchSpec,
    *,
    max_cost: int | None = None,
    workers: int | None = None,
    progress: ProgressHook | None = None,
    exemplar_limit: int = 4,
) -> OptimizationResult:
    """Scores every (A, B, M_V) candidate at the fixed pattern T = first c.

    Returns the exact optimal distance, how many candidates achieve it, and
    a bounded exemplar list chosen by smallest candidate index (so results
    do not depend on the worker count).  Refuses to start when the
    candidate count exceeds ``max_cost``.
    """
    if spec.mode != "exhaustive":
        raise ValueError("spec.mode must be 'exhaustive'")
    frame, c = spec.frame, spec.c
    n, r, k = frame.n, frame.r, frame.k
    total = candidate_count(r, c, k)
    if max_cost is not None:
        cost = sweep_cost(r, c, k)
        if cost > max_cost:
            raise SearchCostExceeded(cost, max_cost)
    if workers is None:
        workers = default_workers()
    started = time.perf_counter()
    n_mv = count_N(r, c)
    if workers > 1 and n_mv >= 2 * workers:
        bounds = [n_mv * i // workers for i in range(workers + 1)]
        fields = (frame.n, frame.g_rows, frame.h_rows, frame.lz_rows, frame.lx_rows)
        jobs = [
            (fields, c, lo, hi, exemplar_limit)
            for lo, hi in zip(bounds, bounds[1:])
            if hi > lo
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_worker, jobs))
        hist = sum(p[0] for p in parts)
        deg_by_iso = sum(p[1] for p in parts)
        best_d = max(p[3] for p in parts)
        exemplar_keys = sorted(x for p in parts if p[3] == best_d for x in p[2])
    else:
        part = _sweep_range(
            frame,
            c,
            0,
            n_mv,
            exemplar_limit,
            progress=progress,
            total=total,
            started=started,
        )
        hist, deg_by_iso, best_d = part.hist, part.deg_by_iso, part.best_d
        exemplar_keys = sorted(part.exemplars)
    nz = np.nonzero(hist)[0]
    if nz.size == 0:
        raise RuntimeError("sweep produced no candidates")
    if int(hist.sum()) != total:
        raise RuntimeError("candidate accounting mismatch")
    d_opt = int(nz.max())
    if d_opt != best_d:
        raise RuntimeError("exemplar tracking disagrees with the histogram")
    n_opt = int(hist[d_opt])
    bound = code_mod.singleton_bound(n, k, c)
    if d_opt > bound:
        raise RuntimeError(f"observed d = {d_opt} above the singleton bound {bound}")
    threshold = 2 * ((d_opt - 1) // 2)
    degenerate_optima = int(deg_by_iso[: threshold + 1, d_opt].sum())
    exemplars = []
    for _, mv_idx, a_bits, b_bits in exemplar_keys[:exemplar_limit]:
        sel = selection_from_bits(c, k, a_bits, b_bits)
        partner = unrank_partner_subspace(r, c, mv_idx)
        chk, lg = realize_candidate(frame, tuple(range(c)), sel, partner)
        report = code_mod.report(chk, lg)
        if report.params.d != d_opt:
            raise RuntimeError(
                f"exemplar distance {report.params.d} disagrees with sweep {d_opt}"
            )
        exemplars.append((chk, lg, report))
    elapsed = time.perf_counter() - started
    if progress is not None:
        progress(total, total, d_opt, elapsed)
    return OptimizationResult(
        d_opt=d_opt,
        n_opt=n_opt,
        total=total,
        exemplars=tuple(exemplars),
        degenerate_optima=degenerate_optima,
        elapsed_s=elapsed,
    )


def random_search(
    spec: SearchSpec, *, progress: ProgressHook | None = None
) -> tuple[OptimizationResult, int]:
    """Merit-guided random walk; returns the best-so-far and trials used.

    Per trial: sample T (unless fixed), sample (A, B) and a partner
    subspace uniformly, apply both to the current frame, and accept the
    candidate when its merit strictly improves.  Accepted candidates become
    the new base (set ``restart`` to always start from the original
    frame).  Stops when the distance reaches ``stop_distance`` (default:
    the singleton bound) or the budget runs out.
    """
    if spec.mode != "random":
        raise ValueError("spec.mode must be 'random'")
    base, c = spec.frame, spec.c
    n, r, k = base.n, base.r, base.k
    rng = random.Random(spec.seed)
    bound = code_mod.singleton_bound(n, k, c)
    stop_d = spec.stop_distance if spec.stop_distance is not None else bound
    window = spec.merit_window if spec.merit_window is not None else max(bound - 1, 1)
    cfg = MeritConfig(window)
    cfg.check(n)
    n_mv = count_N(r, c)
    started = time.perf_counter()

    current = base.copy()
    best: tuple[SimplifiedCheckMatrix, LogicalMatrix, CodeReport] | None = None
    best_merit: int | None = None
    best_d = 0
    d_opt_hits = 0
    degenerate_hits = 0
    trials = 0
    for trial in range(1, spec.budget + 1):
        trials = trial
        if spec.t_policy == "random":
            t = tuple(sorted(rng.sample(range(r), c)))
        else:
            t = tuple(range(c))
        a_bits = rng.getrandbits(c * k)
        b_bits = rng.getrandbits(c * k)
        sel = selection_from_bits(c, k, a_bits, b_bits)
        partner = unrank_partner_subspace(r, c, rng.randrange(n_mv))
        source = base if spec.restart else current
        work = source.copy()
        frames_mod.apply_selection(work, t, sel)
        frames_mod.apply_partner_choice(work, t, partner)
        chk, lg = frames_mod.induced_code(work, t)
        d, enum = code_mod.min_distance(chk, lg)
        if d > bound:
            raise RuntimeError(f"candidate d = {d} above the singleton bound {bound}")
        score = merit(enum, cfg)
        if d > best_d:
            best_d = d
            d_opt_hits = 0
            degenerate_hits = 0
        if d == best_d:
            d_opt_hits += 1
            if code_mod.degeneracy_check(chk, d):
                degenerate_hits += 1
        if best_merit is None or score < best_merit:
            best_merit = score
            report = code_mod.report(chk, lg)
            best = (chk, lg, report)
            current = work
        if progress is not None and trial % 64 == 0:
            progress(trial, spec.budget, best_d or None, time.perf_counter() - started)
        if d >= stop_d:
            break
    assert best is not None
    elapsed = time.perf_counter() - started
    result = OptimizationResult(
        d_opt=best[2].params.d,
        n_opt=d_opt_hits,
        total=trials,
        exemplars=(best,),
        degenerate_optima=degenerate_hits,
        elapsed_s=elapsed,
    )
    return result, trials
