from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaqec import code, frames, gf2, pauli
from eaqec.catalog import entries
from eaqec.circuit import Circuit, hadamard, phase, swap
from eaqec.code import SimplifiedCheckMatrix
from eaqec.frames import (
    PartnerSubspace,
    SelectionParams,
    SymplecticFrame,
    apply_partner_choice,
    apply_selection,
    apply_type,
    canonical_frame,
    canonicalize_logicals,
    check_ebit_pattern,
    conjugate_frame,
    count_N,
    enumerate_partner_subspaces,
    frame_from_code,
    induced_code,
    unrank_partner_subspace,
    validate_frame,
)
from eaqec.gf2 import BitMatrix


def _bch_frame() -> SymplecticFrame:
    return frame_from_code(entries()["bch_7_1_3"].matrix)


def _g_space(frame: SymplecticFrame) -> set[int]:
    return set(gf2.span_iter(frame.g_rows))


def test_canonical_frame_is_valid():
    frame = canonical_frame(5, 2)
    assert validate_frame(frame) == []
    assert frame.r == 3 and frame.k == 2
    assert frame.g_rows == [1 << 5, 1 << 6, 1 << 7]
    assert frame.h_rows == [1, 2, 4]


def test_validate_frame_reports_broken_pairing():
    frame = canonical_frame(4, 1)
    frame.h_rows[0] = frame.h_rows[1]
    problems = validate_frame(frame)
    assert problems
    assert any("g_0" in p or "h_0" in p for p in problems)


def test_frame_from_code_reproduces_input_rows():
    for name in ("bitflip_5_1_1", "bch_7_1_3", "shor_9_1_3", "gottesman_8_3_3"):
        h = entries()[name].matrix
        frame = frame_from_code(h)
        assert frame.g_rows == list(h.mat.row_data), name
        assert validate_frame(frame) == [], name


def test_frame_from_code_is_deterministic():
    h = entries()["bch_7_1_3"].matrix
    a, b = frame_from_code(h), frame_from_code(h)
    assert a.g_rows == b.g_rows and a.h_rows == b.h_rows
    assert a.lz_rows == b.lz_rows and a.lx_rows == b.lx_rows


def test_frame_from_code_rejects_entangled_input():
    with pytest.raises(ValueError):
        frame_from_code(entries()["eaqec_7_1_5_2"].matrix)


def test_bitflip_completion_matches_printed_partner_rows():
    # The synthesized and weight-normalized completion of the bit-flip code
    # is exactly the printed extension: partners IXXXX, XXIII, IIIXX, XXXXI
    # and logicals Z^5 / X^5.
    example = entries()["example1_5_1_5_4"]
    frame = frame_from_code(entries()["bitflip_5_1_1"].matrix)
    assert frame.h_rows == list(example.matrix.mat.row_data[4:])
    assert frame.lz_rows == [example.logical.mat.row_data[0]]
    assert frame.lx_rows == [example.logical.mat.row_data[1]]
    chk, lg = induced_code(frame, (0, 1, 2, 3))
    assert chk == example.matrix
    assert lg == example.logical


def test_canonicalized_logicals_are_coset_maxima():
    frame = _bch_frame()
    coset = list(gf2.span_iter(frame.g_rows))
    for row in frame.lz_rows + frame.lx_rows:
        w = pauli.weight_packed(row, frame.n)
        assert w == max(pauli.weight_packed(row ^ v, frame.n) for v in coset)


def test_canonicalize_refuses_oversized_frames():
    frame = canonical_frame(25, 1)
    with pytest.raises(ValueError):
        canonicalize_logicals(frame)


def test_type1_pairing_compensation():
    frame = canonical_frame(4, 1)
    g0, h0 = frame.g_rows[0], frame.h_rows[0]
    apply_type(frame, 1, 1, 0)
    assert frame.h_rows[1] != h0
    assert pauli.sp_packed(frame.g_rows[0], frame.h_rows[1], 4) == 0
    assert pauli.sp_packed(frame.g_rows[0], frame.h_rows[0], 4) == 1
    assert validate_frame(frame) == []


def test_type2_is_an_involution():
    frame = _bch_frame()
    snapshot = frame.copy()
    apply_type(frame, 2, 0, 3)
    apply_type(frame, 2, 0, 3)
    assert frame.all_rows() == snapshot.all_rows()


def test_apply_type_index_errors():
    frame = canonical_frame(4, 1)
    with pytest.raises(ValueError):
        apply_type(frame, 1, 0, 0)
    with pytest.raises(ValueError):
        apply_type(frame, 3, 0, 1)
    with pytest.raises(ValueError):
        apply_type(frame, 5, 0, 0)
    with pytest.raises(ValueError):
        apply_type(frame, 1, 3, 0)


def _random_ops(rng: random.Random, r: int, k: int, count: int):
    ops = []
    for _ in range(count):
        op_type = rng.choice((1, 2, 3, 4)) if k else rng.choice((1, 2))
        if op_type in (1, 2):
            l, m = rng.sample(range(r), 2)
        else:
            l, m = rng.randrange(r), rng.randrange(k)
        ops.append((op_type, l, m))
    return ops


@given(st.integers(0, 2**32 - 1), st.integers(2, 7), st.integers(0, 2))
def test_random_operator_sequences_preserve_validity(seed, n, k):
    if k >= n:
        k = n - 1
    rng = random.Random(seed)
    frame = canonical_frame(n, k)
    g_space = _g_space(frame)
    for op_type, l, m in _random_ops(rng, frame.r, frame.k, 25):
        apply_type(frame, op_type, l, m)
    assert validate_frame(frame) == []
    assert _g_space(frame) == g_space


def test_type2_never_changes_induced_distance():
    frame = _bch_frame()
    t = (0, 1)
    base_d, base_enum = code.min_distance(*induced_code(frame, t))
    rng = random.Random(11)
    for _ in range(20):
        l, m = rng.sample(range(frame.r), 2)
        apply_type(frame, 2, l, m)
        d, enum = code.min_distance(*induced_code(frame, t))
        assert (d, enum) == (base_d, base_enum)


def test_off_pattern_ops_leave_induced_code_alone():
    t = (0, 1)
    rng = random.Random(23)
    frame = _bch_frame()
    base_d, base_enum = code.min_distance(*induced_code(frame, t))
    for _ in range(60):
        op_type = rng.choice((1, 3, 4))
        l = rng.choice([j for j in range(frame.r) if j not in t])
        if op_type == 1:
            m = rng.choice([j for j in range(frame.r) if j != l])
        else:
            m = rng.randrange(frame.k)
        apply_type(frame, op_type, l, m)
        d, enum = code.min_distance(*induced_code(frame, t))
        assert (d, enum) == (base_d, base_enum), (op_type, l, m)


def test_selection_identity_leaves_frame_alone():
    frame = _bch_frame()
    snapshot = frame.copy()
    sel = SelectionParams(BitMatrix.zeros(2, 1), BitMatrix.zeros(2, 1))
    apply_selection(frame, (0, 1), sel)
    assert frame.all_rows() == snapshot.all_rows()


def test_selection_on_bitflip_frame_reaches_distance_five():
    frame = frame_from_code(entries()["bitflip_5_1_1"].matrix)
    sel = SelectionParams(
        BitMatrix.from_rows([0, 0, 0, 0], 1), BitMatrix.from_rows([1, 0, 1, 0], 1)
    )
    apply_selection(frame, (0, 1, 2, 3), sel)
    assert validate_frame(frame) == []
    d, _ = code.min_distance(*induced_code(frame, (0, 1, 2, 3)))
    assert d == 5


def test_selection_dimension_mismatches_raise():
    frame = _bch_frame()
    sel = SelectionParams(BitMatrix.zeros(2, 1), BitMatrix.zeros(2, 1))
    with pytest.raises(ValueError):
        apply_selection(frame, (0,), sel)
    wide = SelectionParams(BitMatrix.zeros(2, 3), BitMatrix.zeros(2, 3))
    with pytest.raises(ValueError):
        apply_selection(frame, (0, 1), wide)


def test_partner_identity_choice_leaves_frame_alone():
    frame = _bch_frame()
    snapshot = frame.copy()
    m_v = BitMatrix.from_rows([1, 2], frame.r)
    apply_partner_choice(frame, (0, 1), PartnerSubspace(m_v))
    assert frame.all_rows() == snapshot.all_rows()


def test_partner_choice_installs_requested_combinations():
    frame = _bch_frame()
    original_h = list(frame.h_rows)
    g_space = _g_space(frame)
    m_v = BitMatrix.from_rows([0b101, 0b011], frame.r)
    apply_partner_choice(frame, (0, 1), PartnerSubspace(m_v))
    assert frame.h_rows[0] == original_h[0] ^ original_h[2]
    assert frame.h_rows[1] == original_h[0] ^ original_h[1]
    assert validate_frame(frame) == []
    assert _g_space(frame) == g_space


def test_partner_choice_rejects_rank_deficiency():
    with pytest.raises(ValueError):
        PartnerSubspace(BitMatrix.from_rows([0b11, 0b11], 6))


def test_induced_code_empty_pattern_is_the_standard_code():
    h = entries()["bch_7_1_3"].matrix
    frame = frame_from_code(h)
    chk, lg = induced_code(frame, ())
    assert chk.mat == h.mat
    assert chk.c == 0
    assert lg.k == 1


def test_every_single_slot_pattern_keeps_bch_distance():
    frame = _bch_frame()
    for slot in range(frame.r):
        chk, lg = induced_code(frame, (slot,))
        assert chk.c == 1
        d, _ = code.min_distance(chk, lg)
        assert d == 3


def test_check_ebit_pattern_rejections():
    assert check_ebit_pattern((0, 2, 5), 6) == (0, 2, 5)
    with pytest.raises(ValueError):
        check_ebit_pattern((2, 1), 6)
    with pytest.raises(ValueError):
        check_ebit_pattern((0, 6), 6)
    with pytest.raises(ValueError):
        check_ebit_pattern((1, 1), 6)


def test_conjugation_by_weight_preserving_gates_keeps_parameters():
    frame = _bch_frame()
    circ = Circuit(7, (hadamard(0), phase(3), swap(1, 5), hadamard(6)))
    moved = conjugate_frame(circ, frame)
    assert validate_frame(moved) == []
    t = (0, 1)
    d_before, _ = code.min_distance(*induced_code(frame, t))
    d_after, _ = code.min_distance(*induced_code(moved, t))
    assert d_after == d_before


def test_count_N_known_values():
    assert count_N(4, 2) == 35
    assert count_N(6, 2) == 651
    assert count_N(6, 6) == 1
    assert count_N(5, 0) == 1
    assert count_N(5, 1) == 31
    with pytest.raises(ValueError):
        count_N(3, 4)


@given(st.integers(0, 12).flatmap(lambda r: st.tuples(st.just(r), st.integers(0, r))))
def test_count_N_symmetry(rc):
    r, c = rc
    assert count_N(r, c) == count_N(r, r - c)


def test_enumerate_small_space_exactly():
    mats = [p.m_v.to_strings() for p in enumerate_partner_subspaces(2, 1)]
    assert sorted(mats) == [["01"], ["10"], ["11"]]


def test_enumerate_matches_count_and_unrank():
    for r, c in ((4, 2), (5, 3), (6, 1), (3, 3)):
        listed = list(enumerate_partner_subspaces(r, c))
        assert len(listed) == count_N(r, c)
        assert len({p.m_v for p in listed}) == len(listed)
        for idx in (0, len(listed) // 2, len(listed) - 1):
            assert unrank_partner_subspace(r, c, idx) == listed[idx]
        for p in listed:
            reduced, pivots = gf2.rref(p.m_v)
            assert reduced == p.m_v and len(pivots) == c


def test_unrank_out_of_range():
    with pytest.raises(ValueError):
        unrank_partner_subspace(4, 2, 35)
