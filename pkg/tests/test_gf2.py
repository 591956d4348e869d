from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaqec import gf2
from eaqec.gf2 import BitMatrix, BitVector


def _matrices(max_rows: int = 6, max_cols: int = 8):
    return st.integers(1, max_cols).flatmap(
        lambda cols: st.builds(
            BitMatrix.from_rows,
            st.lists(st.integers(0, (1 << cols) - 1), min_size=0, max_size=max_rows),
            st.just(cols),
        )
    )


def test_bitvector_string_round_trip():
    v = BitVector.from01("10110")
    assert v.to01() == "10110"
    assert v[0] == 1 and v[1] == 0 and v[2] == 1
    assert v.popcount() == 3
    assert not v.is_zero()
    assert BitVector.from01("000").is_zero()


def test_bitvector_xor_or():
    a = BitVector.from01("1100")
    b = BitVector.from01("1010")
    assert (a ^ b).to01() == "0110"
    assert (a | b).to01() == "1110"


def test_bitvector_rejects_stray_bits():
    with pytest.raises(ValueError):
        BitVector(3, 0b1000)


def test_bitmatrix_strings_round_trip():
    rows = ["1011", "0001", "1111"]
    m = BitMatrix.from_strings(rows)
    assert m.to_strings() == rows
    assert m.rows == 3 and m.cols == 4
    assert m.get(0, 0) == 1 and m.get(1, 0) == 0 and m.get(1, 3) == 1


def test_bitmatrix_transpose_involution():
    m = BitMatrix.from_strings(["110", "011"])
    t = m.transpose()
    assert t.to_strings() == ["10", "11", "01"]
    assert t.transpose() == m


def test_bitmatrix_identity_and_zeros():
    assert BitMatrix.identity(3).to_strings() == ["100", "010", "001"]
    assert BitMatrix.zeros(2, 4).is_zero()


def test_matmul_identity_and_known_product():
    m = BitMatrix.from_strings(["110", "011"])
    assert gf2.matmul(BitMatrix.identity(2), m) == m
    # (1,1,0)*cols + (0,1,1)*cols over the 3x2 all-ones-ish matrix.
    b = BitMatrix.from_strings(["10", "11", "01"])
    assert gf2.matmul(m, b).to_strings() == ["01", "10"]


def test_matvec_matches_dot():
    m = BitMatrix.from_strings(["1101", "0110"])
    v = 0b1011
    result = gf2.matvec(m, v)
    for i, bits in enumerate(m.row_data):
        assert (result >> i & 1) == gf2.dot(bits, v)


def test_rank_known_values():
    assert gf2.rank(BitMatrix.identity(5)) == 5
    assert gf2.rank(BitMatrix.zeros(3, 4)) == 0
    assert gf2.rank(BitMatrix.from_strings(["110", "011", "101"])) == 2


def test_rref_reports_pivots_and_is_idempotent():
    m = BitMatrix.from_strings(["1101", "0111", "1010"])
    reduced, pivots = gf2.rref(m)
    assert len(pivots) == gf2.rank(m)
    assert list(pivots) == sorted(pivots)
    again, pivots2 = gf2.rref(reduced)
    assert again == reduced and pivots2 == pivots
    # Each pivot column holds a single one, in the pivot row.
    for i, p in enumerate(pivots):
        col = [reduced.get(j, p) for j in range(reduced.rows)]
        assert col == [1 if j == i else 0 for j in range(reduced.rows)]


def test_kernel_annihilates_matrix():
    m = BitMatrix.from_strings(["1100", "0110"])
    ker = gf2.kernel_basis(m)
    assert ker.rows == m.cols - gf2.rank(m)
    for v in ker.row_data:
        assert gf2.matvec(m, v) == 0


def test_solve_and_unsolvable():
    m = BitMatrix.from_strings(["110", "011"])
    rhs = 0b11
    x = gf2.solve(m, rhs)
    assert x is not None and gf2.matvec(m, x) == rhs
    # (1,1,0) and (1,1,0) stacked cannot produce differing entries.
    dep = BitMatrix.from_strings(["110", "110"])
    assert gf2.solve(dep, 0b01) is None


def test_inverse_round_trip():
    m = BitMatrix.from_strings(["110", "010", "111"])
    inv = gf2.inverse(m)
    assert gf2.matmul(m, inv) == BitMatrix.identity(3)
    assert gf2.matmul(inv, m) == BitMatrix.identity(3)


def test_inverse_rejects_singular():
    with pytest.raises(ValueError):
        gf2.inverse(BitMatrix.from_strings(["11", "11"]))


def test_in_rowspace():
    m = BitMatrix.from_strings(["1100", "0011"])
    assert gf2.in_rowspace(BitVector.from01("1111"), m)
    assert not gf2.in_rowspace(BitVector.from01("1000"), m)


def test_span_iter_counts_full_span():
    gens = [0b110, 0b011]
    seen = set(gf2.span_iter(gens))
    assert seen == {0b000, 0b110, 0b011, 0b101}


@given(_matrices())
def test_rank_invariant_under_transpose(m: BitMatrix):
    assert gf2.rank(m) == gf2.rank(m.transpose())


@given(_matrices())
def test_rank_plus_kernel_dimension(m: BitMatrix):
    assert gf2.rank(m) + gf2.kernel_basis(m).rows == m.cols


@given(_matrices())
def test_rref_preserves_rowspace(m: BitMatrix):
    reduced, _ = gf2.rref(m)
    for bits in m.row_data:
        assert gf2.in_rowspace(BitVector(m.cols, bits), reduced)
    for bits in reduced.row_data:
        if bits:
            assert gf2.in_rowspace(BitVector(m.cols, bits), m)


@given(_matrices(), st.integers(0, 255))
def test_solve_returns_actual_solutions(m: BitMatrix, seed: int):
    rhs = seed & ((1 << m.rows) - 1) if m.rows else 0
    x = gf2.solve(m, rhs)
    if x is not None:
        assert gf2.matvec(m, x) == rhs


@given(st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1))
def test_dot_is_bilinear(a: int, b: int, c: int):
    assert gf2.dot(a ^ b, c) == gf2.dot(a, c) ^ gf2.dot(b, c)
