from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaqec import pauli
from eaqec.gf2 import BitMatrix
from eaqec.pauli import SymplecticVector, from_label, to_label


def _vectors(n: int):
    return st.integers(0, (1 << (2 * n)) - 1).map(
        lambda bits: SymplecticVector.from_packed(n, bits)
    )


def test_label_round_trip():
    for label in ("IXYZ", "XXXXX", "IIIII", "ZIY"):
        assert to_label(from_label(label)) == label


def test_label_maps_leftmost_char_to_qubit_zero():
    a = from_label("XII")
    assert a.x_part.to01() == "100"
    assert a.z_part.to01() == "000"
    b = from_label("IIY")
    assert b.x_part.to01() == "001"
    assert b.z_part.to01() == "001"


def test_label_rejects_unknown_characters():
    with pytest.raises(ValueError):
        from_label("XQZ")


def test_packed_round_trip():
    a = from_label("YZX")
    assert SymplecticVector.from_packed(3, a.packed()) == a


def test_known_commutation_pairs():
    x1 = from_label("XI")
    z1 = from_label("ZI")
    z2 = from_label("IZ")
    assert pauli.symplectic_product(x1, z1) == 1
    assert pauli.symplectic_product(x1, z2) == 0
    assert pauli.symplectic_product(x1, x1) == 0
    assert pauli.symplectic_product(from_label("XX"), from_label("ZZ")) == 0
    assert pauli.symplectic_product(from_label("Y"), from_label("X")) == 1


def test_weight_counts_non_identity_positions():
    assert pauli.weight(from_label("IXYZ")) == 3
    assert pauli.weight(from_label("IIII")) == 0
    assert pauli.weight_packed(from_label("YIY").packed(), 3) == 2


def test_packed_helpers_match_vector_forms():
    a, b = from_label("XZY"), from_label("YYI")
    assert pauli.sp_packed(a.packed(), b.packed(), 3) == pauli.symplectic_product(a, b)
    assert pauli.weight_packed(a.packed(), 3) == pauli.weight(a)


def test_lambda_gram_entries():
    rows = [from_label("XII").packed(), from_label("ZII").packed(), from_label("IZI").packed()]
    gram = pauli.lambda_gram(BitMatrix.from_rows(rows, 6))
    assert gram.get(0, 1) == 1 and gram.get(1, 0) == 1
    assert gram.get(0, 2) == 0 and gram.get(1, 2) == 0
    for i in range(3):
        assert gram.get(i, i) == 0


@given(_vectors(5), _vectors(5))
def test_symplectic_product_is_symmetric(a: SymplecticVector, b: SymplecticVector):
    assert pauli.symplectic_product(a, b) == pauli.symplectic_product(b, a)


@given(_vectors(5))
def test_symplectic_product_is_alternating(a: SymplecticVector):
    assert pauli.symplectic_product(a, a) == 0


@given(_vectors(4), _vectors(4), _vectors(4))
def test_symplectic_product_is_bilinear(a, b, c):
    assert pauli.symplectic_product(a ^ b, c) == (
        pauli.symplectic_product(a, c) ^ pauli.symplectic_product(b, c)
    )


@given(_vectors(6))
def test_weight_bounds(a: SymplecticVector):
    w = pauli.weight(a)
    assert 0 <= w <= a.n
    assert (w == 0) == a.is_zero()


@given(_vectors(4))
def test_label_round_trip_property(a: SymplecticVector):
    assert from_label(to_label(a)) == a
