"""Built-in codes, CSS-style constructions, and the file formats.

The catalog carries two kinds of entries: matrices reproduced digit for
digit from their published displays, and literature-standard constructions
(Gottesman's [[8,3,3]] generators, the CSS code on the [15,11] Hamming
parity check, the binary image of the quaternary quadratic-residue
[[13,1,5]] code) whose exact generator choice is conventional.  The
``provenance`` field records which is which.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from . import annotations, gf2
from .circulant import CirculantSeed, circulant_matrix
from .code import CodeReport, LogicalMatrix, SimplifiedCheckMatrix
from .gf2 import BitMatrix


class CheckMatrixFormatError(ValueError):
    """Parse failure in the text format, with the offending position."""


@dataclass(frozen=True)
class CatalogEntry:
    """One named code with its documented parameters.

    ``params`` is the documented ``(n, k, c, d)``; tests recompute and
    compare.  ``d_std`` maps an ebit count to the best distance of a
    standard ``[[n+c, k]]`` code, where that reference data exists.
    """

    name: str
    matrix: SimplifiedCheckMatrix
    provenance: str
    note: str
    params: tuple[int, int, int, int]
    logical: LogicalMatrix | None = None
    d_std: Mapping[int, str] | None = None

    def __post_init__(self) -> None:
        if self.provenance not in ("printed", "literature"):
            raise ValueError(f"unknown provenance {self.provenance!r}")


def repetition_parity(n: int) -> BitMatrix:
    """The ``(n-1) x n`` consecutive-pair parity check of the length-n
    repetition code."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return BitMatrix.from_rows([0b11 << i for i in range(n - 1)], n)


def css_double(parity: BitMatrix) -> SimplifiedCheckMatrix:
    """Stacks ``[O | H]`` over ``[H | O]`` for a classical parity check H.

    The result has ``c = rank(H H^T)`` ebits and parameters
    ``[[n, 2k + c - n, d; c]]`` where ``[n, k, d]`` is the classical code.
    """
    n = parity.cols
    if gf2.rank(parity) != parity.rows:
        raise ValueError("parity-check rows must be independent")
    rows = [bits << n for bits in parity.row_data]
    rows += list(parity.row_data)
    return SimplifiedCheckMatrix(n, BitMatrix.from_rows(rows, 2 * n))


def repetition_eaqec(n: int) -> SimplifiedCheckMatrix:
    """The ``[[n, 1, n; n-1]]`` family on an odd number of qubits.

    Doubling the repetition parity check gives ``n - 1`` symplectic pairs
    exactly when n is odd; even n leaves the pair Gram matrix singular,
    which breaks the construction, so it is rejected.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"the construction needs odd n >= 3, got {n}")
    return css_double(repetition_parity(n))


def hamming_parity() -> BitMatrix:
    """The ``4 x 15`` parity check whose column j is j in binary."""
    rows = [
        sum(((j >> i) & 1) << (j - 1) for j in range(1, 16)) for i in range(4)
    ]
    return BitMatrix.from_rows(rows, 15)


_BITFLIP_5_1_1 = [
    "00000|11000",
    "00000|01100",
    "00000|00110",
    "00000|00011",
]

_EXAMPLE1_5_1_5_4 = _BITFLIP_5_1_1 + [
    "01111|00000",
    "11000|00000",
    "00011|00000",
    "11110|00000",
]

_EXAMPLE1_LOGICAL = ["11111|00000", "00000|11111"]

_BCH_7_1_3 = [
    "0000000|1001011",
    "0000000|0101110",
    "0000000|0010111",
    "1001011|0000000",
    "1100101|0000000",
    "1011100|0000000",
]

_EAQEC_7_1_5_2 = [
    "0000000|1001011",
    "0000000|1100101",
    "0000000|0010111",
    "1001011|0000000",
    "1100101|0000000",
    "0010111|0000000",
    "1000011|0100011",
    "1101000|0010010",
]

_EAQEC_7_1_5_2_LOGICAL = ["1001011|0100011", "1101000|1001011"]

_SHOR_9_1_3 = [
    "000000000|110000000",
    "000000000|011000000",
    "000000000|000110000",
    "000000000|000011000",
    "000000000|000000110",
    "000000000|000000011",
    "111111000|000000000",
    "000111111|000000000",
]

_GOTTESMAN_8_3_3 = [
    "11111111|00000000",
    "00000000|11111111",
    "01011010|00001111",
    "01010101|00110011",
    "01101001|01010101",
]

# Binary image of the [13,7] quaternary quadratic-residue code's dual,
# generator (x+1)(1 + wx + (w+1)x^3 + wx^5 + x^6): rows alternate a cyclic
# shift of the generator with its multiple by w.
_QR_13_1_5 = [
    "0111111000000|1101101100000",
    "1010010100000|0111111000000",
    "0011111100000|0110110110000",
    "0101001010000|0011111100000",
    "0001111110000|0011011011000",
    "0010100101000|0001111110000",
    "0000111111000|0001101101100",
    "0001010010100|0000111111000",
    "0000011111100|0000110110110",
    "0000101001010|0000011111100",
    "0000001111110|0000011011011",
    "0000010100101|0000001111110",
]


def _logical(rows: Sequence[str]) -> LogicalMatrix:
    cleaned = [r.replace("|", "") for r in rows]
    mat = BitMatrix.from_strings(cleaned)
    return LogicalMatrix(mat.cols // 2, mat)


@lru_cache(maxsize=1)
def entries() -> dict[str, CatalogEntry]:
    """All built-in codes, keyed by name, in display order."""
    entries = [
        CatalogEntry(
            name="bitflip_5_1_1",
            matrix=SimplifiedCheckMatrix.from_strings(_BITFLIP_5_1_1),
            provenance="printed",
            note="5-qubit bit-flip code; distance 1 against phase errors",
            params=(5, 1, 0, 1),
        ),
        CatalogEntry(
            name="example1_5_1_5_4",
            matrix=SimplifiedCheckMatrix.from_strings(
                _EXAMPLE1_5_1_5_4, pairs=[(0, 4), (1, 5), (2, 6), (3, 7)]
            ),
            provenance="printed",
            note="bit-flip code plus four symplectic partners; saturates "
            "the singleton bound",
            params=(5, 1, 4, 5),
            logical=_logical(_EXAMPLE1_LOGICAL),
        ),
        CatalogEntry(
            name="bch_7_1_3",
            matrix=SimplifiedCheckMatrix.from_strings(_BCH_7_1_3),
            provenance="printed",
            note="standard [[7,1,3]] BCH code; base of the c=1..6 "
            "optimization table",
            params=(7, 1, 0, 3),
            d_std=annotations.d_std_table("bch_7_1_3"),
        ),
        CatalogEntry(
            name="eaqec_7_1_5_2",
            matrix=SimplifiedCheckMatrix.from_strings(
                _EAQEC_7_1_5_2, pairs=[(0, 6), (3, 7)]
            ),
            provenance="printed",
            note="optimized two-ebit code over the [[7,1,3]] BCH code; "
            "degenerate, saturates the singleton bound",
            params=(7, 1, 2, 5),
            logical=_logical(_EAQEC_7_1_5_2_LOGICAL),
        ),
        CatalogEntry(
            name="shor_9_1_3",
            matrix=SimplifiedCheckMatrix.from_strings(_SHOR_9_1_3),
            provenance="printed",
            note="Shor's nine-qubit code; base of the c=2..8 optimization "
            "table",
            params=(9, 1, 0, 3),
            d_std=annotations.d_std_table("shor_9_1_3"),
        ),
        CatalogEntry(
            name="circulant_6_1_4_1",
            matrix=SimplifiedCheckMatrix(
                6, circulant_matrix(CirculantSeed.from_string("001110101110", 6))
            ),
            provenance="printed",
            note="six cyclic shifts of seed 001110101110; documented as "
            "[[6,1,4;1]] but its rows commute, giving the [[6,0,4]] state "
            "(see the distance report)",
            params=(6, 0, 0, 4),
        ),
        CatalogEntry(
            name="gottesman_8_3_3",
            matrix=SimplifiedCheckMatrix.from_strings(_GOTTESMAN_8_3_3),
            provenance="literature",
            note="Gottesman's [[8,3,3]] code, standard generator set",
            params=(8, 3, 0, 3),
            d_std=annotations.d_std_table("gottesman_8_3_3"),
        ),
        CatalogEntry(
            name="bch_15_7_3",
            matrix=css_double(hamming_parity()),
            provenance="literature",
            note="CSS doubling of the [15,11] Hamming parity check",
            params=(15, 7, 0, 3),
        ),
        CatalogEntry(
            name="qr_13_1_5",
            matrix=SimplifiedCheckMatrix.from_strings(_QR_13_1_5),
            provenance="literature",
            note="binary image of the quaternary quadratic-residue "
            "[[13,1,5]] code, cyclic generator presentation",
            params=(13, 1, 0, 5),
            d_std=annotations.d_std_table("qr_13_1_5"),
        ),
    ]
    return {e.name: e for e in entries}


def get(name: str) -> CatalogEntry:
    table = entries()
    if name not in table:
        known = ", ".join(table)
        raise KeyError(f"no catalog entry {name!r}; known: {known}")
    return table[name]


_PAIR_RE = re.compile(r"\((\d+)\s*,\s*(\d+)\)")


def parse_check_matrix(text: str) -> SimplifiedCheckMatrix:
    """Reads the text format; failures name the line and column.

    The format is a header line ``n=<int>``, an optional
    ``pairs=(i,j),(i,j),...`` line, then one row per line as
    ``<x-bits>|<z-bits>``; ``#`` starts a comment and blank lines are
    ignored.
    """
    n: int | None = None
    pairs: list[tuple[int, int]] | None = None
    rows: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if n is not None:
                raise CheckMatrixFormatError(f"line {lineno}: duplicate n= header")
            try:
                n = int(line[2:])
            except ValueError:
                raise CheckMatrixFormatError(
                    f"line {lineno}: n= needs an integer, got {line[2:]!r}"
                ) from None
            if n < 1:
                raise CheckMatrixFormatError(f"line {lineno}: n must be positive")
            continue
        if line.startswith("pairs="):
            if rows:
                raise CheckMatrixFormatError(
                    f"line {lineno}: pairs= must precede the rows"
                )
            body = line[len("pairs="):]
            found = _PAIR_RE.findall(body)
            if not found or _PAIR_RE.sub("", body).strip(" ,"):
                raise CheckMatrixFormatError(
                    f"line {lineno}: pairs= needs entries like (0,4),(1,5)"
                )
            pairs = [(int(a), int(b)) for a, b in found]
            continue
        if n is None:
            raise CheckMatrixFormatError(
                f"line {lineno}: n=<int> header must come before any row"
            )
        stripped = raw.split("#", 1)[0].rstrip()
        body = stripped.strip()
        offset = stripped.index(body) if body else 0
        bits = 0
        pos = 0
        for col, ch in enumerate(body, start=offset + 1):
            if ch == "|":
                if pos != n:
                    raise CheckMatrixFormatError(
                        f"line {lineno}, column {col}: '|' after {pos} bits, "
                        f"expected {n}"
                    )
                continue
            if ch not in "01":
                raise CheckMatrixFormatError(
                    f"line {lineno}, column {col}: expected '0', '1', or '|', "
                    f"got {ch!r}"
                )
            if pos >= 2 * n:
                raise CheckMatrixFormatError(
                    f"line {lineno}, column {col}: row longer than 2n = {2 * n}"
                )
            if ch == "1":
                bits |= 1 << pos
            pos += 1
        if pos != 2 * n:
            raise CheckMatrixFormatError(
                f"line {lineno}: row has {pos} bits, expected {2 * n}"
            )
        rows.append(bits)
    if n is None:
        raise CheckMatrixFormatError("missing n=<int> header")
    if not rows:
        raise CheckMatrixFormatError("no matrix rows found")
    try:
        return SimplifiedCheckMatrix(
            n,
            BitMatrix.from_rows(rows, 2 * n),
            tuple(pairs) if pairs is not None else None,
        )
    except ValueError as exc:
        raise CheckMatrixFormatError(str(exc)) from None


def load_check_matrix(path: str) -> SimplifiedCheckMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_check_matrix(fh.read())


def dump_check_matrix(h: SimplifiedCheckMatrix) -> str:
    """Writes the text format; parse(dump(h)) reproduces h bit-exactly."""
    lines = [f"n={h.n}"]
    if h.pairs is not None:
        lines.append("pairs=" + ",".join(f"({i},{j})" for i, j in h.pairs))
    n = h.n
    for bits in h.mat.row_data:
        x = "".join(str(bits >> j & 1) for j in range(n))
        z = "".join(str(bits >> (n + j) & 1) for j in range(n))
        lines.append(f"{x}|{z}")
    return "\n".join(lines) + "\n"


def report_json(rep: CodeReport) -> str:
    """The report as JSON with a fixed key order, for diffable output."""
    p = rep.params
    fields = [
        ("n", p.n),
        ("k", p.k),
        ("c", p.c),
        ("d", p.d),
        ("degenerate", p.degenerate),
        ("singleton_saturated", rep.singleton_saturated),
        ("weight_enumerator", list(rep.enumerator.coefficients)),
        ("elapsed_ms", round(rep.elapsed_ms, 3)),
    ]
    body = ",\n".join(f'  "{key}": {json.dumps(value)}' for key, value in fields)
    return "{\n" + body + "\n}"
