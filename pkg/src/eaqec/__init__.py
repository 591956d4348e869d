"""Entanglement-assisted quantum error-correcting codes over GF(2).

The package works with simplified check matrices: each stabilizer
generator is a 2n-bit row (X half then Z half) and the required ebit
count is read off the symplectic Gram matrix.  On top of that sit exact
distance and degeneracy reports, exhaustive and randomized optimization
of the encoding over ebit-assisted extensions, circulant seed scans, and
Clifford encoding-circuit synthesis.
"""

from .catalog import (
    CatalogEntry,
    CheckMatrixFormatError,
    entries as catalog_entries,
    css_double,
    dump_check_matrix,
    load_check_matrix,
    parse_check_matrix,
    repetition_eaqec,
    report_json,
)
from .circuit import Circuit, Gate, parse_circuit, serialize_circuit, synthesize_encoding
from .circulant import CirculantSeed, ScanRecord, circulant_matrix, scan
from .code import (
    CodeParams,
    CodeReport,
    LogicalMatrix,
    SimplifiedCheckMatrix,
    WeightEnumerator,
    degeneracy_check,
    ebit_count,
    min_distance,
    report,
    singleton_bound,
    validate,
)
from .frames import SymplecticFrame, count_N, frame_from_code
from .gf2 import BitMatrix, BitVector
from .search import (
    OptimizationResult,
    SearchCostExceeded,
    SearchSpec,
    exhaustive_optimize,
    random_search,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CatalogEntry",
    "CheckMatrixFormatError",
    "Circuit",
    "CirculantSeed",
    "CodeParams",
    "CodeReport",
    "Gate",
    "LogicalMatrix",
    "OptimizationResult",
    "ScanRecord",
    "SearchCostExceeded",
    "SearchSpec",
    "SimplifiedCheckMatrix",
    "SymplecticFrame",
    "WeightEnumerator",
    "catalog_entries",
    "circulant_matrix",
    "count_N",
    "css_double",
    "degeneracy_check",
    "dump_check_matrix",
    "ebit_count",
    "exhaustive_optimize",
    "frame_from_code",
    "load_check_matrix",
    "min_distance",
    "parse_check_matrix",
    "parse_circuit",
    "random_search",
    "repetition_eaqec",
    "report",
    "report_json",
    "scan",
    "serialize_circuit",
    "singleton_bound",
    "synthesize_encoding",
    "validate",
]
