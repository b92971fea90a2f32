"""Optimal binary prefix codes when some symbols have pinned lengths.

The library computes minimum expected length prefix codes for a weighted
symbol set in which a subset of symbols must receive code words of exact,
caller-chosen lengths.  It also exposes the real-valued entropy bounds
around the optimum, brute-force reference solvers for validation, and a
bit-level codec driven by the produced codebooks.
"""

from .bounds import (
    BoundsReport,
    constrained_entropy,
    entropy,
    ideal_lengths,
    witness_code_lengths,
)
from .codec import Bitstream, decode, encode, read_stream, write_stream
from .huffman import (
    CostTables,
    SegmentCode,
    huffman_cost,
    huffman_lengths,
    segment_cost_tables,
)
from .model import (
    FeasibilityReport,
    InfeasibleConstraintsError,
    SourceSpec,
    SourceSymbol,
    SpecError,
    check_feasibility,
    parse_spec,
    require_feasible,
    sorted_views,
)
from .oracle import (
    OracleBudgetError,
    OracleResult,
    contiguous_partition_solve,
    exhaustive_division_solve,
)
from .solver import (
    DpTables,
    SegmentSpan,
    Solution,
    assemble_codebook,
    h_cost,
    reconstruct_partition,
    run_dp,
    solve,
)
from .stubs import (
    Stub,
    StubSet,
    constrained_codewords,
    free_stub_levels,
    merge_constraints,
)

__version__ = "0.1.0"

__all__ = [
    "Bitstream",
    "BoundsReport",
    "CostTables",
    "DpTables",
    "FeasibilityReport",
    "InfeasibleConstraintsError",
    "OracleBudgetError",
    "OracleResult",
    "SegmentCode",
    "SegmentSpan",
    "Solution",
    "SourceSpec",
    "SourceSymbol",
    "SpecError",
    "Stub",
    "StubSet",
    "__version__",
    "assemble_codebook",
    "check_feasibility",
    "constrained_codewords",
    "constrained_entropy",
    "contiguous_partition_solve",
    "decode",
    "encode",
    "entropy",
    "exhaustive_division_solve",
    "free_stub_levels",
    "h_cost",
    "huffman_cost",
    "huffman_lengths",
    "ideal_lengths",
    "merge_constraints",
    "parse_spec",
    "read_stream",
    "reconstruct_partition",
    "require_feasible",
    "run_dp",
    "segment_cost_tables",
    "solve",
    "sorted_views",
    "witness_code_lengths",
    "write_stream",
]
