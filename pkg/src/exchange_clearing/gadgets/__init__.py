"""Hardness gadgets: source problems, reductions, and structural verification."""

from .reductions import build_size3_reduction, build_weighted3_reduction, build_weightedL_reduction
from .sources import (
    Lin2System,
    TripleSystem,
    generate_source,
    solve_3dm_exact,
    solve_lin2_exact,
)
from .verify import GadgetReport, verify_gadgets

__all__ = [
    "GadgetReport",
    "Lin2System",
    "TripleSystem",
    "build_size3_reduction",
    "build_weighted3_reduction",
    "build_weightedL_reduction",
    "generate_source",
    "solve_3dm_exact",
    "solve_lin2_exact",
    "verify_gadgets",
]
