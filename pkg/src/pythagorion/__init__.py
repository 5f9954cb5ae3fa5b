"""Exact Pythagorean scales, continued fractions of log2(3) and the 2-step property."""

from .exact_arith import Monomial, cents, compare, format_cents, octave_exponent
from .contfrac import (
    ContinuedFraction,
    Convergent,
    SemiConvergent,
    cf_log2_3,
    convergents,
    is_semiconvergent_denominator,
    semiconvergents,
)
from .scale import PythagoreanScale, build_scale, step_sequence
from .analysis import (
    ScaleType,
    StructureError,
    block_boundaries_check,
    decompose_blocks,
    delete_to,
    deleted_note_positions,
    step_basis,
    step_profile,
    three_step_witness,
    verify_main_theorem,
)

__all__ = [
    "Monomial", "cents", "compare", "format_cents", "octave_exponent",
    "ContinuedFraction", "Convergent", "SemiConvergent", "cf_log2_3", "convergents",
    "is_semiconvergent_denominator", "semiconvergents",
    "PythagoreanScale", "build_scale", "step_sequence",
    "ScaleType", "StructureError", "block_boundaries_check", "decompose_blocks", "delete_to",
    "deleted_note_positions", "step_basis", "step_profile", "three_step_witness", "verify_main_theorem",
]

__version__ = "0.1.0"
