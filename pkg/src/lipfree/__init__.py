"""Exact computations with Lipschitz functions and Lipschitz-free norms on
finite pointed metric spaces."""

__version__ = "0.1.0"

from .metric import (
    MetricSpace,
    StructureError,
    ValidationReport,
    essential_pairs,
    gamma,
    gen_example31,
    gen_example32,
    gen_l1_pairs,
    validate,
)
from .lipschitz import LipFunction, de_leeuw, eval_functional, extend_fltp, lip_norm, rs_split
from .free import FreeVector, average_molecules, free_norm, molecule, normalize
from .lp import LinearProgram, LPOutcome, max_slack, solve, verify_outcome

__all__ = [
    "MetricSpace",
    "StructureError",
    "ValidationReport",
    "essential_pairs",
    "gamma",
    "gen_example31",
    "gen_example32",
    "gen_l1_pairs",
    "validate",
    "LipFunction",
    "de_leeuw",
    "eval_functional",
    "extend_fltp",
    "lip_norm",
    "rs_split",
    "FreeVector",
    "average_molecules",
    "free_norm",
    "molecule",
    "normalize",
    "LinearProgram",
    "LPOutcome",
    "max_slack",
    "solve",
    "verify_outcome",
]
