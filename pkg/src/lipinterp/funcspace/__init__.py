"""Step functions, piecewise-linear functions and the interpolation machinery
for the couple (L1, Linf) on [0, 1] and (l1, linf) on the integers."""

from .families import IntervalFamily, InterpParams, Sequence
from .io import from_json, to_csv, to_json
from .norms import (
    decreasing_rearrangement,
    distribution,
    interp_norm,
    k_functional,
    lorentz_quasinorm,
    norm,
)
from .piecewise import PiecewiseLinear, cumulative_integral, pl_eval, pl_integral, pl_sup
from .step import StepFunction, refine_many

__all__ = [
    "IntervalFamily",
    "InterpParams",
    "PiecewiseLinear",
    "Sequence",
    "StepFunction",
    "cumulative_integral",
    "decreasing_rearrangement",
    "distribution",
    "from_json",
    "interp_norm",
    "k_functional",
    "lorentz_quasinorm",
    "norm",
    "pl_eval",
    "pl_integral",
    "pl_sup",
    "refine_many",
    "to_csv",
    "to_json",
]
