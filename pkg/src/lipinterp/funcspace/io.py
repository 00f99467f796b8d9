"""JSON and CSV serialization of step and piecewise-linear functions."""

from __future__ import annotations

import io

import numpy as np

from .piecewise import PiecewiseLinear
from .step import StepFunction


def to_json(f) -> dict:
    """``{"kind", "breaks", "values"}``; floats survive a round trip exactly."""
    if isinstance(f, StepFunction):
        return {"kind": "step", "breaks": f.breaks.tolist(), "values": f.values.tolist()}
    if isinstance(f, PiecewiseLinear):
        return {"kind": "pl", "breaks": f.xs.tolist(), "values": f.ys.tolist()}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def from_json(d: dict):
    kind = d.get("kind", "step" if len(d["breaks"]) == len(d["values"]) + 1 else "pl")
    if kind == "step":
        return StepFunction(d["breaks"], d["values"])
    if kind == "pl":
        return PiecewiseLinear(d["breaks"], d["values"])
    raise ValueError(f"unknown function kind {kind!r}")


def to_csv(f, header: bool = True) -> str:
    """Two-column ``x,value`` text for plotting.

    Step functions emit both endpoints of every piece so the plot shows the jumps.
    """
    if isinstance(f, StepFunction):
        x = np.repeat(f.breaks, 2)[1:-1]
        y = np.repeat(f.values, 2)
    elif isinstance(f, PiecewiseLinear):
        x, y = f.xs, f.ys
    else:
        raise TypeError(f"cannot serialize {type(f).__name__}")
    buf = io.StringIO()
    if header:
        buf.write("x,value\n")
    for a, b in zip(x, y):
        buf.write(f"{float(a)!r},{float(b)!r}\n")
    return buf.getvalue()
