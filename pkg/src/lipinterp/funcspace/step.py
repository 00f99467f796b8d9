"""Step functions on [0, inf) with finitely many constant pieces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Piecewise constant function.

    Piece ``i`` is the half-open interval ``[breaks[i], breaks[i+1])`` carrying
    ``values[i]``; the function is zero off ``[breaks[0], breaks[-1])``.
    The zero function is ``breaks=[0.]``, ``values=[]``.
    """

    breaks: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = _frozen(self.breaks)
        v = _frozen(self.values)
        if b.ndim != 1 or v.ndim != 1 or len(b) != len(v) + 1:
            raise ValueError("need len(breaks) == len(values) + 1")
        if not np.all(np.isfinite(b)) or not np.all(np.isfinite(v)):
            raise ValueError("breaks and values must be finite")
        if len(v) and not np.all(np.diff(b) > 0):
            raise ValueError("breaks must be strictly increasing")
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "values", v)

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls([0.0], [])

    @classmethod
    def indicator(cls, a: float, b: float, c: float = 1.0) -> "StepFunction":
        """``c`` times the indicator of ``[a, b)``."""
        return cls([a, b], [c])

    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple[float, float, float]]) -> "StepFunction":
        """Build from ``(a, b, value)`` triples; gaps between pieces become zero."""
        pieces = sorted((float(a), float(b), float(c)) for a, b, c in pieces if b > a)
        if not pieces:
            return cls.zero()
        breaks = [pieces[0][0]]
        values: list[float] = []
        for a, b, c in pieces:
            if a < breaks[-1]:
                raise ValueError("pieces overlap")
            if a > breaks[-1]:
                values.append(0.0)
                breaks.append(a)
            values.append(c)
            breaks.append(b)
        return cls(breaks, values)

    # -- basic queries ------------------------------------------------------

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.breaks)

    @property
    def npieces(self) -> int:
        return len(self.values)

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.breaks, x, side="right") - 1
        inside = (idx >= 0) & (idx < self.npieces)
        out = np.zeros_like(x)
        out[inside] = self.values[idx[inside]]
        return out

    def support_measure(self) -> float:
        return float(self.lengths[self.values != 0].sum())

    def integral(self) -> float:
        return float(np.dot(self.values, self.lengths))

    def support_bounds(self) -> tuple[float, float]:
        """Smallest ``[lo, hi)`` outside of which the function vanishes."""
        nz = np.nonzero(self.values)[0]
        if len(nz) == 0:
            return (0.0, 0.0)
        return (float(self.breaks[nz[0]]), float(self.breaks[nz[-1] + 1]))

    def simplify(self) -> "StepFunction":
        """Merge equal neighbours and strip zero pieces at both ends."""
        if self.is_zero():
            return StepFunction.zero()
        lo, hi = np.nonzero(self.values)[0][[0, -1]]
        b = self.breaks[lo : hi + 2]
        v = self.values[lo : hi + 1]
        keep = np.concatenate([[True], v[1:] != v[:-1]])
        return StepFunction(np.concatenate([b[:-1][keep], b[-1:]]), v[keep])

    # -- algebra ------------------------------------------------------------

    def refine(self, other: "StepFunction") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Common refinement: ``(breaks, self values, other values)``."""
        breaks = np.union1d(self.breaks, other.breaks)
        left = breaks[:-1]
        return breaks, self(left), other(left)

    def _combine(self, other: "StepFunction", op) -> "StepFunction":
        if len(self.breaks) == 1 and len(other.breaks) == 1:
            return StepFunction.zero()
        breaks, a, b = self.refine(other)
        return StepFunction(breaks, op(a, b))

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __neg__(self):
        return StepFunction(self.breaks, -self.values)

    def __mul__(self, c: float):
        return StepFunction(self.breaks, float(c) * self.values)

    __rmul__ = __mul__

    def __abs__(self):
        return StepFunction(self.breaks, np.abs(self.values))

    def minimum(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, np.minimum)

    def maximum(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, np.maximum)

    def pointwise_le(self, other: "StepFunction", atol: float = 0.0) -> bool:
        _, a, b = self.refine(other)
        return bool(np.all(a <= b + atol))

    def __repr__(self):
        return f"StepFunction(npieces={self.npieces}, support={self.support_bounds()})"


def refine_many(fs: list[StepFunction]) -> tuple[np.ndarray, np.ndarray]:
    """Common refinement of several step functions; returns breaks and a value matrix."""
    breaks = fs[0].breaks
    for f in fs[1:]:
        breaks = np.union1d(breaks, f.breaks)
    left = breaks[:-1]
    return breaks, np.vstack([f(left) for f in fs])
