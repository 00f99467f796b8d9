"""Continuous piecewise-affine functions and their exact pointwise supremum."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .step import _frozen


@dataclass(frozen=True, eq=False)
class PiecewiseLinear:
    """Continuous piecewise-affine function through ``(xs[i], ys[i])``.

    Evaluation extends the function as a constant beyond both end nodes.
    Integrals and norms are taken over the node span ``[xs[0], xs[-1]]``.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        x = _frozen(self.xs)
        y = _frozen(self.ys)
        if x.ndim != 1 or x.shape != y.shape or len(x) == 0:
            raise ValueError("xs and ys must be non-empty 1-d arrays of equal length")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
            raise ValueError("nodes must be finite")
        if not np.all(np.diff(x) > 0):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "xs", x)
        object.__setattr__(self, "ys", y)

    @classmethod
    def zero(cls, a: float = 0.0, b: float = 1.0) -> "PiecewiseLinear":
        return cls([a, b], [0.0, 0.0])

    def __call__(self, x):
        return np.interp(x, self.xs, self.ys)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.xs[0]), float(self.xs[-1])

    def slopes(self) -> np.ndarray:
        return np.diff(self.ys) / np.diff(self.xs)

    def lipschitz(self) -> float:
        if len(self.xs) < 2:
            return 0.0
        return float(np.max(np.abs(self.slopes())))

    def sup(self) -> float:
        return float(np.max(self.ys))

    def with_nodes(self, extra) -> "PiecewiseLinear":
        x = np.union1d(self.xs, np.asarray(extra, dtype=float))
        return PiecewiseLinear(x, self(x))

    def restrict(self, a: float, b: float) -> "PiecewiseLinear":
        """Same function on ``[a, b]`` (nodes clipped, endpoints inserted)."""
        if not b > a:
            raise ValueError("need b > a")
        inner = self.xs[(self.xs > a) & (self.xs < b)]
        x = np.concatenate([[a], inner, [b]])
        return PiecewiseLinear(x, self(x))

    def _combine(self, other: "PiecewiseLinear", op) -> "PiecewiseLinear":
        x = np.union1d(self.xs, other.xs)
        return PiecewiseLinear(x, op(self(x), other(x)))

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __neg__(self):
        return PiecewiseLinear(self.xs, -self.ys)

    def __mul__(self, c: float):
        return PiecewiseLinear(self.xs, float(c) * self.ys)

    __rmul__ = __mul__

    def split_at_zeros(self) -> "PiecewiseLinear":
        """Insert a node wherever a segment crosses zero strictly inside."""
        y0, y1 = self.ys[:-1], self.ys[1:]
        cross = np.nonzero(y0 * y1 < 0)[0]
        if len(cross) == 0:
            return self
        x0, x1 = self.xs[cross], self.xs[cross + 1]
        xc = x0 + (x1 - x0) * (y0[cross] / (y0[cross] - y1[cross]))
        ok = (xc > x0) & (xc < x1)
        x = np.concatenate([self.xs, xc[ok]])
        y = np.concatenate([self.ys, np.zeros(ok.sum())])
        order = np.argsort(x, kind="stable")
        return PiecewiseLinear(x[order], y[order])

    def __abs__(self):
        g = self.split_at_zeros()
        return PiecewiseLinear(g.xs, np.abs(g.ys))

    def __repr__(self):
        return f"PiecewiseLinear(nodes={len(self.xs)}, span={self.span})"


def pl_eval(g: PiecewiseLinear, x):
    return g(x)


def pl_integral(g: PiecewiseLinear, a: float, b: float) -> float:
    """Exact integral of ``g`` over ``[a, b]`` (constant extension outside the nodes)."""
    if b < a:
        return -pl_integral(g, b, a)
    if b == a:
        return 0.0
    if np.isinf(b):
        if g.ys[-1] != 0:
            return float(np.sign(g.ys[-1])) * np.inf
        b = max(float(g.xs[-1]), a)
    if np.isinf(a):
        if g.ys[0] != 0:
            return -float(np.sign(g.ys[0])) * np.inf
        a = min(float(g.xs[0]), b)
    inner = g.xs[(g.xs > a) & (g.xs < b)]
    x = np.concatenate([[a], inner, [b]])
    y = g(x)
    return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(x)))


def cumulative_integral(g: PiecewiseLinear, t) -> np.ndarray:
    """``int_{xs[0]}^{t} g`` for an array of ``t``; exact (quadratic between nodes)."""
    t = np.asarray(t, dtype=float)
    seg = np.diff(g.xs)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (g.ys[1:] + g.ys[:-1]) * seg)])
    tc = np.clip(t, g.xs[0], g.xs[-1])
    i = np.clip(np.searchsorted(g.xs, tc, side="right") - 1, 0, max(len(g.xs) - 2, 0))
    if len(g.xs) == 1:
        return g.ys[0] * (t - g.xs[0])
    u = tc - g.xs[i]
    # u / seg <= 1 keeps tiny segments from overflowing a slope
    out = cum[i] + u * (g.ys[i] + 0.5 * (g.ys[i + 1] - g.ys[i]) * (u / seg[i]))
    # constant extension beyond the last node
    out = out + g.ys[-1] * np.maximum(t - g.xs[-1], 0.0)
    out = out - g.ys[0] * np.maximum(g.xs[0] - t, 0.0)
    return out


def _sup2(a: PiecewiseLinear, b: PiecewiseLinear) -> PiecewiseLinear:
    x = np.union1d(a.xs, b.xs)
    ya, yb = a(x), b(x)
    d = ya - yb
    i = np.nonzero(d[:-1] * d[1:] < 0)[0]
    if len(i):
        frac = d[i] / (d[i] - d[i + 1])
        xc = x[i] + frac * (x[i + 1] - x[i])
        ok = (xc > x[i]) & (xc < x[i + 1])
        i, frac, xc = i[ok], frac[ok], xc[ok]
        yc = np.maximum(ya[i] + frac * (ya[i + 1] - ya[i]), yb[i] + frac * (yb[i + 1] - yb[i]))
        y = np.maximum(ya, yb)
        x = np.concatenate([x, xc])
        y = np.concatenate([y, yc])
        order = np.argsort(x, kind="stable")
        return PiecewiseLinear(x[order], y[order])
    return PiecewiseLinear(x, np.maximum(ya, yb))


def pl_sup(fs: list[PiecewiseLinear]) -> PiecewiseLinear:
    """Exact pointwise maximum of finitely many piecewise-linear functions.

    Nodes are the union of the input nodes plus every point where two
    candidates of the running maximum cross.
    """
    if not fs:
        raise ValueError("pl_sup needs at least one function")
    return reduce(_sup2, fs)
