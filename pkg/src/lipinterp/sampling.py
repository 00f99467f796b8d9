"""Seeded random inputs for the sweeps and property tests."""

from __future__ import annotations

import numpy as np

from .funcspace import IntervalFamily, PiecewiseLinear, Sequence, StepFunction


def log_uniform(rng: np.random.Generator, lo: float = 1e-3, hi: float = 1e3, size=None):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=size))


VALUE_BITS = 20


def quantize(x, bits: int = VALUE_BITS):
    """Round to the grid ``2^-bits`` keeping nonzero entries nonzero.

    Values on this grid with magnitude below ``2^10``, multiplied by dyadic
    weights of at most 12 bits and summed a few at a time, stay exact in
    binary64, so averaging and min/max operators introduce no rounding.
    """
    x = np.asarray(x, dtype=float)
    q = np.round(x * 2.0**bits) / 2.0**bits
    tiny = np.sign(x) * 2.0**-bits
    return np.where((q == 0) & (x != 0), tiny, q)


def _values(rng, k, signed, p_zero):
    v = quantize(log_uniform(rng, size=k))
    if signed:
        v = v * rng.choice([-1.0, 1.0], size=k)
    v[rng.random(k) < p_zero] = 0.0
    return v


def random_step(
    rng: np.random.Generator,
    level: int = 12,
    max_pieces: int = 8,
    signed: bool = True,
    p_zero: float = 0.2,
) -> StepFunction:
    """Step function on ``[2^-level, 1)`` whose breaks lie on the dyadic grid of that level."""
    k = int(rng.integers(1, max_pieces + 1))
    grid = rng.choice(np.arange(1, 2**level + 1), size=k + 1, replace=False)
    breaks = np.sort(grid) / 2.0**level
    return StepFunction(breaks, _values(rng, k, signed, p_zero))


def random_family_step(
    rng: np.random.Generator,
    family: IntervalFamily,
    n_cells: int = 12,
    signed: bool = True,
    p_zero: float = 0.2,
    split: float = 0.5,
) -> StepFunction:
    """Step function adapted to ``I_1..I_{n_cells}``; some cells split in two, plus
    a random piece beyond the family when the family does not fill ``[0, 1]``."""
    pieces = []
    for n in range(1, n_cells + 1):
        a, b = family.interval(n)
        if rng.random() < split:
            m = a + (b - a) * int(rng.integers(1, 16)) / 16.0
            if a < m < b:
                c1, c2 = _values(rng, 2, signed, p_zero)
                pieces += [(a, m, c1), (m, b, c2)]
                continue
        pieces.append((a, b, _values(rng, 1, signed, p_zero)[0]))
    top = family.edges(1)[-1]
    if top < 1.0 and rng.random() < 0.5:
        pieces.append((top, 1.0, _values(rng, 1, signed, p_zero)[0]))
    return StepFunction.from_pieces(pieces)


def random_sequence(rng: np.random.Generator, max_len: int = 64, signed: bool = True, p_zero: float = 0.2) -> Sequence:
    k = int(rng.integers(1, max_len + 1))
    start = int(rng.integers(1, 9))
    return Sequence(_values(rng, k, signed, p_zero), start)


def random_pl(rng: np.random.Generator, max_nodes: int = 8, a: float = 0.0, b: float = 1.0) -> PiecewiseLinear:
    k = int(rng.integers(2, max_nodes + 1))
    inner = np.sort(rng.uniform(a, b, size=k - 2))
    xs = np.unique(np.concatenate([[a], inner, [b]]))
    return PiecewiseLinear(xs, rng.normal(size=len(xs)))


def random_weight(rng: np.random.Generator, level: int = 12, max_pieces: int = 8) -> StepFunction:
    """Nonnegative step function to use as the weight ``v``."""
    return abs(random_step(rng, level, max_pieces, signed=False, p_zero=0.3))


def scale_to(f, size: float, p: float):
    """Rescale ``f`` so that its ``L^p`` norm equals ``size``."""
    from .funcspace import norm

    n = norm(f, p)
    return f if n == 0 else f * (size / n)
