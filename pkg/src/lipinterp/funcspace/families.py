"""Interval families, sequences on the counting measure, interpolation parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .step import StepFunction


@dataclass(frozen=True)
class IntervalFamily:
    """Pairwise disjoint intervals ``I_1, I_2, ...`` of ``[0, 1]`` accumulating at 0.

    ``dyadic``: ``I_n = [2^-n, 2^-n+1)``, ``|I_n| = 2^-n``.
    ``geometric``: ``|I_n| = 2^-np``, laid out contiguously from the right,
    ``I_n = [a_{n+1}, a_n)`` with ``a_n = 2^-np / (1 - 2^-p)``, so that
    ``I_1`` ends at ``1/(2^p - 1)``.
    """

    kind: str = "dyadic"
    p: float | None = None

    def __post_init__(self):
        if self.kind not in ("dyadic", "geometric"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "geometric" and not (self.p is not None and self.p > 1):
            raise ValueError("geometric family needs p > 1")

    @classmethod
    def dyadic(cls) -> "IntervalFamily":
        return cls("dyadic")

    @classmethod
    def geometric(cls, p: float) -> "IntervalFamily":
        return cls("geometric", float(p))

    def _edge(self, n):
        n = np.asarray(n, dtype=float)
        if self.kind == "dyadic":
            return np.exp2(-(n - 1))
        return np.exp2(-n * self.p) / (1.0 - 2.0 ** -self.p)

    def interval(self, n: int) -> tuple[float, float]:
        if n < 1:
            raise ValueError("intervals are indexed from 1")
        return float(self._edge(n + 1)), float(self._edge(n))

    def measure(self, n: int) -> float:
        """Closed-form length of ``I_n``."""
        if self.kind == "dyadic":
            return 2.0 ** -n
        return 2.0 ** (-n * self.p)

    def edges(self, n_max: int) -> np.ndarray:
        """Increasing endpoints ``[left(I_nmax), ..., left(I_1), right(I_1)]``."""
        return self._edge(np.arange(n_max + 1, 0, -1))

    def total_measure(self) -> float:
        if self.kind == "dyadic":
            return 1.0
        return 1.0 / (2.0 ** self.p - 1.0)

    def weight(self, coeffs) -> StepFunction:
        """Step function ``sum_n coeffs[n-1] * chi_{I_n}``."""
        coeffs = np.asarray(coeffs, dtype=float)
        e = self.edges(len(coeffs))
        return StepFunction(e, coeffs[::-1])

    def indicator(self, n: int, c: float = 1.0) -> StepFunction:
        a, b = self.interval(n)
        return StepFunction.indicator(a, b, c)


@dataclass(frozen=True, eq=False)
class Sequence:
    """Finitely supported real sequence ``entries[0], entries[1], ...`` indexed from ``start``."""

    entries: np.ndarray
    start: int = 1

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 1:
            raise ValueError("entries must be 1-d")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_dict(cls, d: dict[int, float]) -> "Sequence":
        if not d:
            return cls(np.zeros(0))
        lo, hi = min(d), max(d)
        e = np.zeros(hi - lo + 1)
        for k, v in d.items():
            e[k - lo] = v
        return cls(e, lo)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.start + len(self.entries))

    def __getitem__(self, n: int) -> float:
        k = n - self.start
        return float(self.entries[k]) if 0 <= k < len(self.entries) else 0.0

    def _aligned(self, other: "Sequence"):
        lo = min(self.start, other.start)
        hi = max(self.start + len(self.entries), other.start + len(other.entries))
        a = np.zeros(hi - lo)
        b = np.zeros(hi - lo)
        a[self.start - lo : self.start - lo + len(self.entries)] = self.entries
        b[other.start - lo : other.start - lo + len(other.entries)] = other.entries
        return lo, a, b

    def __sub__(self, other: "Sequence") -> "Sequence":
        lo, a, b = self._aligned(other)
        return Sequence(a - b, lo)

    def __add__(self, other: "Sequence") -> "Sequence":
        lo, a, b = self._aligned(other)
        return Sequence(a + b, lo)

    def __mul__(self, c: float) -> "Sequence":
        return Sequence(float(c) * self.entries, self.start)

    __rmul__ = __mul__

    def __abs__(self):
        return Sequence(np.abs(self.entries), self.start)

    def is_zero(self) -> bool:
        return not np.any(self.entries)

    def to_step(self) -> StepFunction:
        """Embed in ``L(0, inf)``: entry ``n`` becomes the value on ``[n, n+1)``.

        Rearrangement-invariant quantities (norms, K-functional) are preserved.
        """
        if len(self.entries) == 0:
            return StepFunction.zero()
        b = np.arange(self.start, self.start + len(self.entries) + 1, dtype=float)
        return StepFunction(b, self.entries)

    def __repr__(self):
        return f"Sequence(start={self.start}, len={len(self.entries)})"


@dataclass(frozen=True)
class InterpParams:
    """Parameters of a Lions-Peetre space ``(A0, A1)_{theta, q}``.

    ``couple`` is ``"L1,Linf"`` or ``"Linf,L1"``. The matching Lorentz
    exponent is ``1/(1-theta)`` for the first order and ``1/theta`` for the second.
    """

    theta: float
    q: float
    couple: str = "Linf,L1"

    def __post_init__(self):
        if not 0 < self.theta < 1:
            raise ValueError("theta must lie in (0, 1)")
        if not (self.q >= 1):
            raise ValueError("q must lie in [1, inf]")
        if self.couple not in ("L1,Linf", "Linf,L1"):
            raise ValueError(f"unknown couple order {self.couple!r}")

    @property
    def p(self) -> float:
        if self.couple == "L1,Linf":
            return 1.0 / (1.0 - self.theta)
        return 1.0 / self.theta

    @classmethod
    def for_lorentz(cls, p: float, q: float, couple: str = "Linf,L1") -> "InterpParams":
        theta = 1.0 / p if couple == "Linf,L1" else 1.0 - 1.0 / p
        return cls(theta, q, couple)

