"""The elementary lattice operators and the counterexamples T1..T4.

All operators act on :class:`StepFunction` values (T4 on :class:`Sequence`)
and return new values; nothing is mutated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import log2
from typing import Callable

import numpy as np

from .funcspace import IntervalFamily, PiecewiseLinear, Sequence, StepFunction

DYADIC = IntervalFamily.dyadic()


# -- elementary operators ----------------------------------------------------


def lambda_v(f: StepFunction, v: StepFunction) -> StepFunction:
    """``min{|f|, v}`` pointwise."""
    if np.any(v.values < 0):
        raise ValueError("weight v must be nonnegative")
    breaks, a, b = f.refine(v)
    if len(breaks) == 1:
        return StepFunction.zero()
    return StepFunction(breaks, np.minimum(np.abs(a), b))


def m_v(f: StepFunction, v: StepFunction) -> StepFunction:
    """``max{|f|, v}`` pointwise (does not fix 0; used only for the pointwise inequality)."""
    breaks, a, b = f.refine(v)
    if len(breaks) == 1:
        return StepFunction.zero()
    return StepFunction(breaks, np.maximum(np.abs(a), b))


def m_tilde_v(f: StepFunction, v: StepFunction) -> StepFunction:
    """``max{|f|, v} - v``, i.e. ``max{|f| - v, 0}``."""
    if np.any(v.values < 0):
        raise ValueError("weight v must be nonnegative")
    breaks, a, b = f.refine(v)
    if len(breaks) == 1:
        return StepFunction.zero()
    return StepFunction(breaks, np.maximum(np.abs(a), b) - b)


def _required_n(family: IntervalFamily, x: float) -> int:
    n = 1
    while family.interval(n)[0] > x:
        n += 1
    return n


def cond_expectation(f: StepFunction, family: IntervalFamily = DYADIC, n_max: int = 64) -> StepFunction:
    """Average of ``f`` over each ``I_n``, ``n <= n_max``; zero off the intervals.

    Raises ``ValueError`` if ``f`` does not vanish on the part of the family
    beyond ``I_{n_max}`` (the averages there would be lost).
    """
    lo, hi = f.support_bounds()
    if f.is_zero():
        return family.weight(np.zeros(n_max))
    if lo < 0 or hi > 1:
        raise ValueError("f must be supported in [0, 1]")
    edges = family.edges(n_max)
    breaks = np.union1d(f.breaks, edges)
    left = breaks[:-1]
    vals = f(left)
    lens = np.diff(breaks)
    uncovered = (left < edges[0]) & (vals != 0)
    if np.any(uncovered):
        x = float(left[uncovered][0])
        need = _required_n(family, x) if x > 0 else None
        hint = f"; need n_max >= {need}" if need else "; f must vanish near 0"
        raise ValueError(f"n_max={n_max} does not cover the piece of f starting at {x!r}{hint}")
    inside = (left >= edges[0]) & (left < edges[-1])
    idx = np.searchsorted(edges, left[inside], side="right") - 1
    cell = np.diff(edges)
    # weights len/|I| are exactly 1 when one piece fills a cell
    w = lens[inside] / cell[idx]
    avg = np.bincount(idx, weights=vals[inside] * w, minlength=n_max)
    return StepFunction(edges, avg)


# -- weights -------------------------------------------------------------------


@lru_cache(maxsize=16)
def t1_weight(n_max: int = 64) -> StepFunction:
    n = np.arange(1, n_max + 1, dtype=float)
    return DYADIC.weight(np.exp2(n) / n**2)


@lru_cache(maxsize=16)
def t2_weight(n_max: int = 64) -> StepFunction:
    return DYADIC.weight(np.arange(1, n_max + 1, dtype=float))


def t4_weight(n):
    """``v(n) = 1/k`` for ``2^k <= n < 2^{k+1}``, ``k >= 1``; ``v(1) = 0``."""
    n = np.asarray(n)
    if np.any(n < 1):
        raise ValueError("sequence indices start at 1")
    k = np.floor(np.log2(n.astype(float))).astype(int)
    # guard float log2 at exact powers of two
    k = np.where(2.0 ** (k + 1) <= n, k + 1, k)
    k = np.where(2.0**k > n, k - 1, k)
    return np.where(k >= 1, 1.0 / np.maximum(k, 1), 0.0)


# -- counterexamples -------------------------------------------------------------


def t1(f: StepFunction, n_max: int = 64) -> StepFunction:
    """``min{|Qf|, v}`` with ``v = sum 2^n/n^2 chi_{I_n}`` on the dyadic family."""
    return lambda_v(cond_expectation(f, DYADIC, n_max), t1_weight(n_max))


def t2(f: StepFunction, n_max: int = 64) -> StepFunction:
    """``max{|Qf|, w} - w`` with ``w = sum n chi_{I_n}`` on the dyadic family."""
    return m_tilde_v(cond_expectation(f, DYADIC, n_max), t2_weight(n_max))


def t3(f: StepFunction, n_max: int = 64) -> StepFunction:
    return t2(t1(f, n_max), n_max)


def t4(alpha: Sequence) -> Sequence:
    """Entrywise ``min{|alpha_n|, v(n)}``."""
    if len(alpha.entries) == 0:
        return alpha
    return Sequence(np.minimum(np.abs(alpha.entries), t4_weight(alpha.indices)), alpha.start)


# -- witness families ------------------------------------------------------------


def psi_dyadic(N: int, p: float) -> StepFunction:
    """``2^{N/p} chi_{I_N}``: unit ``L^p`` norm on the dyadic family."""
    return DYADIC.indicator(N, 2.0 ** (N / p))


def psi_sequence(N: int, p: float) -> Sequence:
    """``2^{-N/p}`` on ``{2^N, ..., 2^{N+1} - 1}``: unit ``l^p`` norm."""
    return Sequence(np.full(2**N, 2.0 ** (-N / p)), 2**N)


# -- thresholds --------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdCertificate:
    """Result of an upward integer scan of ``gap(N) >= 0`` (or ``> 0``).

    ``value`` is the threshold in the sense of the defining statement. The
    inequality was observed on ``run`` consecutive integers ending at
    ``run_end``; ``increment_at_end >= 0`` together with a nondecreasing
    increment shows it holds for every larger ``N`` too.
    """

    name: str
    p: float
    value: int
    last_failure: int
    run_end: int
    run: int
    increment_at_end: float
    increments_nondecreasing: bool

    @property
    def certified(self) -> bool:
        return self.increment_at_end >= 0 and self.increments_nondecreasing

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["certified"] = self.certified
        return d


def _scan(name, p, gap, strict, offset, run=64, limit=100_000) -> ThresholdCertificate:
    last_fail, streak, N = 0, 0, 1
    while streak < run:
        if N > limit:
            raise RuntimeError(f"{name}: no run of {run} passes below N={limit}")
        g = gap(N)
        ok = g > 0 if strict else g >= 0
        if ok:
            streak += 1
        else:
            last_fail, streak = N, 0
        N += 1
    end = N - 1
    inc = [gap(k + 1) - gap(k) for k in range(end - run + 1, end + 1)]
    return ThresholdCertificate(
        name=name,
        p=float(p),
        value=last_fail + offset,
        last_failure=last_fail,
        run_end=end,
        run=run,
        increment_at_end=float(inc[-1]),
        increments_nondecreasing=bool(np.all(np.diff(inc) >= -1e-15)),
    )


def sigma_threshold(p: float) -> ThresholdCertificate:
    """Smallest ``sigma`` with ``2^{N/p} <= 2^N / N^2`` for all ``N >= sigma``."""
    return _scan("sigma", p, lambda N: N * (1 - 1 / p) - 2 * log2(N), strict=False, offset=1)


def tau_threshold(p: float) -> ThresholdCertificate:
    """Smallest ``tau`` with ``N <= 2^{(N-1)/p}`` for all ``N > tau``."""
    return _scan("tau", p, lambda N: (N - 1) / p - log2(N), strict=False, offset=0)


def nu_t4_threshold(p: float) -> ThresholdCertificate:
    """Smallest ``nu`` with ``1/N > 2^{-N/p}`` for all ``N > nu``."""
    return _scan("nu", p, lambda N: N / p - log2(N), strict=True, offset=0)


# -- handles and combinators ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorHandle:
    """A named operator together with the data it was built from."""

    name: str
    apply: Callable
    domain: str = "function"  # "function" (StepFunction) or "sequence"
    output: str = "step"  # "step", "pl" or "sequence"
    params: dict = field(default_factory=dict)

    def __call__(self, f):
        return self.apply(f)

    def zero_input(self):
        return Sequence(np.zeros(0)) if self.domain == "sequence" else StepFunction.zero()


def compose(S: OperatorHandle, T: OperatorHandle, name: str | None = None) -> OperatorHandle:
    """``f -> S(T(f))``."""
    if T.output == "sequence" and S.domain != "sequence":
        raise ValueError("incompatible domains")
    if T.output == "pl":
        raise ValueError(f"{S.name} cannot act on piecewise-linear output of {T.name}")
    return OperatorHandle(
        name or f"{S.name}.{T.name}",
        lambda f: S(T(f)),
        domain=T.domain,
        output=S.output,
        params={**T.params, **S.params},
    )


def center(T: OperatorHandle) -> OperatorHandle:
    """``f -> T(f) - T(0)``."""
    t0 = T(T.zero_input())
    return OperatorHandle(f"center({T.name})", lambda f: T(f) - t0, T.domain, T.output, dict(T.params))


def is_zero(x) -> bool:
    if isinstance(x, PiecewiseLinear):
        return not np.any(x.ys)
    return x.is_zero()


OPERATOR_NAMES = ("t1", "t2", "t3", "t4", "v", "t5", "t6", "lambda", "mtilde", "q", "identity")


def make_operator(name: str, p: float = 2.0, n_max: int = 64, N_max: int = 40) -> OperatorHandle:
    """Operator handle by name, as used on the command line and in reports."""
    if name == "t1":
        return OperatorHandle("t1", lambda f: t1(f, n_max), params={"n_max": n_max})
    if name == "t2":
        return OperatorHandle("t2", lambda f: t2(f, n_max), params={"n_max": n_max})
    if name == "t3":
        return compose(make_operator("t2", p, n_max), make_operator("t1", p, n_max), name="t3")
    if name == "t4":
        return OperatorHandle("t4", t4, domain="sequence", output="sequence")
    if name == "lambda":
        v = t1_weight(n_max)
        return OperatorHandle("lambda", lambda f: lambda_v(f, v), params={"n_max": n_max})
    if name == "mtilde":
        w = t2_weight(n_max)
        return OperatorHandle("mtilde", lambda f: m_tilde_v(f, w), params={"n_max": n_max})
    if name == "q":
        return OperatorHandle("q", lambda f: cond_expectation(f, DYADIC, n_max), params={"n_max": n_max})
    if name == "identity":
        return OperatorHandle("identity", lambda f: f)
    if name in ("v", "t5", "t6"):
        from . import construction

        prm = {"p": float(p), "N_max": N_max}
        if name == "v":
            return OperatorHandle("v", lambda f: construction.v_operator(f, p, N_max), params=prm)
        if name == "t5":
            return OperatorHandle("t5", lambda f: construction.t5(f, p, N_max), output="pl", params=prm)
        return OperatorHandle("t6", lambda f: construction.t6(f, p, N_max), output="pl", params=prm)
    raise ValueError(f"unknown operator {name!r}; expected one of {', '.join(OPERATOR_NAMES)}")
