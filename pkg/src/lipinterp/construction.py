"""Planar-set construction behind the operators S_N, T5 and T6.

For fixed ``p`` and ``N`` the width ``w = 2^-Np`` determines sequences
``m, h, y, lambda``; from them we build the polygons ``E(t)`` and ``G(t)``,
the upper-edge profile ``g(., t)`` of ``G(t)``, the inverse ``gamma`` of
``t -> |G(t)|``, and ``S_N(c chi_{I_N}) = g(., gamma(|c| w))`` on ``[0, 1]``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .funcspace import IntervalFamily, PiecewiseLinear, StepFunction, pl_sup
from .operators import cond_expectation, lambda_v

DEFAULT_TABLE_DEPTH = 40


class InvariantError(ValueError):
    """A table invariant failed after construction."""


# -- tables --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConstructionTables:
    """Sequences for one ``(p, N)``, indexed ``0..n_table_max``.

    ``y[0]`` is unused (NaN). ``corner[k] = lambda_k - m_k h_k`` is the height
    of the profile at ``x = w + h_k``.
    """

    p: float
    N: int
    n_table_max: int
    w: float
    m: np.ndarray
    h: np.ndarray
    y: np.ndarray
    lam: np.ndarray
    corner: np.ndarray
    certificates: dict

    @property
    def areas(self) -> np.ndarray:
        """``|G(lambda_n)| = (2^n - 1) w``."""
        return (np.exp2(np.arange(self.n_table_max + 1)) - 1.0) * self.w

    @property
    def gamma_pl(self) -> PiecewiseLinear:
        return PiecewiseLinear(self.areas, self.lam)

    @property
    def support_width(self) -> float:
        """``w + h_0``: every profile vanishes beyond this point."""
        return self.w + self.h[0]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "N": self.N,
            "n_table_max": self.n_table_max,
            "w": self.w,
            "m": self.m.tolist(),
            "h": self.h.tolist(),
            "y": [None] + self.y[1:].tolist(),
            "lambda": self.lam.tolist(),
            "h_over_w": (self.h / self.w).tolist(),
            "certificates": self.certificates,
        }


def _powers(p: float, n: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        return np.exp2(np.arange(1, n + 1) * (p + 1.0))


def max_table_depth(p: float) -> int:
    """Largest depth for which every table entry is a finite, nonzero binary64."""
    n = 1
    while True:
        nxt = n + 1
        m = float(np.sum(_powers(p, nxt)))
        if not math.isfinite(m) or math.isinf(m * 2.0 ** (nxt + 1)) or 2.0 ** (-p * (nxt + 2)) == 0.0:
            return n
        n = nxt


def _h(w: float, p: float, n: np.ndarray) -> np.ndarray:
    # sqrt(w^2 + w a) - w rewritten as a / (sqrt(1 + a/w) + 1), a = 2^{-p(n+1)}
    a = np.exp2(-p * (n + 1.0))
    return a / (np.sqrt(1.0 + a / w) + 1.0)


def _rel(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny)))


@lru_cache(maxsize=512)
def build_tables(p: float, N: int, n_table_max: int = DEFAULT_TABLE_DEPTH) -> ConstructionTables:
    """Build and validate the tables; any failed invariant raises :class:`InvariantError`."""
    p = float(p)
    if not (p > 1 and math.isfinite(p)):
        raise ValueError("p must lie in (1, inf)")
    if N < 1 or n_table_max < 1:
        raise ValueError("need N >= 1 and n_table_max >= 1")
    depth = max_table_depth(p)
    if n_table_max > depth:
        raise OverflowError(f"2^(k(p+1)) overflows binary64 for p={p}; max feasible n_table_max is {depth}")
    if N * p > 1000:
        raise OverflowError(f"w = 2^-Np underflows for p={p}, N={N}")
    n = np.arange(n_table_max + 1)
    w = 2.0 ** (-N * p)
    m = np.concatenate([[0.0], np.cumsum(_powers(p, n_table_max))])
    h = _h(w, p, n.astype(float))
    y = np.full(n_table_max + 1, np.nan)
    y[1:] = np.exp2(n[1:] - 1.0) / (1.0 + h[:-1] / (2.0 * w))
    lam = np.concatenate([[0.0], np.cumsum(y[1:])])
    # corner heights as a sum of nonnegative terms (avoids lambda_k - m_k h_k cancellation)
    corner = np.concatenate([[0.0], np.cumsum(m[1:] * (h[:-1] - h[1:]))])

    cert = {}
    fails = []

    def check(name, ok, **info):
        cert[name] = {"ok": bool(ok), **info}
        if not ok:
            fails.append(name)

    check("h_positive_decreasing", np.all(h > 0) and np.all(np.diff(h) < 0))
    check("y_nondecreasing", y[1] > 0 and np.all(np.diff(y[1:]) >= 0))
    slope_err = _rel(y[1:] / h[:-1], np.diff(m))
    check("slope_identity", slope_err <= 1e-9, max_rel_err=slope_err)
    check("lambda_bound", np.all(lam <= np.exp2(n) - 1.0))
    corner_err = _rel(corner[1:], lam[1:] - m[1:] * h[1:]) if n_table_max >= 1 else 0.0
    check("corner_formula", corner_err <= 1e-9, max_rel_err=corner_err)
    if N <= n_table_max:
        e1 = _rel(h[N - 1], (math.sqrt(2.0) - 1.0) * w)
        e2 = _rel(y[N], 2.0**N / (1.0 + math.sqrt(2.0)))
        check("h_at_N_minus_1", e1 <= 1e-12, rel_err=e1)
        check("y_at_N", e2 <= 1e-12, rel_err=e2)
    if fails:
        raise InvariantError(f"table invariants failed for p={p}, N={N}: {', '.join(fails)}")
    for a in (m, h, y, lam, corner):
        a.setflags(write=False)
    return ConstructionTables(p, int(N), int(n_table_max), w, m, h, y, lam, corner, cert)


# -- t -> nu(t), polygons, areas ----------------------------------------------


def _check_t(tab: ConstructionTables, t: float):
    if not (0 <= t <= tab.lam[-1]):
        raise ValueError(f"t={t!r} outside [0, lambda_{tab.n_table_max}={tab.lam[-1]!r}]")


def nu(tab: ConstructionTables, t: float) -> int:
    """``0`` at ``t = 0``; otherwise the ``n`` with ``lambda_{n-1} < t <= lambda_n``."""
    _check_t(tab, t)
    if t == 0:
        return 0
    return int(np.searchsorted(tab.lam, t, side="left"))


def e_polygon(tab: ConstructionTables, t: float) -> np.ndarray:
    """Counterclockwise vertices of ``E(t)``, ``t > 0`` (5 x 2 array)."""
    if t <= 0:
        raise ValueError("E(t) is a polygon only for t > 0")
    n = nu(tab, t)
    w, lo = tab.w, tab.lam[n - 1]
    return np.array(
        [[0.0, lo], [w, lo], [w + tab.h[n - 1], tab.corner[n - 1]], [w, t], [0.0, t]],
    )


def e_upper_slope(tab: ConstructionTables, t: float) -> float:
    """Slope of the oblique upper edge of ``E(t)``."""
    n = nu(tab, t)
    return (tab.corner[n - 1] - t) / tab.h[n - 1]


def g_polygon(tab: ConstructionTables, t: float) -> np.ndarray:
    """Counterclockwise boundary of ``G(t)``, ``t > 0``."""
    if t <= 0:
        raise ValueError("G(t) is a polygon only for t > 0")
    n = nu(tab, t)
    w = tab.w
    chain = [[w + tab.h[k], tab.corner[k]] for k in range(0, n)]
    return np.array([[0.0, 0.0], *chain, [w, t], [0.0, t]])


def shoelace_area(vertices) -> float:
    """Signed area (positive for counterclockwise order)."""
    v = np.asarray(vertices, dtype=float)
    v = v - v[0]  # translation keeps the sum well-conditioned
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def g_area(tab: ConstructionTables, t: float) -> float:
    """``|G(t)|``."""
    n = nu(tab, t)
    if n == 0:
        return 0.0
    w = tab.w
    return (2.0 ** (n - 1) - 1.0) * w + (w + 0.5 * tab.h[n - 1]) * (t - tab.lam[n - 1])


def g_area_many(tab: ConstructionTables, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t > tab.lam[-1])):
        raise ValueError("t outside table range")
    n = np.maximum(np.searchsorted(tab.lam, t, side="left"), 1)
    w = tab.w
    return (np.exp2(n - 1.0) - 1.0) * w + (w + 0.5 * tab.h[n - 1]) * (t - tab.lam[n - 1])


def gamma(tab: ConstructionTables, s):
    """Inverse of ``t -> |G(t)|``; piecewise affine through ``((2^n - 1) w, lambda_n)``."""
    s_arr = np.asarray(s, dtype=float)
    top = tab.areas[-1]
    if np.any((s_arr < 0) | (s_arr > top)):
        raise ValueError(f"s outside [0, {top!r}]")
    out = np.interp(s_arr, tab.areas, tab.lam)
    return float(out) if out.ndim == 0 else out


# -- profiles and S_N ------------------------------------------------------------


def g_profile(tab: ConstructionTables, t: float) -> PiecewiseLinear:
    """``x -> g(x, t)``, the upper edge of ``G(t)``; zero beyond ``w + h_0``."""
    n = nu(tab, t)
    if n == 0:
        return PiecewiseLinear([0.0, tab.support_width], [0.0, 0.0])
    k = np.arange(n - 1, -1, -1)
    xs = np.concatenate([[0.0, tab.w], tab.w + tab.h[k]])
    ys = np.concatenate([[t, t], tab.corner[k]])
    return PiecewiseLinear(xs, ys)


def s_n(tab: ConstructionTables, c: float) -> PiecewiseLinear:
    """``S_N(c chi_{I_N})`` as a function on ``[0, 1]``."""
    c = abs(float(c))
    if c > 2.0**tab.n_table_max - 1.0:
        raise ValueError(f"|c|={c!r} beyond table depth {tab.n_table_max}")
    g = g_profile(tab, gamma(tab, min(c * tab.w, tab.areas[-1])))
    return PiecewiseLinear(np.append(g.xs, 1.0), np.append(g.ys, 0.0))


def n_c(C: float) -> int:
    """Smallest positive integer ``n`` with ``2^n - 1 >= C``."""
    if not C > 0:
        raise ValueError("C must be positive")
    if not math.isfinite(C):
        raise OverflowError("C must be finite")
    n = max(1, math.ceil(math.log2(C + 1.0)))
    while 2.0**n - 1.0 < C:
        n += 1
    while n > 1 and 2.0 ** (n - 1) - 1.0 >= C:
        n -= 1
    return n


def lip_bound(C: float, p: float) -> float:
    """``L(C, p) = m_{n_C}`` via its closed form."""
    n = n_c(C)
    a = p + 1.0
    try:
        return (2.0 ** ((n + 1) * a) - 2.0**a) / (2.0**a - 1.0)
    except OverflowError:
        raise OverflowError(f"lip_bound overflows for C={C!r}, p={p!r}") from None


# -- T5, V, T6 ----------------------------------------------------------------------


def geometric_family(p: float) -> IntervalFamily:
    return IntervalFamily.geometric(p)


def psi_geometric(N: int, p: float) -> StepFunction:
    """``(2^N - 1) chi_{I_N}`` on the geometric family."""
    return geometric_family(p).indicator(N, 2.0**N - 1.0)


def required_terms(p: float, x_min: float) -> int:
    """Smallest ``N_max`` such that every omitted ``S_N`` vanishes on ``[x_min, 1]``."""
    N = 1
    while True:
        w = 2.0 ** (-(N + 1) * p)
        if math.sqrt(w * w + w * 2.0**-p) <= x_min:
            return N
        N += 1


def _averages(f: StepFunction, p: float, N_max: int, x_min: float | None) -> np.ndarray:
    fam = geometric_family(p)
    g = abs(f)
    if x_min is not None:
        need = required_terms(p, x_min)
        if N_max < need:
            raise ValueError(f"N_max={N_max} too small for x_min={x_min!r}; need N_max >= {need}")
        lo = fam.interval(N_max)[0]
        g = _clip(g, lo)
    q = cond_expectation(g, fam, N_max)
    return q.values[::-1].copy()  # index N-1 -> average over I_N


def _clip(f: StepFunction, lo: float) -> StepFunction:
    keep = f.breaks >= lo
    b = np.concatenate([[lo], f.breaks[keep]]) if f.breaks[0] < lo else f.breaks
    if len(b) < 2:
        return StepFunction.zero()
    b = np.unique(b)
    return StepFunction(b, f(b[:-1]))


def t5(f: StepFunction, p: float, N_max: int = 40, x_min: float | None = None) -> PiecewiseLinear:
    """``sup_N S_N(avg_{I_N} |f| chi_{I_N})`` on ``[0, 1]``.

    Without ``x_min`` the result is exact and ``f`` must vanish on
    ``I_N``, ``N > N_max``. With ``x_min`` any tail is ignored and the result
    is exact on ``[x_min, 1]``.
    """
    c = _averages(f, p, N_max, x_min)
    parts = [s_n(build_tables(p, N), c[N - 1]) for N in np.nonzero(c)[0] + 1]
    if not parts:
        return PiecewiseLinear.zero(0.0, 1.0)
    return pl_sup(parts)


@lru_cache(maxsize=64)
def v_weight(p: float, N_max: int = 40) -> StepFunction:
    return geometric_family(p).weight(np.exp2(np.arange(1, N_max + 1)) - 1.0)


def v_operator(f: StepFunction, p: float, N_max: int = 40) -> StepFunction:
    """``min{|Qf|, sum (2^N - 1) chi_{I_N}}`` on the geometric family."""
    return lambda_v(cond_expectation(f, geometric_family(p), N_max), v_weight(p, N_max))


def t6(f: StepFunction, p: float, N_max: int = 40) -> PiecewiseLinear:
    return t5(v_operator(f, p, N_max), p, N_max)


# -- dumps ------------------------------------------------------------------------


def _csv(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([repr(float(v)) for v in r])
    return buf.getvalue()


def polygon_csv(vertices) -> str:
    return _csv(["x", "y"], np.asarray(vertices))


def profile_csv(g: PiecewiseLinear, label: str = "value") -> str:
    return _csv(["x", label], zip(g.xs, g.ys))
