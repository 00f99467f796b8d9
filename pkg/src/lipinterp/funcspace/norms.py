"""Norms, decreasing rearrangements, Lorentz quasinorms, K-functionals and
Lions-Peetre norms for the couple (L1, Linf) and its reverse.

Every routine accepts a :class:`StepFunction`, a :class:`PiecewiseLinear`
(over its node span) or a :class:`Sequence` (counting measure).
"""

from __future__ import annotations

from math import comb, isinf

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .families import InterpParams, Sequence
from .piecewise import PiecewiseLinear, cumulative_integral
from .step import StepFunction

_GL_X, _GL_W = leggauss(16)


def _as_function(f):
    if isinstance(f, Sequence):
        return f.to_step()
    if isinstance(f, (StepFunction, PiecewiseLinear)):
        return f
    raise TypeError(f"unsupported function type {type(f).__name__}")


# -- L^p norms ---------------------------------------------------------------


def _affine_abs_power_integral(y0, y1, L, p):
    """``int_0^L |l(x)|^p dx`` for affine ``l`` from ``y0`` to ``y1`` of one sign."""
    a, b = np.abs(y0), np.abs(y1)
    hi, lo = np.maximum(a, b), np.minimum(a, b)
    out = np.empty_like(hi)
    steep = (hi - lo) > 1e-3 * hi
    # closed form where it is well conditioned
    h, l_ = hi[steep], lo[steep]
    out[steep] = L[steep] * (h ** (p + 1) - l_ ** (p + 1)) / ((p + 1) * (h - l_))
    # nearly flat segments: 16-point Gauss-Legendre
    flat = ~steep
    if np.any(flat):
        xs = 0.5 * (_GL_X + 1.0)
        vals = lo[flat, None] + (hi[flat, None] - lo[flat, None]) * xs[None, :]
        out[flat] = L[flat] * 0.5 * (vals**p @ _GL_W)
    out[hi == 0] = 0.0
    return out


def norm(f, p: float = 1.0) -> float:
    """``L^p`` norm, ``p`` in ``(0, inf]`` (``np.inf`` for the sup norm)."""
    if not p > 0:
        raise ValueError("p must be positive")
    f = _as_function(f)
    if isinstance(f, StepFunction):
        if f.npieces == 0:
            return 0.0
        a = np.abs(f.values)
        if isinf(p):
            return float(a.max())
        if p == 1:
            return float(np.dot(a, f.lengths))
        return float(np.dot(a**p, f.lengths) ** (1.0 / p))
    g = f.split_at_zeros()
    if isinf(p):
        return float(np.max(np.abs(g.ys)))
    if len(g.xs) < 2:
        return 0.0
    L = np.diff(g.xs)
    if p == 1:
        return float(np.sum(0.5 * (np.abs(g.ys[1:]) + np.abs(g.ys[:-1])) * L))
    s = _affine_abs_power_integral(g.ys[:-1], g.ys[1:], L, p).sum()
    return float(s ** (1.0 / p))


# -- rearrangement -----------------------------------------------------------


def decreasing_rearrangement(f):
    """Nonincreasing function on ``[0, inf)`` equimeasurable with ``|f|``.

    Step functions map to step functions; piecewise-linear functions map to
    piecewise-linear functions on ``[0, span length]``.
    """
    f = _as_function(f)
    if isinstance(f, StepFunction):
        return _rearrange_step(f)
    return _rearrange_pl(f)


def _rearrange_step(f: StepFunction) -> StepFunction:
    a = np.abs(f.values)
    keep = a > 0
    if not np.any(keep):
        return StepFunction.zero()
    a, L = a[keep], f.lengths[keep]
    order = np.argsort(-a, kind="stable")
    a, L = a[order], L[order]
    # merge equal values so each level is one piece
    starts = np.concatenate([[True], a[1:] != a[:-1]])
    grp = np.cumsum(starts) - 1
    vals = a[starts]
    lens = np.bincount(grp, weights=L)
    breaks = np.concatenate([[0.0], np.cumsum(lens)])
    return StepFunction(breaks, vals)


def _rearrange_pl(f: PiecewiseLinear) -> PiecewiseLinear:
    g = abs(f)
    x, y = g.xs, g.ys
    total = float(x[-1] - x[0])
    if total == 0 or not np.any(y > 0):
        return PiecewiseLinear([0.0, max(total, 1.0)], [0.0, 0.0])
    L = np.diff(x)
    hi = np.maximum(y[:-1], y[1:])
    lo = np.minimum(y[:-1], y[1:])
    levels = np.unique(y)[::-1]  # descending, includes 0 if attained
    flat = hi == lo
    span = np.where(flat, 1.0, hi - lo)
    s = levels[:, None]
    frac = np.clip((hi[None, :] - s) / span[None, :], 0.0, 1.0)
    # measure of {|g| > s} and the extra measure of flat pieces exactly at s
    mu_gt = np.where(flat[None, :], L[None, :] * (hi[None, :] > s), L[None, :] * frac).sum(axis=1)
    mu_eq = (L[None, :] * (flat[None, :] & (hi[None, :] == s))).sum(axis=1)
    ts = np.stack([mu_gt, mu_gt + mu_eq], axis=1).ravel()
    vs = np.repeat(levels, 2)
    ts = np.maximum.accumulate(ts)
    keep = np.concatenate([[True], np.diff(ts) > 0])
    ts, vs = ts[keep], vs[keep]
    if ts[-1] < total:
        ts = np.append(ts, total)
        vs = np.append(vs, 0.0)
    if len(ts) == 1:
        ts = np.append(ts, ts[0] + 1.0)
        vs = np.append(vs, 0.0)
    return PiecewiseLinear(ts, vs)


def distribution(f, s: float) -> float:
    """Measure of ``{|f| > s}``, computed directly from ``f``."""
    f = _as_function(f)
    if isinstance(f, StepFunction):
        return float(f.lengths[np.abs(f.values) > s].sum())
    g = abs(f)
    L = np.diff(g.xs)
    hi = np.maximum(g.ys[:-1], g.ys[1:])
    lo = np.minimum(g.ys[:-1], g.ys[1:])
    flat = hi == lo
    frac = np.clip((hi - s) / np.where(flat, 1.0, hi - lo), 0.0, 1.0)
    return float(np.where(flat, L * (hi > s), L * frac).sum())


# -- Lorentz quasinorm ---------------------------------------------------------


def lorentz_quasinorm(f, p: float, q: float) -> float:
    """``(int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q}``; ``sup_t t^{1/p} f*(t)`` for ``q = inf``."""
    if not p > 0:
        raise ValueError("p must be positive")
    if not q >= 1:
        raise ValueError("q must lie in [1, inf]")
    fs = decreasing_rearrangement(f)
    if isinstance(fs, StepFunction):
        if fs.npieces == 0:
            return 0.0
        c, t0, t1 = fs.values, fs.breaks[:-1], fs.breaks[1:]
        if isinf(q):
            return float(np.max(c * t1 ** (1.0 / p)))
        r = q / p
        total = np.sum(c**q * (t1**r - t0**r)) / r
        return float(total ** (1.0 / q))
    xs, ys = fs.xs, fs.ys
    if not np.any(ys > 0):
        return 0.0
    slopes = np.diff(ys) / np.diff(xs)
    if isinf(q):
        best = float(np.max(xs ** (1.0 / p) * ys))
        for t0, t1, y0, m in zip(xs[:-1], xs[1:], ys[:-1], slopes):
            if m < 0:
                # stationary point of t^(1/p) (y0 + m (t - t0))
                tc = -(y0 - m * t0) / (m * (p + 1.0))
                if t0 < tc < t1:
                    best = max(best, tc ** (1.0 / p) * (y0 + m * (tc - t0)))
        return best
    # absolute floor relative to the size of the whole integral, so slivers
    # of negligible mass do not stall the quadrature
    floor = 1e-15 * float(ys[0]) ** q * float(xs[-1]) ** (q / p)
    total = 0.0
    for t0, t1, y0, m in zip(xs[:-1], xs[1:], ys[:-1], slopes):
        if y0 <= 0 and m <= 0:
            continue
        if t0 == 0:
            val, _ = integrate.quad(
                lambda t, y0=y0, m=m: max(y0 + m * t, 0.0) ** q,
                0.0, t1, weight="alg", wvar=(q / p - 1.0, 0.0), epsabs=floor, epsrel=1e-12,
            )
        else:
            val, _ = integrate.quad(
                lambda t, y0=y0, m=m, t0=t0: max(y0 + m * (t - t0), 0.0) ** q * t ** (q / p - 1.0),
                t0, t1, epsabs=floor, epsrel=1e-12,
            )
        total += val
    return float(total ** (1.0 / q))


# -- K-functional -------------------------------------------------------------


def _k_l1_linf(f, t):
    """``K(t, f; L1, Linf) = int_0^t f*`` for an array of ``t``."""
    fs = decreasing_rearrangement(f)
    t = np.asarray(t, dtype=float)
    if isinstance(fs, StepFunction):
        if fs.npieces == 0:
            return np.zeros_like(t)
        cum = np.concatenate([[0.0], np.cumsum(fs.values * fs.lengths)])
        # K is piecewise linear with nodes at the rearrangement breaks
        return np.interp(t, fs.breaks, cum)
    tc = np.minimum(t, fs.xs[-1])
    return cumulative_integral(fs, tc)


def k_functional(f, t, couple: str = "L1,Linf"):
    """Exact K-functional from the decreasing rearrangement.

    ``couple="L1,Linf"``: ``K(t) = int_0^t f*(s) ds``.
    ``couple="Linf,L1"``: ``K(t) = t K(1/t; L1, Linf)``.
    Accepts scalar or array ``t > 0``.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise ValueError("t must be positive")
    if couple == "L1,Linf":
        out = _k_l1_linf(f, t_arr)
    elif couple == "Linf,L1":
        out = t_arr * _k_l1_linf(f, 1.0 / t_arr)
    else:
        raise ValueError(f"unknown couple order {couple!r}")
    return float(out) if out.ndim == 0 else out


# -- Lions-Peetre norm ----------------------------------------------------------


def _k_segments(f):
    """Pieces of ``t -> K(t; L1, Linf)``: on ``[t0, t1]``, ``K = K0 + a u + b u^2/2``
    with ``u = t - t0``; returns arrays and the final constant value."""
    fs = decreasing_rearrangement(f)
    if isinstance(fs, StepFunction):
        t = fs.breaks
        a = fs.values
        b = np.zeros_like(a)
        K = np.concatenate([[0.0], np.cumsum(a * fs.lengths)])
    else:
        t = fs.xs
        a = fs.ys[:-1]
        b = np.diff(fs.ys) / np.diff(t)
        K = cumulative_integral(fs, t)
    return t, a, b, K


def _power_integral(A, B, e_shift, q, t0, t1):
    """``int_{t0}^{t1} (A + B t)^q t^{e_shift - 1} dt`` for integer ``q``, ``A, B >= 0``.

    Terms with a zero coefficient are skipped, so ``t0 = 0`` is allowed
    wherever ``A = 0`` (the first piece of a K-functional).
    """
    total = np.zeros_like(A)
    pos = t0 > 0
    safe_t0 = np.where(pos, t0, 1.0)
    for j in range(q + 1):
        e = j + e_shift
        coef = comb(q, j) * A ** (q - j) * B**j
        live = coef != 0
        if e == 0:
            piece = np.log(t1 / safe_t0)
        else:
            piece = (t1**e - np.where(pos, safe_t0**e, 0.0)) / e
        total = total + np.where(live, coef * np.where(live, piece, 0.0), 0.0)
    return total


def _lp_norm_l1_linf(f, theta: float, q: float) -> float:
    """``(int_0^inf (t^-theta K(t; L1, Linf))^q dt/t)^{1/q}``."""
    t, a, b, K = _k_segments(f)
    if len(t) < 2 or K[-1] == 0:
        return 0.0
    t0, t1, K0 = t[:-1], t[1:], K[:-1]
    Kend, T = K[-1], t[-1]
    if isinf(q):
        best = Kend * T**-theta
        for s0, s1, k0, aa, bb in zip(t0, t1, K0, a, b):
            cands = [s1]
            if s0 > 0:
                cands.append(s0)
            # stationary points of t^-theta K(t): t K'(t) = theta K(t)
            # with K = k0 + aa u + bb u^2 / 2, u = t - s0
            c2 = bb * (1.0 - theta / 2.0)
            c1 = aa * (1.0 - theta) + bb * s0
            c0 = aa * s0 - theta * k0
            roots = np.roots([c2, c1, c0]) if c2 != 0 else (np.array([-c0 / c1]) if c1 != 0 else [])
            for r in np.atleast_1d(roots):
                if np.isreal(r):
                    u = float(np.real(r))
                    if 0 < u < s1 - s0:
                        cands.append(s0 + u)
            for c in cands:
                u = c - s0
                best = max(best, (k0 + aa * u + 0.5 * bb * u * u) * c**-theta)
        return float(best)
    tail = Kend**q * T ** (-theta * q) / (theta * q)
    if float(q).is_integer() and not np.any(b):
        qi = int(q)
        # K = A + B t on each piece, A >= 0 by concavity
        B = a
        A = np.maximum(K0 - a * t0, 0.0)
        body = _power_integral(A, B, -theta * q, qi, t0, t1).sum()
        return float((body + tail) ** (1.0 / q))
    body = 0.0
    for s0, s1, k0, aa, bb in zip(t0, t1, K0, a, b):
        if s0 == 0:
            # K(t)/t is smooth; the algebraic weight carries the endpoint behaviour
            val, _ = integrate.quad(
                lambda t, aa=aa, bb=bb: (aa + 0.5 * bb * t) ** q,
                0.0, s1, weight="alg", wvar=(q * (1.0 - theta) - 1.0, 0.0),
                epsabs=0, epsrel=1e-12, limit=200,
            )
        else:
            val, _ = integrate.quad(
                lambda t, s0=s0, k0=k0, aa=aa, bb=bb: (k0 + aa * (t - s0) + 0.5 * bb * (t - s0) ** 2) ** q
                * t ** (-theta * q - 1.0),
                s0, s1, epsabs=0, epsrel=1e-12, limit=200,
            )
        body += val
    return float((body + tail) ** (1.0 / q))


def interp_norm(f, params: InterpParams) -> float:
    """Lions-Peetre norm ``(int_0^inf (t^-theta K(t, f))^q dt/t)^{1/q}``.

    For ``(Linf, L1)`` the substitution ``t -> 1/t`` turns the norm into the
    ``(L1, Linf)`` norm with ``1 - theta``; both use the same exact K pieces.
    """
    theta = params.theta if params.couple == "L1,Linf" else 1.0 - params.theta
    return _lp_norm_l1_linf(_as_function(f), theta, params.q)
