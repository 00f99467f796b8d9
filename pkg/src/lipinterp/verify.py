"""Numerical evidence for the operator properties.

Hard checks (assertions that can genuinely fail) are kept apart from
informational statistics such as greedy cover sizes. Every check returns a
:class:`CheckResult` whose dict form is the report row
``{check, params, certificate, margin, verdict}``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import zeta

from . import construction as cons
from . import operators as ops
from .funcspace import (
    IntervalFamily,
    InterpParams,
    PiecewiseLinear,
    Sequence,
    StepFunction,
    interp_norm,
    k_functional,
    lorentz_quasinorm,
    norm,
    to_json,
)
from .sampling import log_uniform, quantize, random_family_step, random_sequence, random_step

T_GRID = np.exp2(np.arange(-20, 21, dtype=float))
SEPARATION_TOL = 1e-9
EQUALITY_RTOL = 1e-12
LIPSCHITZ_TOL = 1e-12
INTERP_TOL = 1e-8


@dataclass
class CheckResult:
    check: str
    params: dict
    certificate: dict
    margin: float | None
    verdict: str  # "pass", "fail" or "info"
    hard: bool = True

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        return _clean(asdict(self))


def _clean(x):
    """JSON-ready copy: numpy scalars to Python, inf/nan to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_clean(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


def serialize(x) -> dict:
    """Exact, replayable form of an input or output."""
    if isinstance(x, Sequence):
        return {"kind": "sequence", "start": int(x.start), "entries": x.entries.tolist()}
    return to_json(x)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- distances ---------------------------------------------------------------------


def space_norm(x, space: str) -> float:
    """``L1``/``l1`` or ``Linf``/``linf`` norm of a step, PL or sequence value."""
    if space in ("L1", "l1"):
        return norm(x, 1.0)
    if space in ("Linf", "linf", "lp"):
        return norm(x, np.inf)
    raise ValueError(f"unknown space {space!r}")


def distance(a, b, space: str) -> float:
    return space_norm(a - b, space)


# -- input samplers -----------------------------------------------------------------


def _family_for(T: ops.OperatorHandle) -> IntervalFamily | None:
    if T.name in ("t5", "t6", "v") or T.params.get("family") == "geometric":
        return cons.geometric_family(T.params.get("p", 2.0))
    return None


def sample_input(T: ops.OperatorHandle, rng: np.random.Generator):
    """A random input in the domain of ``T``.

    Operators built on the geometric family get inputs adapted to its first
    cells (so the truncated supremum is exact); the others alternate between
    generic dyadic-grid functions and functions adapted to the dyadic family.
    """
    if T.domain == "sequence":
        return random_sequence(rng)
    fam = _family_for(T)
    if fam is not None:
        return random_family_step(rng, fam, n_cells=int(rng.integers(1, 11)))
    if rng.random() < 0.5:
        return random_step(rng)
    return random_family_step(rng, ops.DYADIC, n_cells=int(rng.integers(1, 13)))


def sample_pair(T: ops.OperatorHandle, rng: np.random.Generator):
    """Independent inputs, or one input and a moderate perturbation of it.

    Perturbed pairs stay well conditioned (``||f - g||`` at least about 1% of
    ``||f||``); closer pairs would measure binary64 cancellation in
    ``||Tf - Tg||`` rather than the operator.
    """
    f = sample_input(T, rng)
    mode = rng.random()
    if mode < 0.5:
        return f, sample_input(T, rng)
    if mode < 0.75:
        # point on the segment towards an independent input
        g = sample_input(T, rng)
        s = float(log_uniform(rng, 1e-2, 1.0))
        h = f * (1.0 - s) + g * s
        if isinstance(h, Sequence):
            return f, Sequence(quantize(h.entries), h.start)
        return f, StepFunction(h.breaks, quantize(h.values))
    # rescale the largest piece by 5% to 50%
    step = isinstance(f, StepFunction)
    v = (f.values if step else f.entries).copy()
    i = int(np.argmax(np.abs(v)))
    v[i] *= 1.0 + float(rng.choice([-1.0, 1.0]) * rng.uniform(0.05, 0.5))
    return f, StepFunction(f.breaks, quantize(v)) if step else Sequence(quantize(v), f.start)


# -- non-compactness witnesses ------------------------------------------------------


@dataclass
class WitnessReport:
    operator_name: str
    p: float
    q: float
    theta: float
    nu_p: int
    nu_certificate: dict
    gamma_p: float
    N_range: list
    required_separation: float
    required_lorentz_separation: float
    pairs: list = field(default_factory=list)
    lorentz_pairs: list = field(default_factory=list)
    sandwich_ok: bool = True
    sandwich_failure: dict | None = None
    exact_distance_max_rel_err: float | None = None
    verdict: str = "pass"

    @property
    def min_margin(self) -> float:
        m = [d - self.required_separation for _, _, d in self.pairs]
        m += [d - self.required_lorentz_separation for _, _, d in self.lorentz_pairs]
        return min(m) if m else math.inf

    def to_check(self) -> CheckResult:
        cert = asdict(self)
        cert.pop("verdict")
        params = {"operator": self.operator_name, "p": self.p, "q": self.q, "theta": self.theta}
        return CheckResult("noncompact_witness", params, _clean(cert), self.min_margin, self.verdict)


_WITNESS = {
    # name: (threshold scans combined by max, gamma_p(p), equality expected)
    "t1": (("sigma",), lambda p: 1.0, True),
    "t2": (("tau",), lambda p: 1.0 - 2.0 ** (-1.0 / p), False),
    "t3": (("sigma", "tau"), lambda p: 1.0 - 2.0 ** (-1.0 / p), False),
    "t4": (("nu",), lambda p: 1.0, True),
}


def witness_threshold(name: str, p: float) -> tuple[int, dict]:
    """``nu_p`` for the operator together with the scan certificates it came from."""
    scans = {"sigma": ops.sigma_threshold, "tau": ops.tau_threshold, "nu": ops.nu_t4_threshold}
    certs = [scans[s](p) for s in _WITNESS[name][0]]
    vals = [c.value for c in certs]
    return max(vals), {c.name: c.to_dict() for c in certs}


def _psi(name: str, N: int, p: float):
    return ops.psi_sequence(N, p) if name == "t4" else ops.psi_dyadic(N, p)


def _sandwich(lo_c: float, psi, out):
    """First point where ``lo_c * psi <= out <= psi`` fails, or ``None``."""
    if isinstance(psi, Sequence):
        d = (psi - out).entries
        start = min(psi.start, out.start)
        lo = (out - psi * lo_c).entries
        bad = np.nonzero((d < 0) | (lo < 0))[0]
        return None if len(bad) == 0 else {"index": int(start + bad[0])}
    breaks, a, b = psi.refine(out)
    bad = np.nonzero((b > a) | (b < lo_c * a))[0]
    if len(bad):
        return {"x": float(breaks[bad[0]]), "psi": float(a[bad[0]]), "T_psi": float(b[bad[0]])}
    return None


def noncompact_witness(T: ops.OperatorHandle, p: float, q: float = 2.0, N_range=None, extra: int = 6) -> WitnessReport:
    """Separated images of a unit-norm family; for T1..T4.

    ``N_range`` defaults to the ``extra`` integers just above ``nu_p``.
    """
    if T.name in ("t5", "t6"):
        raise ValueError("use norm_collapse_witness for t5/t6")
    if T.name not in _WITNESS:
        raise ValueError(f"no witness family known for {T.name!r}")
    nu_p, cert = witness_threshold(T.name, p)
    gamma_p = _WITNESS[T.name][1](p)
    if N_range is None:
        N_range = list(range(nu_p + 1, nu_p + 1 + extra))
    N_range = [int(N) for N in N_range]
    if min(N_range) <= nu_p:
        raise ValueError(f"N_range must lie above nu_p={nu_p}")
    lor = 1.0 if math.isinf(q) else (p / q) ** (1.0 / q)
    rep = WitnessReport(
        operator_name=T.name,
        p=float(p),
        q=float(q),
        theta=1.0 / p,
        nu_p=nu_p,
        nu_certificate=cert,
        gamma_p=gamma_p,
        N_range=N_range,
        required_separation=gamma_p * 2.0 ** (1.0 / p),
        required_lorentz_separation=gamma_p * lor,
    )
    images = {}
    for N in N_range:
        psi = _psi(T.name, N, p)
        out = T(psi)
        bad = _sandwich(gamma_p, psi, out)
        if bad is not None and rep.sandwich_ok:
            rep.sandwich_ok = False
            rep.sandwich_failure = {"N": N, **bad}
        images[N] = out
    errs = []
    for i, N in enumerate(N_range):
        for N2 in N_range[i + 1 :]:
            diff = images[N] - images[N2]
            d = norm(diff, p)
            rep.pairs.append((N, N2, d))
            rep.lorentz_pairs.append((N, N2, lorentz_quasinorm(diff, p, q)))
            if _WITNESS[T.name][2]:
                errs.append(abs(d / 2.0 ** (1.0 / p) - 1.0))
    if errs:
        rep.exact_distance_max_rel_err = max(errs)
    ok = rep.sandwich_ok and rep.min_margin >= -SEPARATION_TOL
    if errs:
        ok = ok and rep.exact_distance_max_rel_err <= EQUALITY_RTOL
    rep.verdict = _verdict(ok)
    return rep


def norm_collapse_witness(T: ops.OperatorHandle, p: float, N_range=range(1, 13)) -> CheckResult:
    """For T5/T6: ``||T psi_N||_p >= 1/(1+sqrt 2)`` while ``||T psi_N||_1 <= 2^{-N(p-1)}``.

    Any ``L^p``-convergent subsequence would converge in ``L^1`` as well, to a
    limit of ``L^1`` norm 0, contradicting the ``L^p`` lower bound; so the
    bounded family has no convergent subsequence.
    """
    lower = 1.0 / (1.0 + math.sqrt(2.0))
    rows, margins, same = [], [], True
    for N in N_range:
        psi = cons.psi_geometric(N, p)
        out = T(psi)
        lp = norm(out, p)
        l1 = norm(out, 1.0)
        up = 2.0 ** (-N * (p - 1.0))
        rows.append({"N": N, "psi_lp": norm(psi, p), "lp": lp, "l1": l1, "l1_bound": up})
        margins += [lp - lower, (up - l1) / up]
        if T.name == "t6":
            t5_out = cons.t5(psi, p, T.params.get("N_max", 40))
            same = same and np.array_equal(t5_out.xs, out.xs) and np.array_equal(t5_out.ys, out.ys)
    ok = min(margins) >= -SEPARATION_TOL and same
    cert = {
        "lp_lower_bound": lower,
        "rows": rows,
        "t6_equals_t5_on_family": same if T.name == "t6" else None,
        "no_convergent_subsequence": bool(ok),
    }
    return CheckResult("norm_collapse_witness", {"operator": T.name, "p": float(p)}, cert, min(margins), _verdict(ok))


# -- compactness evidence -------------------------------------------------------------


@dataclass
class CompactnessEvidence:
    operator_name: str
    space: str
    sample_size: int
    epsilon: float
    bound: float
    seed: int
    cover_size: int
    tail_index: int | None
    tail_sum: float | None
    containment_checks: int
    containment_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.containment_failures

    def to_check(self) -> CheckResult:
        cert = asdict(self)
        params = {k: cert.pop(k) for k in ("operator_name", "space", "sample_size", "epsilon", "bound", "seed")}
        return CheckResult("epsilon_net_evidence", _clean(params), _clean(cert), None, _verdict(self.passed))


def _sample_bounded(T, rng, space, bound):
    f = sample_input(T, rng)
    n = space_norm(f, space)
    return f if n == 0 else f * (bound * float(rng.uniform(0.05, 1.0)) / n)


def _image_matrix(images, space):
    """Values of all images on a common partition plus cell weights.

    Pairwise ``L1``/``Linf`` distances computed from the matrix are exact:
    step functions are constant on the common cells and differences of
    piecewise-linear functions are extremal at the union of their nodes.
    """
    first = images[0]
    if isinstance(first, Sequence):
        lo = min(s.start for s in images)
        hi = max(s.start + len(s.entries) for s in images)
        M = np.zeros((len(images), max(hi - lo, 1)))
        for i, s in enumerate(images):
            M[i, s.start - lo : s.start - lo + len(s.entries)] = s.entries
        return M, np.ones(M.shape[1])
    if isinstance(first, PiecewiseLinear):
        if space not in ("Linf", "linf"):
            raise ValueError("piecewise-linear images are compared in Linf only")
        x = np.unique(np.concatenate([g.xs for g in images]))
        return np.array([g(x) for g in images]), np.ones(len(x))
    x = np.unique(np.concatenate([f.breaks for f in images]))
    if len(x) < 2:
        return np.zeros((len(images), 1)), np.zeros(1)
    mid = x[:-1]
    return np.array([f(mid) for f in images]), np.diff(x)


def greedy_cover(M: np.ndarray, weights: np.ndarray, space: str, eps: float) -> list[int]:
    """Indices of centers such that every row is within ``eps`` of one of them."""
    centers: list[int] = []
    best = np.full(len(M), np.inf)
    for i in range(len(M)):
        if best[i] <= eps:
            continue
        centers.append(i)
        d = np.abs(M - M[i])
        dist = d @ weights if space in ("L1", "l1") else d.max(axis=1)
        best = np.minimum(best, dist)
    return centers


def t1_tail_index(eps: float) -> tuple[int, float]:
    """Smallest ``N`` with ``sum_{n >= N} (2^n / n^2) |I_n| = sum_{n >= N} 1/n^2 < eps``."""
    N = 1
    while zeta(2, N) >= eps:
        N += 1
    return N, float(zeta(2, N))


def t4_tail_index(eps: float) -> int:
    """First index beyond which ``v(n) < eps``."""
    k = math.floor(1.0 / eps) + 1
    return 2**k


def _containment(T, f, out, space, bound):
    """Operator-specific hard checks; returns a failure description or ``None``."""
    name = T.name
    n_max = T.params.get("n_max", 64)
    if name in ("t1", "t3"):
        cap = ops.t1_weight(n_max)
        if not _on_family(out, ops.DYADIC, n_max) or not (out.pointwise_le(cap) and np.all(out.values >= 0)):
            return {"reason": "image outside H (0 <= alpha_n <= 2^n/n^2 on I_n)"}
    if name in ("t2", "t3") and space == "Linf":
        Nb = max(1, math.ceil(bound))
        box = ops.DYADIC.weight(np.maximum(Nb - np.arange(1, n_max + 1, dtype=float), 0.0))
        if not (out.pointwise_le(box) and np.all(out.values >= 0)):
            return {"reason": f"image outside H_N box with N={Nb}"}
    if name == "t4":
        e = out.entries
        if np.any(e < 0) or np.any(e > ops.t4_weight(out.indices)):
            return {"reason": "image entry above v(n)"}
    if name in ("t5", "t6"):
        L = cons.lip_bound(bound, T.params["p"])
        if out.sup() > bound or out.lipschitz() > L or np.any(out.ys < 0):
            return {"reason": "sup or Lipschitz bound violated", "sup": out.sup(), "lip": out.lipschitz(), "L": L}
    return None


def _on_family(out: StepFunction, fam: IntervalFamily, n_max: int) -> bool:
    lo = fam.edges(n_max)[0]
    return bool(np.all(out.values[out.breaks[:-1] < lo] == 0)) and out.breaks[-1] <= 1.0


def epsilon_net_evidence(
    T: ops.OperatorHandle,
    space: str,
    bound: float,
    epsilon: float,
    sample_size: int = 256,
    seed: int = 42,
) -> CompactnessEvidence:
    """Analytic containment of sampled images (hard) plus a greedy cover size (informational)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    rng = np.random.default_rng(seed)
    inputs = [_sample_bounded(T, rng, "Linf" if space == "lp" else space, bound) for _ in range(sample_size)]
    images = [T(f) for f in inputs]
    failures = []
    checks = 0
    for f, out in zip(inputs, images):
        bad = _containment(T, f, out, space, bound)
        checks += 1
        if bad is not None:
            failures.append({**bad, "input": serialize(f)})
    M, wts = _image_matrix(images, space)
    cover = greedy_cover(M, wts, space, epsilon)
    tail_index, tail_sum = None, None
    if T.name == "t1" and space == "L1":
        tail_index, tail_sum = t1_tail_index(epsilon)
    elif T.name in ("t2", "t3") and space == "Linf":
        tail_index, tail_sum = max(1, math.ceil(bound)), 0.0
    elif T.name == "t4":
        tail_index = t4_tail_index(epsilon)
        tail_sum = float(ops.t4_weight(np.array([tail_index]))[0])
    return CompactnessEvidence(
        operator_name=T.name,
        space=space,
        sample_size=sample_size,
        epsilon=float(epsilon),
        bound=float(bound),
        seed=int(seed),
        cover_size=len(cover),
        tail_index=tail_index,
        tail_sum=tail_sum,
        containment_checks=checks,
        containment_failures=failures[:5],
    )


# -- Lipschitz sweep ------------------------------------------------------------------


def lipschitz_sweep(
    T: ops.OperatorHandle,
    spaces=("L1", "Linf"),
    sample_size: int = 256,
    seed: int = 42,
) -> CheckResult:
    """Largest ``||Tf - Tg|| / ||f - g||`` over random pairs, in each space.

    The same pairs serve every space. Also checks ``T(0) = 0`` exactly and
    the boundedness ``||Tf|| <= ||f||`` that follows from it.
    """
    if isinstance(spaces, str):
        spaces = (spaces,)
    rng = np.random.default_rng(seed)
    worst = {s: 0.0 for s in spaces}
    worst_bound = {s: 0.0 for s in spaces}
    failing = {}
    for _ in range(sample_size):
        f, g = sample_pair(T, rng)
        Tf, Tg = T(f), T(g)
        for s in spaces:
            num = distance(Tf, Tg, s)
            den = distance(f, g, s)
            r = num / den if den > 0 else (0.0 if num == 0 else math.inf)
            if r > worst[s]:
                worst[s] = r
            if r > 1.0 + LIPSCHITZ_TOL and s not in failing:
                failing[s] = {"f": serialize(f), "g": serialize(g), "ratio": r}
            nf, ntf = space_norm(f, s), space_norm(Tf, s)
            b = ntf / nf if nf > 0 else (0.0 if ntf == 0 else math.inf)
            worst_bound[s] = max(worst_bound[s], b)
            if b > 1.0 + LIPSCHITZ_TOL and f"bound_{s}" not in failing:
                failing[f"bound_{s}"] = {"f": serialize(f), "ratio": b}
    zero_out = T(T.zero_input())
    fixes_zero = ops.is_zero(zero_out)
    ok = not failing and fixes_zero
    margin = min(1.0 + LIPSCHITZ_TOL - w for w in list(worst.values()) + list(worst_bound.values()))
    cert = {
        "max_ratio": worst,
        "max_norm_ratio": worst_bound,
        "T_of_zero_is_zero": fixes_zero,
        "failing": failing or None,
    }
    params = {"operator": T.name, "spaces": list(spaces), "sample_size": sample_size, "seed": seed}
    return CheckResult("lipschitz_sweep", params, cert, margin, _verdict(ok))


# -- K-functional and interpolation norms ------------------------------------------------


def k_decomposition_oracle(f, t: float, couple: str = "L1,Linf", grid: int = 2001) -> float:
    """K-functional by explicit search over splittings ``f = f0 + f1``.

    For a level ``lam`` the cheapest piece-wise choice of the bounded part is
    the value of ``[-lam, lam]`` closest to ``f`` on that piece, picked here
    from a grid of candidates (independent of any rearrangement). The level
    runs over ``0``, the absolute values of ``f`` and a uniform grid.
    """
    if isinstance(f, Sequence):
        f = f.to_step()
    c, L = f.values, f.lengths
    if len(c) == 0:
        return 0.0
    a = np.abs(c)
    lams = np.unique(np.concatenate([[0.0], a, np.linspace(0.0, a.max(), grid)]))
    best = math.inf
    for lam in lams:
        cand = np.concatenate([np.linspace(-lam, lam, 33), np.clip(c, -lam, lam)])
        resid = np.abs(c[:, None] - cand[None, :]).min(axis=1)
        big = float(np.sum(L * resid))  # integrable part, measured in L1
        if couple == "L1,Linf":
            cost = big + t * lam
        else:
            cost = lam + t * big
        best = min(best, cost)
    return best


def interpolation_bound_check(
    T: ops.OperatorHandle,
    theta: float,
    q: float,
    sample_size: int = 64,
    seed: int = 42,
) -> CheckResult:
    """``K(t, Ta) <= K(t, a)`` on ``t = 2^k``, ``|k| <= 20``, and the norm contraction.

    Functions use the couple ``(Linf, L1)``; sequences ``(l1, linf)``.
    """
    couple = "L1,Linf" if T.domain == "sequence" else "Linf,L1"
    prm = InterpParams(theta, q, couple)
    rng = np.random.default_rng(seed)
    worst_k, worst_n = math.inf, math.inf
    failing = None
    samples = [T.zero_input()] + [sample_input(T, rng) for _ in range(sample_size - 1)]
    for a in samples:
        out = T(a)
        ka = np.atleast_1d(k_functional(a, T_GRID, couple))
        ko = np.atleast_1d(k_functional(out, T_GRID, couple))
        gap = ka - ko
        mk = float(np.min(gap))
        # relative slack for rounding in the cumulative sums
        k_ok = bool(np.all(gap >= -1e-12 * np.maximum(ka, 1.0)))
        na, no = interp_norm(a, prm), interp_norm(out, prm)
        mn = na - no
        worst_k, worst_n = min(worst_k, mk), min(worst_n, mn)
        if (not k_ok or mn < -INTERP_TOL) and failing is None:
            failing = {"input": serialize(a), "k_margin": mk, "norm_margin": mn}
    ok = failing is None
    params = {"operator": T.name, "theta": float(theta), "q": float(q), "couple": couple,
              "sample_size": sample_size, "seed": seed}
    cert = {"min_k_margin": worst_k, "min_norm_margin": worst_n, "t_grid": "2^k, k=-20..20", "failing": failing}
    return CheckResult("interpolation_bound", params, cert, min(worst_k, worst_n), _verdict(ok))


# -- pointwise lattice inequalities -------------------------------------------------------


def pointwise_lattice_check(op: str, n_pairs: int = 10_000, seed: int = 42) -> CheckResult:
    """``|U(f) - U(g)| <= |f - g|`` everywhere, with zero tolerance, for
    ``U`` = ``min{|.|, v}`` (``"lambda"``), ``max{|.|, v}`` (``"m"``) or
    ``max{|.|, v} - v`` (``"mtilde"``), with a fresh random weight ``v`` per pair.

    Inputs lie on the grid of :func:`quantize`, where every operation
    involved is exact in binary64.
    """
    fn = {"lambda": ops.lambda_v, "m": ops.m_v, "mtilde": ops.m_tilde_v}[op]
    rng = np.random.default_rng(seed)
    margin = math.inf
    failing = None
    for _ in range(n_pairs):
        f, g = random_step(rng), random_step(rng)
        v = abs(random_step(rng, signed=False, p_zero=0.3))
        uf, ug = fn(f, v), fn(g, v)
        breaks = np.unique(np.concatenate([f.breaks, g.breaks, v.breaks]))
        x = breaks[:-1]
        gap = np.abs(f(x) - g(x)) - np.abs(uf(x) - ug(x))
        # also compare off the common support, where both sides must vanish
        outside = np.array([breaks[0] - 1.0, breaks[-1]])
        gap = np.concatenate([gap, np.abs(f(outside) - g(outside)) - np.abs(uf(outside) - ug(outside))])
        m = float(gap.min())
        if m < 0 and failing is None:
            failing = {"f": serialize(f), "g": serialize(g), "v": serialize(v), "gap": m}
        margin = min(margin, m)
    params = {"operator": op, "n_pairs": n_pairs, "seed": seed}
    return CheckResult("pointwise_lattice", params, {"failing": failing}, margin, _verdict(failing is None))
