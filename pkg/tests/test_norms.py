import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from lipinterp.funcspace import (
    InterpParams,
    PiecewiseLinear,
    Sequence,
    StepFunction,
    decreasing_rearrangement,
    distribution,
    interp_norm,
    k_functional,
    lorentz_quasinorm,
    norm,
)
from lipinterp.verify import k_decomposition_oracle
from strategies import pl_functions, sequences, step_functions

# 2 chi[0, 1/4) + chi[1/2, 1): K(t) = 2t, then t + 1/4, then 1
TWO_LEVEL = StepFunction([0.0, 0.25, 0.5, 1.0], [2.0, 0.0, 1.0])


def _quad_norm(f, theta, q, couple="L1,Linf"):
    """Lions-Peetre norm by adaptive quadrature of the exact K in log t."""
    def integrand(s):
        return (math.exp(-theta * s) * k_functional(f, math.exp(s), couple)) ** q

    fs = decreasing_rearrangement(f)
    nodes = fs.breaks if isinstance(fs, StepFunction) else fs.xs
    pts = np.log(nodes[nodes > 0])
    if couple == "Linf,L1":
        pts = -pts
    pts = np.unique(pts)
    # both tails decay at least like exp(-min(theta, 1 - theta) q |s|)
    pad = 60.0 / (min(theta, 1 - theta) * q)
    edges = np.concatenate([[pts[0] - pad], pts, [pts[-1] + pad]])
    kw = dict(limit=400, epsabs=0, epsrel=1e-12)
    val = sum(integrate.quad(integrand, a, b, **kw)[0] for a, b in zip(edges[:-1], edges[1:]))
    return val ** (1.0 / q)


# -- norms ---------------------------------------------------------------------


def test_step_norms_closed_form():
    assert norm(TWO_LEVEL, 1) == 1.0
    assert norm(TWO_LEVEL, 2) == pytest.approx(math.sqrt(1.5))
    assert norm(TWO_LEVEL, np.inf) == 2.0
    assert norm(StepFunction.zero(), 3) == 0.0
    with pytest.raises(ValueError):
        norm(TWO_LEVEL, 0)


def test_sequence_norm_is_counting_measure():
    s = Sequence([3.0, -4.0], start=7)
    assert norm(s, 2) == 5.0
    assert norm(s, 1) == 7.0
    assert norm(s, np.inf) == 4.0


@given(pl_functions(), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_pl_norm_matches_quadrature(g, p):
    val, _ = integrate.quad(lambda x: abs(g(x)) ** p, 0.0, 1.0, points=g.xs[1:-1], limit=200)
    assert norm(g, p) == pytest.approx(val ** (1 / p), rel=1e-7, abs=1e-9)


# -- rearrangement -------------------------------------------------------------


@given(step_functions())
def test_rearrangement_is_equimeasurable_and_nonincreasing(f):
    fs = decreasing_rearrangement(f)
    assert np.all(np.diff(fs.values) <= 0)
    for s in np.concatenate([[0.0], np.abs(f.values)]):
        assert distribution(fs, s) == pytest.approx(distribution(f, s), abs=1e-12)
    assert norm(fs, 1) == pytest.approx(norm(f, 1), rel=1e-12)


@given(pl_functions())
def test_pl_rearrangement_is_equimeasurable(g):
    gs = decreasing_rearrangement(g)
    assert np.all(np.diff(gs.ys) <= 1e-12)
    for s in np.linspace(0, np.abs(g.ys).max(), 7):
        assert distribution(gs, s) == pytest.approx(distribution(g, s), abs=1e-9)


# -- Lorentz ---------------------------------------------------------------------


@pytest.mark.parametrize("p,q", [(2.0, 1.0), (2.0, 2.0), (1.5, 3.0), (3.0, 1.0)])
def test_lorentz_indicator_closed_form(p, q):
    f = StepFunction.indicator(0.25, 0.625, 1.0)
    # ||chi_A||_{p,q} = (p/q)^{1/q} |A|^{1/p}
    assert lorentz_quasinorm(f, p, q) == pytest.approx((p / q) ** (1 / q) * 0.375 ** (1 / p), rel=1e-12)
    assert lorentz_quasinorm(f, p, np.inf) == pytest.approx(0.375 ** (1 / p), rel=1e-12)


@given(step_functions(), st.sampled_from([1.0, 1.5, 2.0, 4.0]))
def test_lorentz_diagonal_is_lp(f, p):
    assert lorentz_quasinorm(f, p, p) == pytest.approx(norm(f, p), rel=1e-10, abs=1e-12)


@given(pl_functions(), st.sampled_from([1.5, 2.0]))
def test_pl_lorentz_diagonal_is_lp(g, p):
    assert lorentz_quasinorm(g, p, p) == pytest.approx(norm(g, p), rel=1e-7, abs=1e-9)


# -- K-functional ----------------------------------------------------------------


@settings(max_examples=25)
@given(step_functions(max_pieces=5), st.integers(-8, 8), st.sampled_from(["L1,Linf", "Linf,L1"]))
def test_k_functional_matches_splitting_search(f, k, couple):
    t = 2.0**k
    exact = k_functional(f, t, couple)
    oracle = k_decomposition_oracle(f, t, couple, grid=401)
    # the search is over explicit splittings so it can only overshoot
    assert oracle >= exact * (1 - 1e-12) - 1e-12
    assert oracle == pytest.approx(exact, rel=1e-2, abs=1e-9)


def test_k_functional_closed_form():
    t = np.array([0.125, 0.25, 0.5, 0.75, 2.0])
    np.testing.assert_allclose(k_functional(TWO_LEVEL, t), [0.25, 0.5, 0.75, 1.0, 1.0])
    np.testing.assert_allclose(k_functional(TWO_LEVEL, 1 / t, "Linf,L1"), [0.25, 0.5, 0.75, 1.0, 1.0] / t)
    with pytest.raises(ValueError):
        k_functional(TWO_LEVEL, 0.0)


@given(step_functions(), st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_k_functional_concave_and_bounded(f, s, t):
    # K(t) <= max(1, t/s) K(s) and K is nondecreasing
    ks, kt = k_functional(f, s), k_functional(f, t)
    assert kt <= max(1.0, t / s) * ks * (1 + 1e-12) + 1e-12
    if t >= s:
        assert kt >= ks * (1 - 1e-12)


# -- Lions-Peetre norm ---------------------------------------------------------------


def test_interp_norm_frozen_values():
    prm = InterpParams(0.5, 1.0, "L1,Linf")
    assert interp_norm(TWO_LEVEL, prm) == pytest.approx(2 + 2 * math.sqrt(3), rel=1e-12)
    # reversing the couple swaps theta and 1 - theta
    assert interp_norm(TWO_LEVEL, InterpParams(0.5, 1.0)) == pytest.approx(2 + 2 * math.sqrt(3), rel=1e-12)
    assert interp_norm(TWO_LEVEL, InterpParams(0.5, np.inf, "L1,Linf")) == pytest.approx(2 / math.sqrt(3), rel=1e-12)
    assert interp_norm(TWO_LEVEL, InterpParams(0.5, 2.0, "L1,Linf")) == pytest.approx(
        _quad_norm(TWO_LEVEL, 0.5, 2.0), rel=1e-9
    )


@settings(max_examples=30)
@given(
    step_functions(max_pieces=5),
    st.sampled_from([0.25, 0.5, 0.75]),
    st.sampled_from([1.0, 2.0, 2.5]),
    st.sampled_from(["L1,Linf", "Linf,L1"]),
)
def test_interp_norm_matches_quadrature(f, theta, q, couple):
    if f.is_zero() or not np.any(f.values):
        return
    got = interp_norm(f, InterpParams(theta, q, couple))
    assert got == pytest.approx(_quad_norm(f, theta, q, couple), rel=1e-8)


@given(step_functions(), st.sampled_from([0.25, 0.5, 0.75]), st.sampled_from([1.0, 2.0, 3.0, np.inf]))
def test_interp_norm_hardy_sandwich(f, theta, q):
    # with 1/p = 1 - theta: ||f||_{p,q} <= ||f||_{theta,q} <= (1/theta) ||f||_{p,q}
    p = 1 / (1 - theta)
    lor = lorentz_quasinorm(f, p, q)
    got = interp_norm(f, InterpParams(theta, q, "L1,Linf"))
    assert lor * (1 - 1e-10) <= got <= lor / theta * (1 + 1e-10) + 1e-12


@given(step_functions(), st.floats(1e-2, 1e2), st.sampled_from([1.0, 2.0, np.inf]))
def test_interp_norm_is_homogeneous(f, c, q):
    prm = InterpParams(0.5, q)
    assert interp_norm(f * c, prm) == pytest.approx(c * interp_norm(f, prm), rel=1e-10, abs=1e-300)


@given(sequences(max_len=12))
def test_sequence_interp_norm_uses_counting_measure(a):
    prm = InterpParams(0.5, 2.0, "L1,Linf")
    assert interp_norm(a, prm) == interp_norm(a.to_step(), prm)


def test_pl_interp_norm_of_ramp():
    # g(x) = 1 - x on [0, 1]: K(t) = t - t^2/2 for t <= 1, then 1/2
    g = PiecewiseLinear([0.0, 1.0], [1.0, 0.0])
    theta, q = 0.5, 1.0
    body, _ = integrate.quad(lambda t: (t - t * t / 2) * t ** (-theta - 1), 0, 1)
    tail = 0.5 / theta
    assert interp_norm(g, InterpParams(theta, q, "L1,Linf")) == pytest.approx(body + tail, rel=1e-10)
    assert interp_norm(g, InterpParams(theta, 2.0, "L1,Linf")) == pytest.approx(
        _quad_norm(g, theta, 2.0), rel=1e-8
    )
