import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lipinterp.funcspace import (
    IntervalFamily,
    InterpParams,
    PiecewiseLinear,
    Sequence,
    StepFunction,
    cumulative_integral,
    from_json,
    pl_integral,
    pl_sup,
    refine_many,
    to_csv,
    to_json,
)
from strategies import pl_functions, sequences, step_functions


# -- step functions -------------------------------------------------------------


def test_step_rejects_bad_input():
    with pytest.raises(ValueError):
        StepFunction([0.0, 0.5, 0.5], [1.0, 2.0])
    with pytest.raises(ValueError):
        StepFunction([0.0, 1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        StepFunction([0.0, 1.0], [np.nan])


def test_step_is_immutable():
    f = StepFunction.indicator(0.0, 1.0, 2.0)
    with pytest.raises(ValueError):
        f.values[0] = 3.0


def test_step_evaluation_is_half_open():
    f = StepFunction([0.0, 0.5, 1.0], [1.0, 2.0])
    assert f(0.0) == 1.0
    assert f(0.5) == 2.0
    assert f(1.0) == 0.0
    assert f(-0.1) == 0.0


def test_from_pieces_fills_gaps_with_zero():
    f = StepFunction.from_pieces([(0.0, 0.25, 1.0), (0.5, 1.0, 3.0)])
    assert f(0.3) == 0.0
    assert f.integral() == pytest.approx(0.25 + 1.5)
    assert f.support_measure() == 0.75


def test_zero_function():
    z = StepFunction.zero()
    assert z.is_zero() and z.npieces == 0
    assert (z + StepFunction.indicator(0, 1)).integral() == 1.0


@given(step_functions(), step_functions())
def test_step_algebra_pointwise(f, g):
    x = np.linspace(-0.1, 1.1, 97)
    np.testing.assert_array_equal((f + g)(x), f(x) + g(x))
    np.testing.assert_array_equal((f - g)(x), f(x) - g(x))
    np.testing.assert_array_equal(abs(f)(x), np.abs(f(x)))
    np.testing.assert_array_equal(f.minimum(g)(x), np.minimum(f(x), g(x)))
    np.testing.assert_array_equal(f.maximum(g)(x), np.maximum(f(x), g(x)))
    np.testing.assert_array_equal((f * 2.0)(x), 2.0 * f(x))


@given(step_functions())
def test_simplify_preserves_values(f):
    s = f.simplify()
    x = np.linspace(0, 1, 129)
    np.testing.assert_array_equal(s(x), f(x))
    assert s.npieces <= f.npieces


@given(st.lists(step_functions(), min_size=1, max_size=4))
def test_refine_many_matches_evaluation(fs):
    breaks, M = refine_many(fs)
    for f, row in zip(fs, M):
        np.testing.assert_array_equal(row, f(breaks[:-1]))


@given(step_functions(), step_functions())
def test_pointwise_le_agrees_with_dense_sampling(f, g):
    x = np.linspace(-0.01, 1.01, 4099)
    dense = bool(np.all(f(x) <= g(x)))
    # a dense sample can miss short pieces but never contradicts a True
    if f.pointwise_le(g):
        assert dense


# -- piecewise linear --------------------------------------------------------------


def test_pl_integral_and_constant_extension():
    g = PiecewiseLinear([0.0, 1.0, 2.0], [0.0, 2.0, 0.0])
    assert pl_integral(g, 0.0, 2.0) == pytest.approx(2.0)
    assert pl_integral(g, 0.5, 1.5) == pytest.approx(1.5)
    assert pl_integral(g, 0.0, np.inf) == pytest.approx(2.0)
    h = PiecewiseLinear([0.0, 1.0], [1.0, 1.0])
    assert pl_integral(h, 0.0, np.inf) == np.inf
    assert h(5.0) == 1.0


@given(pl_functions(), st.floats(0.0, 1.0))
def test_cumulative_integral_matches_pl_integral(g, t):
    assert cumulative_integral(g, t) == pytest.approx(pl_integral(g, 0.0, t), abs=1e-9)


@given(st.lists(pl_functions(), min_size=1, max_size=5))
def test_pl_sup_is_exact_pointwise_max(fs):
    s = pl_sup(fs)
    x = np.linspace(0, 1, 1001)
    np.testing.assert_allclose(s(x), np.max([f(x) for f in fs], axis=0), atol=1e-9)
    # the supremum of Lipschitz functions keeps the largest constant
    assert s.lipschitz() <= max(f.lipschitz() for f in fs) * (1 + 1e-9) + 1e-9


@given(pl_functions())
def test_pl_abs_and_restrict(g):
    a = abs(g)
    x = np.linspace(0, 1, 257)
    np.testing.assert_allclose(a(x), np.abs(g(x)), atol=1e-9)
    r = g.restrict(0.25, 0.75)
    np.testing.assert_allclose(r(x[(x >= 0.25) & (x <= 0.75)]), g(x[(x >= 0.25) & (x <= 0.75)]), atol=1e-12)


def test_pl_rejects_unsorted_nodes():
    with pytest.raises(ValueError):
        PiecewiseLinear([0.0, 0.0], [1.0, 2.0])


# -- families and sequences --------------------------------------------------------


def test_dyadic_family_intervals():
    fam = IntervalFamily.dyadic()
    assert fam.interval(1) == (0.5, 1.0)
    assert fam.interval(3) == (0.125, 0.25)
    assert fam.measure(5) == 2.0**-5
    e = fam.edges(4)
    assert np.all(np.diff(e) > 0) and e[-1] == 1.0 and e[0] == 2.0**-4


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_geometric_family_measures(p):
    fam = IntervalFamily.geometric(p)
    for n in range(1, 30):
        a, b = fam.interval(n)
        assert b - a == pytest.approx(2.0 ** (-n * p), rel=1e-12)
    assert fam.edges(1)[-1] == pytest.approx(1.0 / (2.0**p - 1.0))
    assert fam.total_measure() < 1.0
    e = fam.edges(40)
    assert np.all(np.diff(e) > 0)


def test_family_weight_places_coefficients():
    fam = IntervalFamily.dyadic()
    w = fam.weight([1.0, 2.0, 3.0])
    assert w(0.75) == 1.0 and w(0.3) == 2.0 and w(0.2) == 3.0 and w(0.1) == 0.0


def test_family_rejects_bad_kind():
    with pytest.raises(ValueError):
        IntervalFamily("triadic")
    with pytest.raises(ValueError):
        IntervalFamily.geometric(1.0)


@given(sequences(), sequences())
def test_sequence_algebra(a, b):
    d = a - b
    for n in range(1, 70):
        assert d[n] == a[n] - b[n]
    assert (a + b)[a.start] == a[a.start] + b[a.start]


def test_sequence_embedding():
    s = Sequence([1.0, -2.0], start=3)
    f = s.to_step()
    assert f(3.5) == 1.0 and f(4.0) == -2.0 and f(5.0) == 0.0
    assert Sequence.from_dict({2: 1.0, 5: 3.0})[5] == 3.0


def test_interp_params():
    P = InterpParams.for_lorentz(4.0, 2.0)
    assert P.theta == 0.25 and P.p == 4.0
    P = InterpParams.for_lorentz(4.0, 2.0, "L1,Linf")
    assert P.theta == 0.75 and P.p == 4.0
    with pytest.raises(ValueError):
        InterpParams(1.0, 2.0)
    with pytest.raises(ValueError):
        InterpParams(0.5, 0.5)


# -- serialization -----------------------------------------------------------------


@given(step_functions())
def test_json_round_trip_is_exact(f):
    g = from_json(json.loads(json.dumps(to_json(f))))
    np.testing.assert_array_equal(g.breaks, f.breaks)
    np.testing.assert_array_equal(g.values, f.values)


def test_pl_json_and_csv():
    g = PiecewiseLinear([0.0, 0.5, 1.0], [1.0, 0.0, 2.0])
    h = from_json(to_json(g))
    np.testing.assert_array_equal(h.xs, g.xs)
    lines = to_csv(g).strip().splitlines()
    assert lines[0] == "x,value" and len(lines) == 4
    lines = to_csv(StepFunction([0.0, 0.5, 1.0], [1.0, 2.0])).strip().splitlines()
    assert len(lines) == 5
