"""Polylogarithms and the shifted derivative series."""

import math

import mpmath as mp
import pytest

from elemhyp import (
    DomainError, EvalPolicy, InvalidParams, NotConverged, polylog,
    polylog_derivative_series,
)
from elemhyp.polylog import _EDGE, _polylog_dd

TIGHT = EvalPolicy(rel_tol=1e-14)


def test_order_one_is_the_logarithm():
    for x in (-0.5, 0.3, 0.9):
        assert polylog(1, x) == -math.log1p(-x)


@pytest.mark.parametrize("k", [2, 3, 5])
@pytest.mark.parametrize("x", [-0.9, -0.3, 0.2, 0.7, 0.99])
def test_polylog_vs_mpmath(k, x):
    with mp.workdps(40):
        want = float(mp.polylog(k, mp.mpf(x)))
    assert math.isclose(polylog(k, x, TIGHT), want, rel_tol=1e-11)


def test_polylog_at_the_unit_edge():
    # the tail estimate recovers the zeta value to the estimate's own order
    with mp.workdps(40):
        assert math.isclose(polylog(2, 1.0), float(mp.zeta(2)), rel_tol=1e-9)
        assert math.isclose(polylog(3, 1.0), float(mp.zeta(3)), rel_tol=1e-10)
        assert math.isclose(polylog(5, 1.0), float(mp.zeta(5)), rel_tol=1e-12)


def test_polylog_domain():
    with pytest.raises(InvalidParams):
        polylog(0, 0.5)
    with pytest.raises(DomainError):
        polylog(1, 1.0)  # divergent
    with pytest.raises(DomainError):
        polylog(2, 1.0000001)
    with pytest.raises(DomainError):
        polylog(2, -1.01)
    polylog(2, _EDGE, EvalPolicy(max_terms=100000, rel_tol=1e-6))


def test_polylog_not_converged_near_the_edge():
    with pytest.raises(NotConverged):
        polylog(2, _EDGE, EvalPolicy(max_terms=500))


@pytest.mark.parametrize("j,d,x", [
    (0, 2, 0.3), (1, 1, 0.2), (2, 3, 0.6), (3, 2, 0.5), (4, 4, 0.4),
])
def test_derivative_series_vs_mpmath(j, d, x):
    got = polylog_derivative_series(j, d, x, TIGHT)
    with mp.workdps(40):
        want = float(mp.nsum(
            lambda k: mp.factorial(d) * mp.binomial(k + d, d)
            * mp.mpf(x)**k / (k + d)**j, [0, mp.inf]))
    assert math.isclose(got, want, rel_tol=1e-11)


def test_derivative_series_order_zero_closed_form():
    # j = 0 collapses to d! / (1-x)**(d+1)
    for d in (1, 2, 5):
        x = 0.35
        got = polylog_derivative_series(0, d, x, TIGHT)
        want = math.factorial(d) / (1.0 - x) ** (d + 1)
        assert math.isclose(got, want, rel_tol=1e-12)


def test_derivative_series_validation():
    with pytest.raises(InvalidParams):
        polylog_derivative_series(-1, 2, 0.5)
    with pytest.raises(InvalidParams):
        polylog_derivative_series(2, 0, 0.5)
    with pytest.raises(DomainError):
        polylog_derivative_series(2, 2, 1.0)
    with pytest.raises(NotConverged):
        polylog_derivative_series(1, 1, 0.9, EvalPolicy(max_terms=4))


def test_internal_dd_polylog_precision():
    with mp.workdps(60):
        want = mp.polylog(2, mp.mpf(0.5))
        hi, lo = _polylog_dd(2, 0.5)
        got = mp.mpf(hi) + mp.mpf(lo)
        assert abs(got - want) / abs(want) < 1e-30
