"""Polylogarithm Li_k and its termwise-differentiated series.

Li_1 is closed form (-log(1-x)).  Higher orders sum x**j / j**k.  The
derivative series realizes (Li_j)^(d) directly with factorial weights, which
is what the operator-moment formulas consume; symbolic differentiation is
deliberately avoided.
"""

from __future__ import annotations

import math
from functools import lru_cache

from ._dd import DD, dd, dd_add, dd_div, dd_from_int, dd_mul
from .numcore import (
    DEFAULT_POLICY, DomainError, EvalPolicy, InvalidParams, NotConverged,
    sum_series,
)

# series domain: strictly inside the unit interval, except the x=1 endpoint
# for k >= 2 where the tail is integrable
_EDGE = 1.0 - 1e-6


def polylog(k: int, x: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Li_k(x) for integer k >= 1.

    At x = 1 (k >= 2 only) the series is capped at policy.max_terms and the
    integral tail N**(1-k)/(k-1) is added; good to about 1e-10 for k = 2 at
    the default cap, which is all the diagnostics need.
    """
    if k < 1:
        raise InvalidParams("order k must be >= 1")
    at_one = k >= 2 and x == 1.0
    if not (abs(x) <= _EDGE or at_one):
        raise DomainError("polylog series requires |x| <= 1 - 1e-6, or x = 1 with k >= 2")
    if k == 1:
        return -math.log1p(-x)
    if x == 0.0:
        return 0.0

    def terms():
        t = x
        j = 1
        while True:
            yield t
            t *= x * (j / (j + 1.0)) ** k
            j += 1

    res = sum_series(terms(), policy)
    if at_one:
        n_last = res.terms_used
        return res.value + n_last ** (1 - k) / (k - 1)
    if not res.converged:
        raise NotConverged("polylog series did not converge")
    return res.value


def polylog_derivative_series(j: int, d: int, x: float,
                              policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """d-th derivative of Li_j at x, via the factorial-weighted series.

    Li_0(x) := x/(1-x), so j = 0 gives the derivatives of that base case:
    (Li_0)^(d)(x) = d!/(1-x)**(d+1).
    """
    if j < 0:
        raise InvalidParams("j must be >= 0")
    if d < 1:
        raise InvalidParams("d must be >= 1")
    if not 0.0 <= x < 1.0:
        raise DomainError("derivative series requires 0 <= x < 1")

    def terms():
        t = math.factorial(d) / float(d) ** j
        k = 0
        while True:
            yield t
            t *= x * (k + d + 1) / (k + 1.0) * ((k + d) / (k + d + 1.0)) ** j
            k += 1

    res = sum_series(terms(), policy)
    if not res.converged:
        raise NotConverged("polylog derivative series did not converge")
    return res.value


@lru_cache(maxsize=4096)
def _polylog_dd(k: int, x: float) -> DD:
    """Li_k(x) in double-double, for the basis evaluator.  0 < x < 1, k >= 2."""
    xd = dd(x)
    term = xd
    total = dd(0.0)
    j = 1
    while True:
        total = dd_add(total, term)
        if abs(term[0]) <= 1e-33 * abs(total[0]):
            return total
        j += 1
        term = dd_mul(term, xd)
        term = dd_div(dd_mul(term, dd_from_int((j - 1) ** k)), dd_from_int(j ** k))
        if j > 2000000:
            raise NotConverged("double-double polylog series stalled")
