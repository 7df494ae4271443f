"""A Heun-equation family whose solutions expand in Gauss 2F1 functions.

The family fixes the singular point a = 1/2 and ties all seven Heun
parameters to a triple (m, n, p).  The expansion

    u(x) = sum_k c_k * 2F1(m, n; p+2k; x)

has Pochhammer-ratio coefficients c_k decaying like k**-2.  For special n
the coefficients vanish identically from some index r on and the sum is a
finite, exact representation; heun_termination detects that index.  The
independent cross-check is a power-series oracle built from the three-term
recurrence of the equation itself, trusted on |x| < 1/2.

The expansion is kept exactly as stated, including for non-terminating
parameter choices; the test suite records where its values separate from
the oracle rather than patching either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hypergeom import HypergeomParams, hyp2f1_eval
from .numcore import (
    DEFAULT_POLICY, DomainError, EvalPolicy, InvalidParams, NotConverged,
    SeriesResult,
)


@dataclass(frozen=True)
class HeunSpec:
    """Canonical-form equation parameters.

    u'' + (gamma/x + delta/(x-1) + epsilon/(x-a)) u'
       + (alpha*beta*x - q) / (x(x-1)(x-a)) u = 0
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float
    a: float
    q: float

    def __post_init__(self):
        if self.a in (0.0, 1.0):
            raise InvalidParams("singular point a must avoid 0 and 1")
        fuchs = self.alpha + self.beta + 1.0 - (self.gamma + self.delta + self.epsilon)
        if abs(fuchs) > 1e-9:
            raise InvalidParams("parameters must satisfy alpha+beta+1 = gamma+delta+epsilon")


@dataclass(frozen=True)
class HeunFamilyParams:
    """The (m, n, p) triple: integer m >= 1, real n != 0, integer p >= m+1."""

    m: int
    n: float
    p: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParams("m must be a positive integer")
        if self.p < self.m + 1:
            raise InvalidParams("p must be >= m+1")
        if self.n == 0:
            raise InvalidParams("n must be nonzero")


def heun_params_from(fp: HeunFamilyParams) -> HeunSpec:
    """Equation parameters for the family member (m, n, p); a is always 1/2."""
    m, n, p = fp.m, fp.n, fp.p
    return HeunSpec(
        alpha=float(m),
        beta=float(n),
        gamma=p + 1.0 - m - n,
        delta=m + n - p + 1.0,
        epsilon=m + n - 1.0,
        a=0.5,
        q=(m * n - (m + n - p) * (m + n - 1.0)) / 2.0,
    )


def _coeff_ratio(fp: HeunFamilyParams, k: int) -> float:
    m, n, p = fp.m, fp.n, fp.p
    num = ((m + n - 1.0) / 2.0 + k) * ((p - m) / 2.0 + k) * ((p - n) / 2.0 + k)
    den = (k + 1.0) * (p / 2.0 + k) * ((p + 1.0) / 2.0 + k)
    return num / den


def heun_coeff(fp: HeunFamilyParams, k: int) -> float:
    """Coefficient c_k of the 2F1(m, n; p+2k; x) leaf; c_0 = 1.

    A zero Pochhammer base makes every later coefficient exactly zero, and
    the float iteration preserves that exactly.
    """
    if k < 0:
        raise InvalidParams("k must be >= 0")
    c = 1.0
    for i in range(k):
        c *= _coeff_ratio(fp, i)
        if c == 0.0:
            return 0.0
    return c


def heun_termination(fp: HeunFamilyParams):
    """Smallest r >= 1 with c_k = 0 for all k >= r, or None.

    The two vanishing conditions are m+n = 3-2r and n-p = 2r-2; n is a float
    input, so integer intent is recovered within 1e-12 (5e-13 after the
    factor of two).
    """
    candidates = []
    for raw in ((3.0 - fp.m - fp.n) / 2.0, (fp.n - fp.p + 2.0) / 2.0):
        r = round(raw)
        if r >= 1 and abs(raw - r) <= 5e-13:
            candidates.append(r)
    return min(candidates) if candidates else None


def heun_eval(fp: HeunFamilyParams, x: float, K: int,
              policy: EvalPolicy = DEFAULT_POLICY) -> SeriesResult:
    """Partial sum of the 2F1 expansion, K terms (fewer if it terminates).

    Terminating parameters give the exact finite sum and converged=True for
    any K >= r.  Otherwise convergence is reported only if the last term is
    already below policy.rel_tol relative to the sum; the series decays like
    k**-2, so large K buys accuracy slowly.
    """
    if K < 1:
        raise InvalidParams("K must be >= 1")
    if not 0.0 <= x < 1.0:
        raise DomainError("expansion requires 0 <= x < 1")
    r = heun_termination(fp)
    kmax = min(K, r) if r is not None else K
    total = 0.0
    comp = 0.0
    last = 0.0
    c = 1.0
    for k in range(kmax):
        if c == 0.0:
            last = 0.0
            break
        leaf = hyp2f1_eval(HypergeomParams(fp.m, float(fp.n), fp.p + 2 * k), x, policy)
        last = c * leaf
        y = last - comp
        t = total + y
        comp = (t - total) - y
        total = t
        c *= _coeff_ratio(fp, k)
    terminated = r is not None and r <= K
    converged = terminated or abs(last) <= policy.rel_tol * abs(total)
    return SeriesResult(
        value=total,
        terms_used=kmax,
        converged=converged,
        trunc_err_est=0.0 if terminated else abs(last),
    )


def _tail_s2(k: float) -> float:
    # sum_{i >= k} i**-2, Euler-Maclaurin
    return 1.0 / k + 1.0 / (2.0 * k ** 2) + 1.0 / (6.0 * k ** 3) - 1.0 / (30.0 * k ** 5)


def _tail_s3(k: float) -> float:
    # sum_{i >= k} i**-3
    return 1.0 / (2.0 * k ** 2) + 1.0 / (2.0 * k ** 3) + 1.0 / (4.0 * k ** 4) - 1.0 / (12.0 * k ** 6)


def heun_normalization(fp: HeunFamilyParams,
                       policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """u(0) = sum_k c_k, the value the oracle comparisons normalize by.

    Terminating parameters sum exactly.  Otherwise the coefficients behave
    like (A + B/k + ...)/k**2 for large k; the sum takes 20000 terms and
    closes with a fitted two-term tail, with the fit's own residual driving
    a NotConverged check.
    """
    r = heun_termination(fp)
    if r is not None:
        c = 1.0
        vals = []
        for k in range(r):
            vals.append(c)
            c *= _coeff_ratio(fp, k)
        return math.fsum(vals)
    K = min(policy.max_terms, 20000)
    cs = [1.0]
    for k in range(K - 1):
        cs.append(cs[-1] * _coeff_ratio(fp, k))
    total = math.fsum(cs)
    if cs[-1] * cs[-2] <= 0.0:
        # tail model assumes settled sign; without it there is no bound
        raise NotConverged("normalization tail did not settle")
    y1 = cs[K - 2] * (K - 2) ** 2
    y2 = cs[K - 1] * (K - 1) ** 2
    b = (y1 - y2) * (K - 2) * (K - 1)
    a = y2 - b / (K - 1)
    tail = a * _tail_s2(float(K)) + b * _tail_s3(float(K))
    y3 = cs[K - 3] * (K - 3) ** 2
    c_est = (y3 - (a + b / (K - 3))) * (K - 3) ** 2
    total += tail
    err_est = abs(c_est) / (3.0 * K ** 3) + 1e-16 * abs(total)
    if err_est > policy.rel_tol * abs(total):
        raise NotConverged("normalization tail estimate above tolerance")
    return total


def heun_series_oracle(spec: HeunSpec, x: float, N: int) -> float:
    """Independent power-series solution around 0, normalized to u(0) = 1.

    Coefficients follow the three-term recurrence obtained by substituting
    sum d_j x**j into the equation multiplied through by x(x-1)(x-a).
    Trusted only inside |x| < min(1, |a|), the distance to the nearest other
    singular point.  gamma at 0 or a negative integer makes the recurrence
    division singular (the series solution is not unique there).
    """
    if N < 2:
        raise InvalidParams("N must be >= 2")
    if abs(x) >= min(1.0, abs(spec.a)):
        raise DomainError("oracle trusted only for |x| < min(1, |a|)")
    g = spec.gamma
    if g <= 0.0 and abs(g - round(g)) < 1e-12:
        raise DomainError("gamma at a nonpositive integer: series solution not unique")
    al, be, de, ep, a, q = spec.alpha, spec.beta, spec.delta, spec.epsilon, spec.a, spec.q
    mid1 = 1.0 + a
    midj = g * (1.0 + a) + de * a + ep
    d_prev = 0.0
    d_cur = 1.0
    total = 1.0
    comp = 0.0
    small: int = 0
    for j in range(N):
        lhs = a * (j + 1.0) * (j + g)
        mid = (mid1 * j * (j - 1.0) + midj * j + q) * d_cur
        d_next = (mid - (j - 1.0 + al) * (j - 1.0 + be) * d_prev) / lhs
        term = d_next * x ** (j + 1)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        d_prev, d_cur = d_cur, d_next
    return total


def heun_ode_residual(fp: HeunFamilyParams, x: float, h: float, K: int,
                      policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of the expansion in the equation, by 5-point stencils.

    The residual is |u'' + c1 u' + c0 u| scaled by the sum of the three
    magnitudes, so finite-difference noise of order h**2 (plus rounding of
    order eps/h**2) is the accuracy floor, not the equation itself.
    """
    if not 1e-5 <= h <= 1e-3:
        raise InvalidParams("step must lie in [1e-5, 1e-3]")
    if not 2.0 * h < x < 0.5 - 2.0 * h:
        raise DomainError("x must keep clear of the singular points 0 and 1/2")
    u = [heun_eval(fp, x + i * h, K, policy).value for i in (-2, -1, 0, 1, 2)]
    d1 = (u[0] - 8.0 * u[1] + 8.0 * u[3] - u[4]) / (12.0 * h)
    d2 = (-u[0] + 16.0 * u[1] - 30.0 * u[2] + 16.0 * u[3] - u[4]) / (12.0 * h * h)
    s = heun_params_from(fp)
    c1 = s.gamma / x + s.delta / (x - 1.0) + s.epsilon / (x - s.a)
    c0 = (s.alpha * s.beta * x - s.q) / (x * (x - 1.0) * (x - s.a))
    num = abs(d2 + c1 * d1 + c0 * u[2])
    scale = abs(d2) + abs(c1 * d1) + abs(c0 * u[2])
    if scale == 0.0:
        return 0.0
    return num / scale
