"""Gauss 2F1 with integer parameters: series oracle and elementary closed forms.

The series evaluator is the trusted oracle.  The closed forms come in four
families, by shape of the parameter triple (m, n; p):

  hyp2f1_closed_general  any integer m >= 1, real n, integer p >= m+1
                         (triple binomial sum over power integrals)
  hyp2f1_closed_m1       m = 1, real n (single sum over power integrals)
  hyp2f1_closed_1m       (1, m; m+l+1), two log-basis variants A and B
  hyp2f1_closed_12       (1, 2; n+2), three variants

All closed forms assemble in double-double and round once at the end.  The
dispatcher hyp2f1_eval routes small x to the series (the x**(1-p) prefactor
makes closed forms cancel catastrophically near 0), picks the most specific
closed form otherwise, and falls back to the series whenever a cancellation
estimate says the closed form could not keep enough digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._dd import (
    DD, dd, dd_add, dd_div, dd_from_fraction, dd_from_int, dd_log, dd_mul,
    dd_neg, dd_npow, dd_sub, dd_to_float, power_integral_dd,
)
from .numcore import (
    DEFAULT_POLICY, DomainError, EvalPolicy, InvalidParams, NotConverged,
    SeriesResult, sum_series,
)


@dataclass(frozen=True)
class HypergeomParams:
    """Parameter triple for 2F1(m, n; p; x): integer m, real n, integer p."""

    m: int
    n: float
    p: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParams("m must be a positive integer")
        if self.p < self.m + 1:
            raise InvalidParams("p must be >= m+1")


def hyp2f1_series(a: float, b: float, c: float, x: float,
                  policy: EvalPolicy = DEFAULT_POLICY) -> SeriesResult:
    """Defining series, summed by the term ratio recurrence.

    This is the oracle every closed form is tested against.  Terminating
    series (a or b a nonpositive integer) stop naturally once the terms hit
    exact zero.
    """
    if abs(x) >= 1.0:
        raise DomainError("series requires |x| < 1")
    if c <= 0 and float(c).is_integer():
        raise DomainError("lower parameter must not be zero or a negative integer")

    def terms():
        t = 1.0
        j = 0
        while True:
            yield t
            t *= (a + j) * (b + j) / ((c + j) * (j + 1)) * x
            j += 1

    return sum_series(terms(), policy)


class _Acc:
    """Double-double accumulator that remembers the largest magnitude seen.

    The ratio max_magnitude / |total| estimates how many digits the final
    cancellation burned; the dispatcher uses it to decide whether the closed
    form can be trusted.
    """

    __slots__ = ("total", "maxmag")

    def __init__(self):
        self.total = dd(0.0)
        self.maxmag = 0.0

    def add(self, term: DD):
        self.maxmag = max(self.maxmag, abs(term[0]))
        self.total = dd_add(self.total, term)
        self.maxmag = max(self.maxmag, abs(self.total[0]))

    def cancel_ratio(self) -> float:
        if self.total[0] == 0.0:
            return math.inf
        return self.maxmag / abs(self.total[0])


def _xpow_table(x: float, top: int):
    pows = [dd(1.0)]
    xd = dd(x)
    for _ in range(top):
        pows.append(dd_mul(pows[-1], xd))
    return pows


def _eq_general(m: int, n: float, p: int, x: float):
    """Triple sum over power integrals; returns (dd value, cancel ratio)."""
    omx = dd_sub(dd(1.0), dd(x))  # exact: two_sum of representables
    big_l = dd_log(omx)
    q = p - m - 1
    xpows = _xpow_table(x, q)
    acc = _Acc()
    for k in range(m):
        ck = math.comb(m - 1, k) * (-1 if k % 2 else 1)
        inner = _Acc()
        for j in range(q + 1):
            cj = math.comb(q, j) * (-1 if j % 2 else 1)
            s3 = dd(0.0)
            for i in range(j + 1):
                ci = math.comb(j, i) * (-1 if i % 2 else 1)
                integ = power_integral_dd(i + k, n, omx, big_l)
                s3 = dd_add(s3, dd_mul(dd_from_int(ci), integ))
            inner.add(dd_mul(dd_mul(dd_from_int(cj), xpows[q - j]), s3))
        acc.add(dd_mul(dd_from_int(ck), inner.total))
        acc.maxmag = max(acc.maxmag, inner.maxmag)
    # (m)_(p-m) / (p-m-1)! is the integer C(p-1, m-1)*(p-m)
    pref_int = math.comb(p - 1, m - 1) * (p - m)
    pref = dd_div(dd_from_int(pref_int), dd_npow(dd(x), p - 1))
    return dd_mul(pref, acc.total), acc.cancel_ratio()


def _eq_m1(n: float, p: int, x: float):
    """Single-sum form for m = 1; returns (dd value, cancel ratio)."""
    omx = dd_sub(dd(1.0), dd(x))
    big_l = dd_log(omx)
    ompows = [dd(1.0)]
    for _ in range(p - 2):
        ompows.append(dd_mul(ompows[-1], omx))
    acc = _Acc()
    for i in range(p - 1):
        e = p - 2 - i
        sign = -1 if e % 2 else 1
        coef = dd_from_int(sign * math.comb(p - 2, i))
        integ = power_integral_dd(i, n, omx, big_l)
        acc.add(dd_mul(dd_mul(coef, ompows[e]), integ))
    pref = dd_div(dd_from_int(p - 1), dd_npow(dd(x), p - 1))
    return dd_mul(pref, acc.total), acc.cancel_ratio()


def _eq_1m_a(m: int, l: int, x: float):
    """Variant A for 2F1(1, m; m+l+1; x); returns (dd value, cancel ratio)."""
    omx = dd_sub(dd(1.0), dd(x))
    big_l = dd_log(omx)
    ompows = [dd(1.0)]
    for _ in range(m + l):
        ompows.append(dd_mul(ompows[-1], omx))
    poch = 1
    for t in range(l + 1):
        poch *= m + t
    acc = _Acc()
    # log part: poch * (-1)^(l+1)/l! * (1-x)^l * log(1-x)
    logcoef = dd_from_fraction(poch * (-1) ** (l + 1), math.factorial(l))
    acc.add(dd_mul(logcoef, dd_mul(ompows[l], big_l)))
    mplusl = dd_from_int(m + l)
    for i in range(m + l):
        if i == m - 1:
            continue  # the i - m + 1 denominator is exactly zero here
        c = math.comb(m + l - 1, i) * (-1 if (m + l - 1 - i) % 2 else 1)
        coef = Fraction(c, i - m + 1)
        diff = dd_sub(ompows[m + l - 1 - i], ompows[l])
        term = dd_mul(dd_from_fraction(coef.numerator, coef.denominator), diff)
        acc.add(dd_mul(mplusl, term))
    result = dd_div(acc.total, dd_npow(dd(x), m + l))
    return result, acc.cancel_ratio()


def _eq_1m_b(m: int, l: int, x: float):
    """Variant B: Taylor-remainder form, a power series in x plus log part."""
    omx = dd_sub(dd(1.0), dd(x))
    big_l = dd_log(omx)
    xpows = _xpow_table(x, l + m)
    poch = 1
    for t in range(l + 1):
        poch *= m + t
    sgn = Fraction((-1) ** (l + 1), math.factorial(l))
    acc = _Acc()
    acc.add(dd_mul(dd_from_fraction(sgn.numerator, sgn.denominator),
                   dd_mul(dd_npow(omx, l), big_l)))
    for j in range(1, l + 1):
        cj = Fraction(0)
        for i in range(j):
            cj += Fraction((-1) ** i * math.comb(l, i), j - i)
        cj *= sgn
        acc.add(dd_mul(dd_from_fraction(cj.numerator, cj.denominator), xpows[j]))
    for i in range(m - 1):
        poc = 1
        for t in range(l + 1):
            poc *= i + 1 + t
        acc.add(dd_neg(dd_div(xpows[l + i + 1], dd_from_int(poc))))
    result = dd_div(dd_mul(dd_from_int(poch), acc.total), dd_npow(dd(x), m + l))
    return result, acc.cancel_ratio()


def _eq_12_1(n: int, x: float):
    """First form for 2F1(1, 2; n+2; x)."""
    omx = dd_sub(dd(1.0), dd(x))
    big_l = dd_log(omx)
    xpows = _xpow_table(x, n)
    ompows = [dd(1.0)]
    for _ in range(max(n - 1, 0)):
        ompows.append(dd_mul(ompows[-1], omx))
    acc = _Acc()
    acc.add(dd_mul(ompows[n - 1],
                   dd_add(dd(x), dd_mul(dd_from_int(n), big_l))))
    for j in range(1, n):
        c = Fraction((-1) ** j * (n - j), j)
        term = dd_mul(dd_from_fraction(c.numerator, c.denominator),
                      dd_mul(xpows[j], ompows[n - j - 1]))
        acc.add(dd_neg(term))
    sgn = -(n + 1) if n % 2 else (n + 1)
    pref = dd_div(dd_from_int(sgn), dd_npow(dd(x), n + 1))
    return dd_mul(pref, acc.total), acc.cancel_ratio()


def _eq_12_2(n: int, x: float):
    """Second form: same log core, binomial difference sum."""
    omx = dd_sub(dd(1.0), dd(x))
    big_l = dd_log(omx)
    ompows = [dd(1.0)]
    for _ in range(max(n - 1, 0)):
        ompows.append(dd_mul(ompows[-1], omx))
    acc = _Acc()
    acc.add(dd_mul(ompows[n - 1],
                   dd_add(dd(x), dd_mul(dd_from_int(n), big_l))))
    for i in range(2, n + 1):
        c = Fraction((-1) ** i * math.comb(n, i), i - 1)
        diff = dd_sub(dd_npow(omx, n - i), ompows[n - 1])
        acc.add(dd_mul(dd_from_fraction(c.numerator, c.denominator), diff))
    sgn = -(n + 1) if n % 2 else (n + 1)
    pref = dd_div(dd_from_int(sgn), dd_npow(dd(x), n + 1))
    return dd_mul(pref, acc.total), acc.cancel_ratio()


def _eq_12_3(n: int, x: float):
    """Third form: log plus pure power series, minus an (n+1)/x correction."""
    omx = dd_sub(dd(1.0), dd(x))
    big_l = dd_log(omx)
    xpows = _xpow_table(x, max(n - 1, 0))
    acc = _Acc()
    acc.add(dd_mul(dd_npow(omx, n - 1), big_l))
    for j in range(1, n):
        cj = Fraction(0)
        for i in range(j):
            cj += Fraction((-1) ** i * math.comb(n - 1, i), j - i)
        acc.add(dd_mul(dd_from_fraction(cj.numerator, cj.denominator), xpows[j]))
    nn1 = n * (n + 1)
    sgn = -nn1 if n % 2 else nn1
    pref = dd_div(dd_from_int(sgn), dd_npow(dd(x), n + 1))
    main = dd_mul(pref, acc.total)
    tail = dd_div(dd_from_int(n + 1), dd(x))
    result = dd_sub(main, tail)
    # two cancellation stages: inside the core, then main minus tail
    ratio1 = acc.cancel_ratio()
    if result[0] == 0.0:
        ratio2 = math.inf
    else:
        ratio2 = (abs(main[0]) + abs(tail[0])) / abs(result[0])
    return result, max(ratio1, ratio2)


def _check_open_unit(x: float):
    if not 0.0 < x < 1.0:
        raise DomainError("closed forms require 0 < x < 1")


def hyp2f1_closed_general(params: HypergeomParams, x: float) -> float:
    """Closed form for any (m, n; p) with integer m >= 1, p >= m+1."""
    _check_open_unit(x)
    val, _ = _eq_general(params.m, params.n, params.p, x)
    return dd_to_float(val)


def hyp2f1_closed_m1(n: float, p: int, x: float) -> float:
    """Closed form for 2F1(1, n; p; x), any real n, integer p >= 2."""
    if p < 2:
        raise InvalidParams("p must be >= 2")
    _check_open_unit(x)
    val, _ = _eq_m1(n, p, x)
    return dd_to_float(val)


def hyp2f1_closed_1m(m: int, l: int, x: float, variant: str = "A") -> float:
    """Closed form for 2F1(1, m; m+l+1; x), integers m >= 1, l >= 0.

    Variants A and B are two algebraically equal arrangements; both are kept
    because their agreement is part of the test surface.
    """
    if m < 1 or l < 0:
        raise InvalidParams("need m >= 1 and l >= 0")
    if variant not in ("A", "B"):
        raise InvalidParams("variant must be 'A' or 'B'")
    _check_open_unit(x)
    impl = _eq_1m_a if variant == "A" else _eq_1m_b
    val, _ = impl(m, l, x)
    return dd_to_float(val)


def hyp2f1_closed_12(n: int, x: float, variant: int = 1) -> float:
    """Closed form for 2F1(1, 2; n+2; x), integer n >= 1, three variants."""
    if n < 1:
        raise InvalidParams("n must be >= 1")
    if variant not in (1, 2, 3):
        raise InvalidParams("variant must be 1, 2 or 3")
    _check_open_unit(x)
    impl = {1: _eq_12_1, 2: _eq_12_2, 3: _eq_12_3}[variant]
    val, _ = impl(n, x)
    return dd_to_float(val)


# Above this estimated digit loss the closed forms cannot certify even float64
# accuracy out of the double-double assembly, so the dispatcher goes straight
# to the series.  (p-1)*log10(1/x) is the loss driven by the x**(1-p) prefactor.
_MAX_DIGIT_LOSS = 22.0

# Dispatcher rejects a closed-form value whose cancellation estimate exceeds
# this relative error.
_GUARD_REL = 1e-13


def _closed_route(m: int, n: float, p: int, x: float):
    """Most specific closed form for the shape; returns (dd value, ratio)."""
    if n == 1.0 and m > 1:
        m, n = 1, float(m)  # symmetric in the upper pair
    if m == 1 and n == 2.0 and p >= 3:
        return _eq_12_1(p - 2, x)
    if m == 1 and float(n).is_integer() and n >= 1 and p >= int(n) + 1:
        return _eq_1m_a(int(n), p - int(n) - 1, x)
    if m == 1:
        return _eq_m1(n, p, x)
    return _eq_general(m, n, p, x)


def hyp2f1_eval(params: HypergeomParams, x: float,
                policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Stability-aware dispatcher.

    Series below policy.x_switch, otherwise the most specific closed form.
    The closed value is rejected in favor of the series when the estimated
    cancellation (tracked during the double-double assembly) leaves fewer
    digits than the target tolerance, or when the a-priori digit-loss bound
    (p-1)*log10(1/x) already rules it out.
    """
    if not 0.0 <= x < 1.0:
        raise DomainError("dispatcher requires 0 <= x < 1")
    if x == 0.0:
        return 1.0
    m, n, p = params.m, params.n, params.p
    if n == 0.0:
        return 1.0  # zero upper parameter terminates the series at its first term
    # A nonpositive integer n makes the series a short exact polynomial; for
    # small degree that beats any closed form (no log, no x**(1-p) prefactor),
    # so only deeper polynomials go through the closed-form machinery.
    short_poly = n < 0.0 and float(n).is_integer() and -n <= 16
    if (not short_poly and x >= policy.x_switch
            and (p - 1) * math.log10(1.0 / x) <= _MAX_DIGIT_LOSS):
        val, ratio = _closed_route(m, n, p, x)
        f = dd_to_float(val)
        if math.isfinite(f) and math.isfinite(ratio) and ratio * 1e-31 <= _GUARD_REL:
            return f
    res = hyp2f1_series(float(m), n, float(p), x, policy)
    if not res.converged:
        raise NotConverged("series fallback did not converge")
    return res.value
