"""Internal double-double arithmetic.

The closed-form evaluators assemble sums whose terms are many orders of
magnitude larger than the result (the x**(1-p) prefactors amplify whatever
cancellation noise the summation leaves behind).  Plain float64 loses up to
15 digits there, so every closed form accumulates in double-double (~31
significant digits) and rounds once at the very end.

Representation: a pair (hi, lo) of floats with hi = fl(hi + lo) and
|lo| <= ulp(hi)/2.  Algorithms are the classic error-free transformations
(Dekker, Knuth); products use Dekker splitting because math.fma is not
available on the oldest supported interpreter.
"""

from __future__ import annotations

import math

_SPLIT = 134217729.0  # 2**27 + 1

DD = tuple  # (hi, lo)


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float):
    p = a * b
    ta = _SPLIT * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLIT * b
    bhi = tb - (tb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd(x: float) -> DD:
    """Exact embedding of a float."""
    return (float(x), 0.0)


def dd_from_int(i: int) -> DD:
    """Exact for |i| < 2**106; relative error ~1e-32 beyond."""
    hi = float(i)
    lo = float(i - int(hi))
    return (hi, lo)


def dd_from_fraction(num: int, den: int) -> DD:
    return dd_div(dd_from_int(num), dd_from_int(den))


def dd_to_float(x: DD) -> float:
    return x[0] + x[1]


def dd_add(x: DD, y: DD) -> DD:
    s, e = _two_sum(x[0], y[0])
    e += x[1] + y[1]
    return _quick_two_sum(s, e)


def dd_neg(x: DD) -> DD:
    return (-x[0], -x[1])


def dd_sub(x: DD, y: DD) -> DD:
    return dd_add(x, dd_neg(y))


def dd_mul(x: DD, y: DD) -> DD:
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p, e)


def dd_div(x: DD, y: DD) -> DD:
    q1 = x[0] / y[0]
    r = dd_sub(x, dd_mul(y, dd(q1)))
    q2 = r[0] / y[0]
    r = dd_sub(r, dd_mul(y, dd(q2)))
    q3 = r[0] / y[0]
    s, e = _quick_two_sum(q1, q2)
    return dd_add((s, e), dd(q3))


def dd_npow(x: DD, k: int) -> DD:
    """Integer power by binary exponentiation."""
    if k < 0:
        return dd_div(dd(1.0), dd_npow(x, -k))
    result = dd(1.0)
    base = x
    while k:
        if k & 1:
            result = dd_mul(result, base)
        base = dd_mul(base, base)
        k >>= 1
    return result


def dd_sqrt(x: DD) -> DD:
    s = math.sqrt(x[0])
    sd = dd(s)
    # one Newton step lifts the float64 root to full dd precision
    r = dd_sub(x, dd_mul(sd, sd))
    return dd_add(sd, dd(r[0] / (2.0 * s)))


def dd_log(y: DD) -> DD:
    """log(y) for y > 0; callers pass y = 1-x with x in (0,1)."""
    if y[0] <= 0.0:
        raise ValueError("dd_log: nonpositive argument")
    halvings = 0
    while abs(y[0] - 1.0) > 0.1716:
        y = dd_sqrt(y)
        halvings += 1
    # atanh series: log y = 2*sum z^(2m+1)/(2m+1), z = (y-1)/(y+1), |z| <= 0.086
    z = dd_div(dd_sub(y, dd(1.0)), dd_add(y, dd(1.0)))
    z2 = dd_mul(z, z)
    term = z
    total = z
    m = 1
    while True:
        term = dd_mul(term, z2)
        m += 2
        inc = dd_div(term, dd(float(m)))
        total = dd_add(total, inc)
        if abs(inc[0]) <= 1e-35 * abs(total[0]) or m > 200:
            break
    total = dd_add(total, total)
    return (math.ldexp(total[0], halvings), math.ldexp(total[1], halvings))


_LN2 = (0.6931471805599453, 2.3190468138462996e-17)


def dd_exp(u: DD) -> DD:
    m = round(u[0] / 0.6931471805599453)
    r = dd_sub(u, dd_mul(_LN2, dd(float(m))))
    term = dd(1.0)
    total = dd(1.0)
    k = 0
    while True:
        k += 1
        term = dd_div(dd_mul(term, r), dd(float(k)))
        total = dd_add(total, term)
        if abs(term[0]) <= 1e-35 * abs(total[0]) or k > 60:
            break
    return (math.ldexp(total[0], m), math.ldexp(total[1], m))


def dd_expm1(u: DD) -> DD:
    if abs(u[0]) < 0.2:
        # direct Taylor keeps full relative accuracy through the cancellation
        term = dd(1.0)
        total = dd(0.0)
        k = 0
        while True:
            k += 1
            term = dd_div(dd_mul(term, u), dd(float(k)))
            total = dd_add(total, term)
            # the absolute floor lets u == 0 terminate
            if abs(term[0]) <= 1e-35 * abs(total[0]) + 1e-320 or k > 60:
                break
        return total
    return dd_sub(dd_exp(u), dd(1.0))


def power_integral_dd(shift: int, n: float, one_minus_x: DD, log_1mx: DD) -> DD:
    """Integral of s**(shift - n) over [1-x, 1] in dd.

    shift is an integer loop index; n is the real series parameter.  The
    combined exponent w = shift - n + 1 is held as a dd built from exact
    parts so that a non-dyadic n costs no precision.
    """
    w = dd_add(dd_from_int(shift + 1), dd(-n))
    wi = round(w[0])
    if abs(w[0] - wi) < 1e-9 and abs(w[1]) < 1e-9:
        wi = int(wi)
        if wi == 0:
            return dd_neg(log_1mx)
        pw = dd_npow(one_minus_x, wi)
        return dd_div(dd_sub(dd(1.0), pw), dd_from_int(wi))
    arg = dd_mul(w, log_1mx)
    return dd_div(dd_neg(dd_expm1(arg)), w)
