"""Exact symbolic basis for the moment kernels f_{n,j}.

x**n * f_{n,j}(x) is a linear combination, with exact rational coefficients,
of the basis functions

    pow_ratio(i) = (1 - (1-x)**i) / (1-x)**i      (i >= 1)
    log          = log(1-x)
    polylog(k)   = Li_k(x)                        (k >= 2)

The j = 2 combo is seeded directly; each step j -> j+1 applies the linear
integration map T induced by integrating basis elements against dt/t:

    T(pow_ratio(i)) = sum_{w=1}^{i-1} pow_ratio(w)/w - log
    T(log)          = -polylog(2)
    T(polylog(k))   = polylog(k+1)

Coefficients stay exact Fractions throughout; only evaluation is floating
point (double-double internally).  The combo for every (n, j) has exactly n
terms, which the tests pin down case by case.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict

from ._dd import (
    dd, dd_add, dd_div, dd_from_fraction, dd_log, dd_mul, dd_npow, dd_sub,
    dd_to_float,
)
from .numcore import (
    DEFAULT_POLICY, DomainError, EvalPolicy, InvalidParams, NotConverged,
    SeriesResult, sum_series,
)
from .polylog import _polylog_dd

_KINDS = ("pow_ratio", "log", "polylog")
_KIND_RANK = {k: r for r, k in enumerate(_KINDS)}


@dataclass(frozen=True)
class BasisFunction:
    """One basis element; index is i for pow_ratio, k for polylog, 0 for log."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidParams(f"unknown basis kind {self.kind!r}")
        if self.kind == "pow_ratio" and self.index < 1:
            raise InvalidParams("pow_ratio index must be >= 1")
        if self.kind == "log" and self.index != 0:
            raise InvalidParams("log term carries no index")
        if self.kind == "polylog" and self.index < 2:
            raise InvalidParams("polylog order must be >= 2")

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.index)


LOG_TERM = BasisFunction("log", 0)


def pow_ratio(i: int) -> BasisFunction:
    return BasisFunction("pow_ratio", i)


def poly(k: int) -> BasisFunction:
    return BasisFunction("polylog", k)


@dataclass(frozen=True)
class SymbolicCombo:
    """x**(-n) times a rational combination of basis functions; equals f_{n,j}.

    terms maps BasisFunction -> Fraction with no zero coefficients stored.
    Treat instances as immutable.
    """

    n: int
    j: int
    terms: Dict[BasisFunction, Fraction]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParams("n must be >= 1")
        if self.j < 2:
            raise InvalidParams("combos exist for j >= 2 only")

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())


def fnj_base(n: int, j: int) -> Callable[[float], float]:
    """Closed-form evaluators for the two pre-recurrence kernels j = 0, 1."""
    if n < 1:
        raise InvalidParams("n must be >= 1")
    if j == 0:
        return lambda x: (1.0 - x) ** (-(n + 1))
    if j == 1:
        return lambda x: 1.0 / (n * (1.0 - x) ** n)
    raise InvalidParams("closed base forms exist for j in {0, 1} only")


def _seed(n: int) -> Dict[BasisFunction, Fraction]:
    # j = 2 coefficients read off the closed form of f_{n,2}
    terms: Dict[BasisFunction, Fraction] = {}
    for i in range(1, n):
        c = Fraction((-1) ** (n - 1 + i) * math.comb(n - 1, i), n * i)
        if c != 0:
            terms[pow_ratio(i)] = c
    terms[LOG_TERM] = Fraction(-((-1) ** (n - 1)), n)
    return terms


def _apply_t(terms: Dict[BasisFunction, Fraction]) -> Dict[BasisFunction, Fraction]:
    out: Dict[BasisFunction, Fraction] = defaultdict(Fraction)
    for b, c in terms.items():
        if b.kind == "pow_ratio":
            for w in range(1, b.index):
                out[pow_ratio(w)] += c * Fraction(1, w)
            out[LOG_TERM] -= c
        elif b.kind == "log":
            out[poly(2)] -= c
        else:
            out[poly(b.index + 1)] += c
    return {b: c for b, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def fnj_combo(n: int, j: int) -> SymbolicCombo:
    """Exact combo for f_{n,j}, n >= 2, j >= 2 (n = 1 degenerates gracefully).

    Built once per (n, j) and memoized; moments walk all j up to their order.
    """
    if n < 1:
        raise InvalidParams("n must be >= 1")
    if j < 2:
        raise InvalidParams("j must be >= 2")
    if j == 2:
        return SymbolicCombo(n=n, j=2, terms=_seed(n))
    prev = fnj_combo(n, j - 1)
    return SymbolicCombo(n=n, j=j, terms=_apply_t(prev.terms))


def combo_eval(c: SymbolicCombo, x: float,
               policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Numerical value of f_{n,j} from its combo.  0 < x < 1.

    Evaluation runs in double-double; the policy parameter is part of the
    call contract but the internal tolerance is fixed well below float64.
    """
    if not 0.0 < x < 1.0:
        raise DomainError("combo evaluation requires 0 < x < 1")
    omx = dd_sub(dd(1.0), dd(x))
    max_i = max((b.index for b in c.terms if b.kind == "pow_ratio"), default=0)
    ompows = [dd(1.0)]
    for _ in range(max_i):
        ompows.append(dd_mul(ompows[-1], omx))
    total = dd(0.0)
    for b, coef in c.sorted_terms():
        if b.kind == "pow_ratio":
            val = dd_div(dd_sub(dd(1.0), ompows[b.index]), ompows[b.index])
        elif b.kind == "log":
            val = dd_log(omx)
        else:
            val = _polylog_dd(b.index, x)
        cd = dd_from_fraction(coef.numerator, coef.denominator)
        total = dd_add(total, dd_mul(cd, val))
    return dd_to_float(dd_div(total, dd_npow(dd(x), c.n)))


def fnj_series(n: int, j: int, x: float,
               policy: EvalPolicy = DEFAULT_POLICY) -> SeriesResult:
    """Direct summation oracle: f_{n,j}(x) = sum C(n+k,k) x**k / (n+k)**j."""
    if n < 1:
        raise InvalidParams("n must be >= 1")
    if j < 0:
        raise InvalidParams("j must be >= 0")
    if not 0.0 <= x < 1.0:
        raise DomainError("series requires 0 <= x < 1")

    def terms():
        t = 1.0 / float(n) ** j
        k = 0
        while True:
            yield t
            t *= x * (n + k + 1) / (k + 1.0) * ((n + k) / (n + k + 1.0)) ** j
            k += 1

    res = sum_series(terms(), policy)
    if not res.converged:
        raise NotConverged("kernel series did not converge")
    return res


def combo_json_dict(c: SymbolicCombo) -> dict:
    """JSON-ready document: numerators and denominators as decimal strings."""
    entries = []
    for b, coef in c.sorted_terms():
        e: dict = {"basis": b.kind}
        if b.kind == "pow_ratio":
            e["i"] = b.index
        elif b.kind == "polylog":
            e["k"] = b.index
        e["num"] = str(coef.numerator)
        e["den"] = str(coef.denominator)
        entries.append(e)
    return {"n": c.n, "j": c.j, "terms": entries}
