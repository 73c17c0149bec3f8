"""Generating functions for the positional classes and the identity checks
that pin them against the enumeration oracle.

f(x) counts primitives by size shifted down one (coefficient of x^m is the
number of primitives of size m + 1), with the closed form
2(3m)!/((2m+1)!(m+1)!). The class-(1, k) series is x f(x)^k, the bivariate
version is x t f / (1 - t f), and the a = 2 series follows either from the
halving identity |class(2, k) at n| = (n-k)/2 * a_{n-1,k} or from the
marked-tuple expansion; both assemblies are computed and must agree
exactly.

Every check returns an IdentityReport carrying the full residual series
(all nonzero coefficients), never just a boolean, so a counterexample
order would be pinpointed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Optional

from .enumeration import ClassCountTable, count_tables
from .series import BivariateSeries, TruncatedSeries

Tables = dict[int, ClassCountTable]


@dataclass
class IdentityReport:
    """Outcome of one identity check: pass iff the residual is identically
    zero. Residual entries are (n, k, coefficient); k is 0 for univariate
    residuals. Only nonzero coefficients are listed."""

    identity: str
    params: dict
    passed: bool
    residual: list[tuple[int, int, Fraction]] = field(default_factory=list)
    millis: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "pass": self.passed,
            "residual": [[n, k, str(c)] for n, k, c in self.residual],
            "millis": round(self.millis, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _report(identity: str, params: dict,
            residual: list[tuple[int, int, Fraction]], start: float) -> IdentityReport:
    return IdentityReport(identity=identity, params=params,
                          passed=not residual, residual=residual,
                          millis=(time.monotonic() - start) * 1000.0)


def _series_residual(s: TruncatedSeries) -> list[tuple[int, int, Fraction]]:
    return [(n, 0, c) for n, c in enumerate(s.coeffs) if c != 0]


def primitive_count_closed_form(n: int) -> int:
    """2(3n-3)!/((2n-1)!n!) -- the number of primitives of size n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    num = 2 * factorial(3 * n - 3)
    den = factorial(2 * n - 1) * factorial(n)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"closed form not integral at n={n}")
    return q


@lru_cache(maxsize=None)
def f_series(order: int) -> TruncatedSeries:
    """Primitive-count series: coefficient of x^m is the number of
    primitives of size m + 1 (1, 2, 6, 22, 91, 408, ...)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return TruncatedSeries.from_coeffs(
        [0] + [primitive_count_closed_form(m + 1) for m in range(1, order + 1)])


@lru_cache(maxsize=None)
def _a_nk(n: int, k: int) -> int:
    if k == 1:
        return primitive_count_closed_form(n)
    return sum(_a_nk(m, 1) * _a_nk(n - m + 1, k - 1) for m in range(2, n - k + 2))


def a_nk_recurrence(n: int, k: int) -> int:
    """Class-(1, k) count at size n via the convolution recurrence
    a_{n,k} = sum_m a_{m,1} a_{n-m+1,k-1}, grounded in the closed form."""
    if n < 3 or not 2 <= k <= n - 1:
        raise ValueError(f"recurrence needs n >= 3 and 2 <= k <= n-1, got ({n},{k})")
    return _a_nk(n, k)


def t1k_series(k: int, order: int) -> TruncatedSeries:
    """Class-(1, k) size series: x f(x)^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (f_series(order) ** k).shift(1).truncate(order)


def g1_series(order: int, torder: int) -> BivariateSeries:
    """Bivariate class-(1, k) series, closed form x t f / (1 - t f)."""
    f2 = BivariateSeries.from_univariate(f_series(order), torder)
    tf = f2.shift_t(1).truncate(order, torder)
    return (tf * tf.geometric_inverse()).shift_x(1).truncate(order, torder)


def g2_series(order: int, torder: int) -> BivariateSeries:
    """Bivariate a = 2 series, computed two independent ways --
    (x^2 dg1/dx - g1^2)/2 and (x^2 dg1/dx + x g1 - t x dg1/dt)/2 --
    which must agree exactly."""
    g1 = g1_series(order, torder)
    x2dx = g1.dx().shift_x(2).truncate(order, torder)
    route1 = (x2dx - g1 * g1).scale(Fraction(1, 2))
    xg1 = g1.shift_x(1).truncate(order, torder)
    txdt = g1.dt().shift_t(1).shift_x(1).truncate(order, torder)
    route2 = (x2dx + xg1 - txdt).scale(Fraction(1, 2))
    if route1 != route2:
        raise ArithmeticError("the two g2 assemblies disagree")
    return route1


def t2k_series(k: int, order: int) -> TruncatedSeries:
    """a = 2 size series by distance k: x^2 for k = 0,
    x^2 (x f)' / 2 for k = 1, and for k >= 2 the tuple expansion
    f^k T20 + k f^{k-1} (T21 - f T20)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    t20 = TruncatedSeries.monomial(2, order)
    if k == 0:
        return t20
    f = f_series(order)
    t21 = f.shift(1).truncate(order).dx().shift(2).truncate(order).scale(Fraction(1, 2))
    if k == 1:
        return t21
    return (f ** k) * t20 + (f ** (k - 1)) * (t21 - f * t20).scale(k)


def t_ak_bruteforce(a: int, k: int, order: int,
                    tables: Optional[Tables] = None) -> TruncatedSeries:
    """Class-(a, k) size series straight from the enumeration tables; the
    k = 0 convention counts the size-a permutations that start with a,
    i.e. |S_{a-1}(1324)| x^a."""
    if a < 1 or k < 0:
        raise ValueError("need a >= 1 and k >= 0")
    if tables is None:
        tables = count_tables(order)
    if k == 0:
        coeff = 1 if a <= 1 else tables[a - 1].total
        return TruncatedSeries.monomial(a, order, coeff)
    return TruncatedSeries.from_coeffs(
        [tables[n].count(a, k) if n >= 1 else 0 for n in range(order + 1)])


def conjecture_check(a: int, k: int, order: int = 11,
                     tables: Optional[Tables] = None) -> IdentityReport:
    """Evaluate the three conjectured expansions of the class-(a, k) series
    in powers of f, with every T_{a,j} input taken from brute force.

    Residual entries are tagged in the middle slot: 1 for the alternating
    binomial sum, 2 and 3 for prediction-minus-oracle of the two explicit
    expansions, 4 for the difference between those two predictions. Pass
    means every tagged residual is identically zero.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if k < a:
        raise ValueError(f"conjecture scope is k >= a, got a={a}, k={k}")
    start = time.monotonic()
    if tables is None:
        tables = count_tables(order)
    f = f_series(order)
    T = {j: t_ak_bruteforce(a, j, order, tables) for j in range(k + 1)}

    form1 = TruncatedSeries.zero(order)
    for j in range(k + 1):
        form1 = form1 + ((f ** j) * T[k - j]).scale((-1) ** j * comb(k, j))

    pred2 = TruncatedSeries.zero(order)
    for j in range(a):
        inner = TruncatedSeries.zero(order)
        for i in range(j + 1):
            inner = inner + ((f ** i) * T[j - i]).scale((-1) ** i * comb(j, i))
        pred2 = pred2 + ((f ** (k - j)) * inner).scale(comb(k, j))

    pred3 = TruncatedSeries.zero(order)
    for j in range(a):
        c = (-1) ** (a - j - 1) * comb(k, j) * comb(k - j - 1, a - j - 1)
        pred3 = pred3 + ((f ** (k - j)) * T[j]).scale(c)

    residual: list[tuple[int, int, Fraction]] = []
    for tag, series in ((1, form1), (2, T[k] - pred2), (3, T[k] - pred3),
                        (4, pred2 - pred3)):
        residual.extend((n, tag, c) for n, c in enumerate(series.coeffs) if c != 0)
    return _report("conjecture-expansion", {"a": a, "k": k, "order": order},
                   residual, start)


def g_identity_check(order: int = 11, tables: Optional[Tables] = None) -> IdentityReport:
    """Coefficientwise total-count identity: for 2 <= n <= order,
    |S_n(1324)| = |S_{n-1}(1324)| + sum of all class counts at n (the
    permutations starting with n are counted by the size-(n-1) total)."""
    start = time.monotonic()
    if tables is None:
        tables = count_tables(order)
    residual = []
    for n in range(2, order + 1):
        diff = tables[n].total - tables[n - 1].total - tables[n].classified_total()
        if diff:
            residual.append((n, 0, Fraction(diff)))
    return _report("total-count-partition", {"order": order}, residual, start)
