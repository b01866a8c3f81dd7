"""Exact rational Bernoulli and double-Bernoulli tables.

Everything here is computed once, eagerly, in exact rational arithmetic
(arbitrary-precision integers via :class:`fractions.Fraction`); floats only
appear at the evaluation boundary.  The numerators of B_{2k} overflow 64-bit
integers around k = 13, so there is no fast-path integer variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import TableLimitError

DEFAULT_MAX_INDEX = 60


def _pascal_rows(n: int) -> list[list[int]]:
    """Binomial coefficients C(i, j) for i <= n via the Pascal recurrence."""
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        row = [1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1]
        rows.append(row)
    return rows


@dataclass(frozen=True)
class PolyRational:
    """Polynomial with exact rational coefficients, ascending degree."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def eval_exact(self, u: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * u + c
        return acc

    def __call__(self, u: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * u + float(c)
        return acc

    def integral_unit_interval(self) -> Fraction:
        """Exact integral over [0, 1]."""
        return sum(
            (c / (d + 1) for d, c in enumerate(self.coefficients)),
            start=Fraction(0),
        )

    def moment_unit_interval(self, j: int) -> Fraction:
        """Exact integral of u^j * p(u) over [0, 1]."""
        return sum(
            (c / (d + j + 1) for d, c in enumerate(self.coefficients)),
            start=Fraction(0),
        )


class RationalTable:
    """Immutable table of Bernoulli numbers B_k and double Bernoulli numbers B_{2,k}.

    B_k follows the B_1 = -1/2 convention, matching the generating function
    t/(e^t - 1).  The double Bernoulli numbers are the coefficients of its
    square, t^2/(e^t - 1)^2, obtained by a Cauchy product.
    """

    def __init__(self, max_index: int = DEFAULT_MAX_INDEX):
        if max_index < 0:
            raise ValueError("max_index must be >= 0")
        self._max_index = max_index
        binom = _pascal_rows(max_index + 1)
        bern = [Fraction(1)]
        for k in range(1, max_index + 1):
            # sum_{j=0}^{k} C(k+1, j) B_j = 0, solved for B_k
            s = sum((Fraction(binom[k + 1][j]) * bern[j] for j in range(k)),
                    start=Fraction(0))
            bern.append(-s / (k + 1))
        double = []
        for k in range(max_index + 1):
            s = sum(
                (bern[j] / math.factorial(j) * bern[k - j] / math.factorial(k - j)
                 for j in range(k + 1)),
                start=Fraction(0),
            )
            double.append(s * math.factorial(k))
        self._bernoulli = tuple(bern)
        self._double = tuple(double)
        self._binom = binom

    @property
    def max_index(self) -> int:
        return self._max_index

    @property
    def bernoulli(self) -> tuple[Fraction, ...]:
        return self._bernoulli

    @property
    def double_bernoulli(self) -> tuple[Fraction, ...]:
        return self._double

    def _check(self, k: int) -> None:
        if k < 0:
            raise ValueError(f"index must be >= 0, got {k}")
        if k > self._max_index:
            raise TableLimitError(
                f"index {k} exceeds table limit {self._max_index}")

    def bernoulli_number(self, k: int) -> Fraction:
        self._check(k)
        return self._bernoulli[k]

    def double_bernoulli_number(self, k: int) -> Fraction:
        self._check(k)
        return self._double[k]

    def binomial(self, n: int, k: int) -> int:
        return self._binom[n][k]

    def bernoulli_poly(self, m: int) -> PolyRational:
        """B_m(u) = sum_j C(m, j) B_j u^{m-j}."""
        self._check(m)
        coeffs = [Fraction(0)] * (m + 1)
        for j in range(m + 1):
            coeffs[m - j] = Fraction(self._binom[m][j]) * self._bernoulli[j]
        return PolyRational(tuple(coeffs))

    def double_bernoulli_poly(self, k: int) -> PolyRational:
        """B_{2,k}(x) = sum_j C(k, j) B_{2,j} x^{k-j}."""
        self._check(k)
        coeffs = [Fraction(0)] * (k + 1)
        for j in range(k + 1):
            coeffs[k - j] = Fraction(self._binom[k][j]) * self._double[j]
        return PolyRational(tuple(coeffs))


@lru_cache(maxsize=4)
def default_table(max_index: int = DEFAULT_MAX_INDEX) -> RationalTable:
    return RationalTable(max_index)


def bernoulli_number(k: int, table: RationalTable | None = None) -> Fraction:
    """Exact B_k (B_1 = -1/2 convention)."""
    return (table or default_table()).bernoulli_number(k)


def bernoulli_poly(m: int, table: RationalTable | None = None) -> PolyRational:
    """Exact Bernoulli polynomial B_m(u)."""
    return (table or default_table()).bernoulli_poly(m)


def double_bernoulli_number(k: int, table: RationalTable | None = None) -> Fraction:
    """Exact B_{2,k} = B_{2,k}(0)."""
    return (table or default_table()).double_bernoulli_number(k)


def double_bernoulli_poly(k: int, table: RationalTable | None = None) -> PolyRational:
    """Exact double Bernoulli polynomial B_{2,k}(x)."""
    return (table or default_table()).double_bernoulli_poly(k)
