"""Finite sums of c * x^a / (1 + x^p)^b, closed under differentiation.

Two families are used: p = 2 (denominator base 1 + x^2, for the even kernels
and their per-term summands) and p = 1 (base 1 + x, for the x^n/(1+x) style
helpers).  Differentiation is exact:

    d/dx [x^a / (1+x^p)^b] = a x^{a-1} / (1+x^p)^b
                             - p b x^{a+p-1} / (1+x^p)^{b+1}

so every derivative stays inside the family with rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class RatExpr:
    """Sum of terms c * x^a / (1 + x^base_power)^b with exact coefficients."""

    base_power: int
    terms: tuple[tuple[Fraction, int, int], ...]  # (coeff, a, b)

    def __post_init__(self):
        if self.base_power not in (1, 2):
            raise ValueError("base_power must be 1 or 2")
        merged: dict[tuple[int, int], Fraction] = {}
        for c, a, b in self.terms:
            if a < 0 or b < 0:
                raise ValueError("powers must be >= 0")
            key = (a, b)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(c)
        cleaned = tuple(
            (c, a, b) for (a, b), c in sorted(merged.items()) if c != 0
        )
        object.__setattr__(self, "terms", cleaned)

    def diff(self) -> "RatExpr":
        p = self.base_power
        out: list[tuple[Fraction, int, int]] = []
        for c, a, b in self.terms:
            if a > 0:
                out.append((c * a, a - 1, b))
            if b > 0:
                out.append((-c * p * b, a + p - 1, b + 1))
        return RatExpr(p, tuple(out))

    def diff_n(self, order: int) -> "RatExpr":
        expr = self
        for _ in range(order):
            expr = expr.diff()
        return expr

    def __call__(self, x: float) -> float:
        base = 1.0 + x ** self.base_power
        return sum(float(c) * x ** a / base ** b for c, a, b in self.terms)

    def eval_exact(self, x: Fraction) -> Fraction:
        base = 1 + x ** self.base_power
        return sum(
            (c * x ** a / base ** b for c, a, b in self.terms),
            start=Fraction(0),
        )


def rat_family(terms) -> RatExpr:
    """Expression over the base 1 + x^2."""
    return RatExpr(2, tuple((Fraction(c), a, b) for c, a, b in terms))


def rat_half(terms) -> RatExpr:
    """Expression over the base 1 + x."""
    return RatExpr(1, tuple((Fraction(c), a, b) for c, a, b in terms))


def s_expr(j: int) -> RatExpr:
    """x^{2j} / (1 + x^2)."""
    return rat_family([(1, 2 * j, 1)])


def xi_expr(n: int) -> RatExpr:
    """x^n / (1 + x)."""
    return rat_half([(1, n, 1)])


def g_expr(n: int) -> RatExpr:
    """(n + 1/2) x^{2n}/(1+x^2) + x^{2n}/(1+x^2)^2."""
    return rat_family([(Fraction(2 * n + 1, 2), 2 * n, 1), (1, 2 * n, 2)])


def h_expr(n: int) -> RatExpr:
    """n x^n/(1+x) + x^n/(1+x)^2."""
    return rat_half([(n, n, 1), (1, n, 2)])
