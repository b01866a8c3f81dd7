"""The remainder kernels V_n and everything derived from them.

V_n(t) is the positive kernel in the even-order remainder of the expansion of
t/(e^t - 1):

    V_n(t) = sum_{k>=1} 2 / ((t^2 + 4 pi^2 k^2) (2 pi k)^{2n}).

With x = t/(2 pi k) every summand reduces to a rational-family expression
c * x^a / (1+x^2)^b scaled by a power of (2 pi k), so derivatives of any of
the derived kernels (r_n = t^{2n} V_n, lambda_n = t^{2n-1} V_n, p_n, U_n)
are available in closed form, term by term.  No numeric differentiation is
used anywhere; positivity checks downstream rely on that.

Truncated series carry a rigorous tail bound.  The tail over k > K is summed
with a binomial expansion of (1 + x^2)^{-b} in Hurwitz zeta values; the
expansion is alternating with decreasing terms once x <= 1/2, so the first
omitted term bounds the truncation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import zeta as _scipy_zeta

from .bernoulli import RationalTable, default_table
from .errors import ConvergenceError, DomainError
from .ratexpr import RatExpr, g_expr, h_expr, s_expr, xi_expr

TWO_PI = 2.0 * math.pi

SERIES_ITERATION_CAP = 10 ** 7
T_REC_MIN = 1e-2


class KernelKind(Enum):
    V = "v"
    R = "r"
    LAMBDA = "lambda"
    U = "u"
    P = "p"
    DV_DERIV = "dv"


@dataclass(frozen=True)
class KernelId:
    kind: KernelKind
    n: int
    deriv_order: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.deriv_order < 0:
            raise ValueError("deriv_order must be >= 0")
        if self.kind in (KernelKind.U, KernelKind.P, KernelKind.LAMBDA) and self.n < 1:
            raise ValueError(f"kernel {self.kind.value} requires n >= 1")


@dataclass(frozen=True)
class KernelEval:
    value: float
    error_bound: float
    terms_used: int


# A series term (c, e, a, b) denotes  sum_k c (2 pi k)^{-e} x^a / (1+x^2)^b
# with x = t/(2 pi k).  The k-decay exponent is s = e + a and must be >= 2.
SeriesTerm = tuple[float, int, int, int]


@lru_cache(maxsize=None)
def _hurwitz(s: int, q: int) -> float:
    return float(_scipy_zeta(s, q))


def _zeta(s: int) -> float:
    return _hurwitz(s, 1)


def base_terms(kind: KernelKind, n: int) -> tuple[SeriesTerm, ...]:
    if kind in (KernelKind.V, KernelKind.DV_DERIV):
        return ((2.0, 2 * n + 2, 0, 1),)
    if kind is KernelKind.R:
        return ((2.0, 2, 2 * n, 1),)
    if kind is KernelKind.LAMBDA:
        return ((2.0, 3, 2 * n - 1, 1),)
    if kind is KernelKind.P:
        # p_n = r_{n-1} + lambda_n + r_n'
        return (
            (2.0, 2, 2 * n - 2, 1),
            (4.0 * n - 2.0, 3, 2 * n - 1, 1),
            (4.0, 3, 2 * n - 1, 2),
        )
    if kind is KernelKind.U:
        # U_n = t^{2n+1} V_{n-1} + t^2 (t^{2n+1} V_n)'
        return (
            (2.0, -1, 2 * n + 1, 1),
            (4.0 * n + 2.0, 0, 2 * n + 2, 1),
            (-4.0, 0, 2 * n + 4, 2),
        )
    raise ValueError(f"unknown kernel kind {kind}")


def tv_terms(power: int, n: int) -> tuple[SeriesTerm, ...]:
    """Series terms of t^power * V_n(t)."""
    return ((2.0, 2 * n + 2 - power, power, 1),)


def diff_terms(terms) -> tuple[SeriesTerm, ...]:
    """Differentiate a term list once with respect to t (exact coefficients)."""
    out: dict[tuple[int, int, int], float] = {}
    for c, e, a, b in terms:
        # d/dt pulls out 1/(2 pi k) and differentiates in x
        if a > 0:
            key = (e + 1, a - 1, b)
            out[key] = out.get(key, 0.0) + c * a
        key = (e + 1, a + 1, b + 1)
        out[key] = out.get(key, 0.0) - 2.0 * c * b
    return tuple((c, e, a, b) for (e, a, b), c in sorted(out.items()) if c != 0.0)


def _choose_k(t_max: float) -> int:
    # guarantees x = t/(2 pi K) <= 1/4 so the tail expansion is enveloping
    # with room to spare
    return max(32, int(math.ceil(2.0 * t_max / math.pi)))


def eval_terms(terms, t, K: int | None = None):
    """Evaluate a term list at t (scalar or array).

    Returns (values, error_bound, K).  The error bound covers series
    truncation only; it is rigorous, not an estimate.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0):
        raise DomainError("t must be >= 0")
    if K is None:
        K = _choose_k(float(t_arr.max(initial=0.0)))
    k = np.arange(1, K + 1, dtype=float)
    tpk = TWO_PI * k
    x = t_arr[None, :] / tpk[:, None]
    one_px2 = 1.0 + x * x

    values = np.zeros_like(t_arr)
    err = 0.0
    t_over = t_arr / TWO_PI
    w = t_over * t_over
    for c, e, a, b in terms:
        s = e + a
        if s < 2:
            raise ValueError(f"nonsummable term (e={e}, a={a})")
        direct = c * np.sum(tpk[:, None] ** (-e) * x ** a / one_px2 ** b, axis=0)
        J = max(10, 2 * b + 2)
        pref = c * t_over ** a * TWO_PI ** (-e)
        tail = np.zeros_like(t_arr)
        for j in range(J + 1):
            coef = (-1.0) ** j * math.comb(b - 1 + j, j)
            tail += coef * w ** j * _hurwitz(s + 2 * j, K + 1)
        rem = (
            abs(c) * float(np.max(t_over ** a * w ** (J + 1)))
            * TWO_PI ** (-e)
            * math.comb(b + J, J + 1)
            * _hurwitz(s + 2 * (J + 1), K + 1)
        )
        values += direct + pref * tail
        err += rem
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(values[0]), err, K
    return values, err, K


def v_zero(n: int, table: RationalTable | None = None) -> Fraction:
    """Exact V_n(0) = (-1)^n B_{2n+2} / (2n+2)!."""
    tbl = table or default_table()
    return (-1) ** n * tbl.bernoulli_number(2 * n + 2) / math.factorial(2 * n + 2)


def v_series(n: int, t: float, tol: float) -> KernelEval:
    """Plain partial sum of the defining series with an explicit tail bound.

    For n >= 1 the tail over k > K is below
    2 / ((2 pi)^{2n+2} (2n+1) K^{2n+1}); for n = 0 the comparison integral
    gives 1/(2 pi^2 K) uniformly in t, so very small tolerances are only
    reachable for n >= 1.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if t < 0:
        raise DomainError("t must be >= 0")
    if n >= 1:
        K = int(math.ceil(
            (2.0 / (TWO_PI ** (2 * n + 2) * (2 * n + 1) * tol)) ** (1.0 / (2 * n + 1))
        ))
        K = max(K, 10)
        if K > SERIES_ITERATION_CAP:
            raise ConvergenceError(
                f"v_series(n={n}) cannot reach tol={tol} within "
                f"{SERIES_ITERATION_CAP} terms")
        tail = 2.0 / (TWO_PI ** (2 * n + 2) * (2 * n + 1) * K ** (2 * n + 1))
    else:
        K = max(10, int(math.ceil(1.0 / (2.0 * math.pi ** 2 * tol))))
        if K > SERIES_ITERATION_CAP:
            raise ConvergenceError(
                f"v_series(n=0) cannot reach tol={tol} within "
                f"{SERIES_ITERATION_CAP} terms (use v_closed0)")
        if t > 0:
            tail = (math.pi / 2 - math.atan(TWO_PI * K / t)) / (math.pi * t)
        else:
            tail = 1.0 / (2.0 * math.pi ** 2 * K)
    total = 0.0
    chunk = 500_000
    t2 = t * t
    for lo in range(1, K + 1, chunk):
        k = np.arange(lo, min(lo + chunk, K + 1), dtype=float)
        total += float(np.sum(2.0 / ((t2 + (TWO_PI * k) ** 2) * (TWO_PI * k) ** (2 * n))))
    return KernelEval(value=total, error_bound=tail, terms_used=K)


@lru_cache(maxsize=1)
def _v0_taylor_coeffs() -> tuple[float, ...]:
    # V_0(t) = sum_{k>=1} B_{2k} t^{2k-2} / (2k)!  (radius 2 pi)
    tbl = default_table()
    return tuple(float(tbl.bernoulli_number(2 * k)) / math.factorial(2 * k)
                 for k in range(1, 10))


# The closed form computes ((t/2) coth(t/2) - 1) with an absolute error of
# about one ulp of 1, which the division by t^2 blows up to ~2e-16/t^2.
# Below this threshold the Taylor polynomial (exact to ~1 ulp there) is used.
T_SWITCH_CLOSED0 = 1.0


def v_closed0(t):
    """Closed form V_0(t) = ((t/2) coth(t/2) - 1) / t^2, vectorized,
    with a Taylor branch below t = 1 to dodge the small-t cancellation."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(t_arr)
    small = t_arr < T_SWITCH_CLOSED0
    ts = t_arr[small]
    acc = np.zeros_like(ts)
    for c in reversed(_v0_taylor_coeffs()):
        acc = acc * ts * ts + c
    out[small] = acc
    tl = t_arr[~small]
    half = tl / 2.0
    out[~small] = (half / np.tanh(half) - 1.0) / (tl * tl)
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out[0])
    return out


def v_recursion(n: int, t: float, t_rec_min: float = T_REC_MIN) -> float:
    """V_n(t) by n applications of t^2 V_n(t) = V_{n-1}(0) - V_{n-1}(t).

    Each level divides a cancelling difference by t^2, losing roughly
    2 log10(1/t) digits for t < 1, so the recursion runs in mpmath at a
    working precision sized to the expected loss and rounds once at the end.
    """
    if n < 1:
        raise ValueError("v_recursion requires n >= 1")
    if t < t_rec_min:
        raise DomainError(
            f"t={t} below t_rec_min={t_rec_min}; use v_series instead")
    extra = 0
    if t < 1.0:
        extra = int(math.ceil((2 * n + 2) * math.log10(1.0 / t)))
    with mpmath.workdps(25 + extra):
        tm = mpmath.mpf(t)
        v = ((tm / 2) * mpmath.coth(tm / 2) - 1) / tm ** 2
        for k in range(1, n + 1):
            z = v_zero(k - 1)
            v = (mpmath.mpf(z.numerator) / z.denominator - v) / tm ** 2
        return float(v)


@lru_cache(maxsize=64)
def _integral_moments(n: int, count: int) -> tuple[float, ...]:
    """Floats of int_0^1 B_{2n+1}(u) u^j du for j = 0..count-1."""
    poly = default_table().bernoulli_poly(2 * n + 1)
    return tuple(float(poly.moment_unit_interval(j)) for j in range(count))


def v_integral(n: int, t: float) -> float:
    """V_n(t) from the Bernoulli-polynomial integral representation.

    The integral of e^{tu} (-1)^n B_{2n+1}(u) over [0,1] is expanded in
    powers of t with exact polynomial moments; the zeroth moment vanishes, so
    a factor of t cancels against 1/(e^t - 1) and the formula is regular at
    t = 0.
    """
    if t < 0:
        raise DomainError("t must be >= 0")
    count = int(3 * t + 60)
    moments = _integral_moments(n, count)
    acc = 0.0
    tpow = 1.0  # t^{j-1} starting at j = 1
    for j in range(1, count):
        term = moments[j] * tpow / math.factorial(j)
        acc += term
        tpow *= t
        if j > 5 and abs(term) < 1e-18 * abs(acc):
            break
    front = 1.0 if t == 0 else t / math.expm1(t)
    return (-1.0) ** n * front * acc / math.factorial(2 * n + 1)


def kernel_eval(id: KernelId, t: float, tol: float = 1e-10) -> KernelEval:
    """Evaluate a kernel (or an exact derivative of one) with a rigorous
    truncation bound."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    terms = base_terms(id.kind, id.n)
    for _ in range(id.deriv_order):
        terms = diff_terms(terms)
    K = _choose_k(float(t))
    for _ in range(12):
        value, err, K_used = eval_terms(terms, t, K=K)
        if err <= tol:
            return KernelEval(value=value, error_bound=err, terms_used=K_used)
        K *= 2
        if K > SERIES_ITERATION_CAP:
            break
    raise ConvergenceError(
        f"kernel_eval({id}) cannot reach tol={tol}",
        best_value=value, best_bound=err)


def kernel_values(id: KernelId, t_array):
    """Vectorized kernel values for quadrature; returns (values, error_bound)."""
    terms = base_terms(id.kind, id.n)
    for _ in range(id.deriv_order):
        terms = diff_terms(terms)
    values, err, _ = eval_terms(terms, t_array)
    return values, err


def p_series(n: int, t: float, tol: float = 1e-10) -> KernelEval:
    """p_n(t) summed directly from its three-part series representation.

    Independent of :func:`kernel_eval`: the per-k summand is evaluated as
    written, with t^2 + (2 pi k)^2 denominators, and the three tails are
    bounded by geometric expansions against Hurwitz zeta values.
    """
    if n < 1:
        raise ValueError("p_series requires n >= 1")
    if t < 0:
        raise DomainError("t must be >= 0")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    if t == 0.0:
        if n == 1:
            return KernelEval(value=2.0 * TWO_PI ** -2 * _zeta(2),
                              error_bound=0.0, terms_used=0)
        return KernelEval(value=0.0, error_bound=0.0, terms_used=0)

    K = _choose_k(t)
    J = 12
    for _ in range(10):
        k = np.arange(1, K + 1, dtype=float)
        tpk = TWO_PI * k
        den = t * t + tpk * tpk
        bracket = (
            2.0 * tpk / den
            + 4.0 * tpk * t / (den * den)
            + (2 * n - 1) / tpk * 2.0 * t / den
        )
        direct = float(np.sum(t ** (2 * n - 2) * tpk ** (1 - 2 * n) * bracket))

        y = (t / (TWO_PI * K)) ** 2  # tail expansion variable at its largest
        tow = (t / TWO_PI) ** 2
        tail = 0.0
        for j in range(J + 1):
            sgn = (-1.0) ** j
            zj1 = _hurwitz(2 * n + 2 * j, K + 1)
            zj2 = _hurwitz(2 * n + 2 + 2 * j, K + 1)
            tail += sgn * tow ** j * (
                2.0 * t ** (2 * n - 2) * TWO_PI ** (-2 * n) * zj1
                + 4.0 * (j + 1) * t ** (2 * n - 1) * TWO_PI ** (-2 * n - 2) * zj2
                + 2.0 * (2 * n - 1) * t ** (2 * n - 1) * TWO_PI ** (-2 * n - 2) * zj2
            )
        zr1 = _hurwitz(2 * n + 2 * (J + 1), K + 1)
        zr2 = _hurwitz(2 * n + 2 + 2 * (J + 1), K + 1)
        rem = tow ** (J + 1) * (
            2.0 * t ** (2 * n - 2) * TWO_PI ** (-2 * n) * zr1
            + 4.0 * (J + 2) / (1.0 - y) ** 2
            * t ** (2 * n - 1) * TWO_PI ** (-2 * n - 2) * zr2
            + 2.0 * (2 * n - 1) * t ** (2 * n - 1) * TWO_PI ** (-2 * n - 2) * zr2
        )
        if rem <= tol:
            return KernelEval(value=direct + tail, error_bound=rem, terms_used=K)
        K *= 2
    raise ConvergenceError(f"p_series(n={n}, t={t}) cannot reach tol={tol}")


class HelperKind(Enum):
    XI = "xi"
    S = "s"
    G = "g"
    H = "h"


def helper_expr(which: HelperKind, n: int) -> RatExpr:
    if which is HelperKind.XI:
        return xi_expr(n)
    if which is HelperKind.S:
        return s_expr(n)
    if which is HelperKind.G:
        return g_expr(n)
    if which is HelperKind.H:
        return h_expr(n)
    raise ValueError(f"unknown helper {which}")


def helper_eval(which: HelperKind, n: int, deriv_order: int, x: float) -> float:
    """Exact derivative of one of the scalar helper functions at x >= 0."""
    if x < 0:
        raise DomainError("x must be >= 0")
    return helper_expr(which, n).diff_n(deriv_order)(x)
