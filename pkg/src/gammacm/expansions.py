"""Asymptotic expansions of log Gamma and log Gamma_2 with certified remainders.

The error control for log Gamma is bracket-based, not first-omitted-term:
the remainder after n correction terms is a completely monotonic function up
to sign, so it is positive and the sign in front alternates with n.
Consecutive partial sums are therefore two-sided bounds on the true value,
and the bracket width is an honest error certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import quadrature
from .bernoulli import RationalTable, default_table
from .errors import AccuracyError, DomainError
from .kernels import KernelId, KernelKind
from .quadrature import laplace, integrate_adaptive

import numpy as np

LOG_2PI = math.log(2.0 * math.pi)

REDUCTION_TARGET = 8.0
REDUCTION_CAP = 64
N_SEARCH_MAX = 12


@dataclass(frozen=True)
class BracketedValue:
    lower: float
    upper: float
    n_used: int
    reduction_shift: int

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class Gamma2Expansion:
    main: float
    remainder: float
    M: int
    sign_check: bool

    @property
    def value(self) -> float:
        return self.main + self.remainder


def stirling_coefficient(k: int, table: RationalTable | None = None) -> Fraction:
    """Exact B_{2k} / ((2k-1) 2k)."""
    tbl = table or default_table()
    return tbl.bernoulli_number(2 * k) / ((2 * k - 1) * 2 * k)


def stirling_tail(x: float, n: int, table: RationalTable | None = None) -> float:
    """sum_{k=1}^{n} B_{2k} / ((2k-1) 2k x^{2k-1}) in floats."""
    acc = 0.0
    for k in range(1, n + 1):
        acc += float(stirling_coefficient(k, table)) * x ** (1 - 2 * k)
    return acc


def loggamma_main(x: float) -> float:
    """(x - 1/2) log x - x + (1/2) log(2 pi)."""
    return (x - 0.5) * math.log(x) - x + 0.5 * LOG_2PI


def loggamma_partial(x: float, n: int, table: RationalTable | None = None) -> float:
    """Main terms plus n Bernoulli correction terms (no remainder)."""
    if x <= 0:
        raise DomainError("x must be > 0")
    return loggamma_main(x) + stirling_tail(x, n, table)


def loggamma(x: float, tol: float = 1e-12) -> BracketedValue:
    """Two-sided bracket of log Gamma(x) of width <= tol.

    The argument is shifted up by an integer m until consecutive partial
    sums at x + m bracket tightly enough, then log Gamma(x) is recovered
    through the recurrence log Gamma(x) = log Gamma(x+m) - sum log(x+j).
    The bracket is padded by a few ulps to absorb the rounding incurred by
    the shift.
    """
    if x <= 0:
        raise DomainError("x must be > 0")
    if tol < 1e-13:
        raise DomainError("tol below the supported floor of 1e-13")
    shift = max(0, int(math.ceil(REDUCTION_TARGET - x)))
    best = None
    while True:
        y = x + shift
        partials = [loggamma_partial(y, n) for n in range(N_SEARCH_MAX + 1)]
        lo = hi = None
        n_used = 0
        width = math.inf
        for n in range(N_SEARCH_MAX):
            a, b = partials[n], partials[n + 1]
            l, h = min(a, b), max(a, b)
            if h - l < width:
                width, lo, hi, n_used = h - l, l, h, n
        down = math.fsum(math.log(x + j) for j in range(shift))
        # rounding budget: ~4 roundings at the scale of the largest
        # intermediate of the partial sum, plus the fsum of the shift terms
        pad = 4.0 * float(np.spacing(abs(hi) + y)) + float(np.spacing(abs(down)))
        cand = BracketedValue(lower=float(lo - down - pad),
                              upper=float(hi - down + pad),
                              n_used=n_used, reduction_shift=shift)
        if best is None or cand.width < best.width:
            best = cand
        if best.width <= tol:
            return best
        if shift >= REDUCTION_CAP:
            raise AccuracyError(
                f"loggamma({x}) cannot reach tol={tol} within shift cap",
                best_value=best.midpoint, best_bound=best.width)
        shift = min(REDUCTION_CAP, max(shift + 4, 2 * shift))


def barnesg_remainder(n: int, x: float, tol: float = 1e-10) -> float:
    """P_n(x) = (-1)^n int_0^inf e^{-xt} t^{2n-1} V_n(t) dt."""
    if n < 1:
        raise DomainError("n must be >= 1")
    res = laplace(KernelId(KernelKind.LAMBDA, n), x, tol)
    return (-1.0) ** n * res.value


def _r2_tail_coeff(k: int, table: RationalTable) -> float:
    """(-1)^k B_{2,k} / k! as a float."""
    return (-1.0) ** k * float(table.double_bernoulli_number(k)) / math.factorial(k)


def _r2_integrand_factory(M: int, table: RationalTable):
    """(t^2/(1-e^{-t})^2 - sum_{k<=M} (-1)^k B_{2,k} t^k / k!) / t^3, vectorized.

    The full alternating series sums to t^2/(1-e^{-t})^2 exactly, so for
    t < 3 the difference is the series tail over k > M (no cancellation);
    for larger t the direct difference is benign.
    """
    kmax = table.max_index
    coeffs = [_r2_tail_coeff(k, table) for k in range(kmax + 1)]
    poly = coeffs[:M + 1]

    def f(ts):
        ts = np.asarray(ts, dtype=float)
        out = np.empty_like(ts)
        small = ts < 3.0
        s = ts[small]
        acc = np.zeros_like(s)
        for k in range(kmax, M, -1):
            acc = acc * s + coeffs[k]
        out[small] = acc * s ** (M - 2)  # tail starts at k = M+1; /t^3
        tl = ts[~small]
        head = np.zeros_like(tl)
        for c in reversed(poly):
            head = head * tl + c
        out[~small] = (tl ** 2 / (-np.expm1(-tl)) ** 2 - head) / tl ** 3
        return out

    return f


def r2_remainder(w: float, M: int, tol: float = 1e-10,
                 table: RationalTable | None = None) -> float:
    """The remainder R_{2,M}(w) of the double gamma expansion.

    For even M = 2n the integrand is (-1)^{n-1} p_n(t) and is evaluated
    through the kernel machinery, avoiding the cancelling difference near
    t = 0.  Odd M falls back to direct quadrature of the defining integrand.
    """
    if w <= 0:
        raise DomainError("w must be > 0")
    if M < 2:
        raise DomainError("M must be >= 2")
    tbl = table or default_table()
    if M % 2 == 0:
        n = M // 2
        res = laplace(KernelId(KernelKind.P, n), w, tol)
        return (-1.0) ** (n - 1) * res.value
    f0 = _r2_integrand_factory(M, tbl)
    env_c = 1.04 + math.fsum(
        abs(_r2_tail_coeff(k, tbl)) for k in range(M + 1))
    env = quadrature.GrowthEnvelope(C=env_c, m=M - 3, T0=4.0)
    T = quadrature._choose_cutoff(env, w, tol)

    def f(ts):
        return np.exp(-w * ts) * f0(ts)

    value, _, _ = integrate_adaptive(f, 0.0, T, 0.5 * tol)
    return value


def loggamma2_main(w: float, M: int, table: RationalTable | None = None) -> float:
    """Main terms of the expansion of log Gamma_2(w|1,1), exact coefficients."""
    tbl = table or default_table()
    b22 = tbl.double_bernoulli_poly(2)
    main = (-b22(w) / 2.0 * math.log(w)
            + 0.75 * float(tbl.double_bernoulli_number(0)) * w * w
            + float(tbl.double_bernoulli_number(1)) * w)
    for k in range(3, M + 1):
        main += ((-1.0) ** k / math.factorial(k) * math.factorial(k - 3)
                 * float(tbl.double_bernoulli_number(k)) * w ** (2 - k))
    return main


def loggamma2(w: float, M: int = 4, tol: float = 1e-10,
              table: RationalTable | None = None) -> Gamma2Expansion:
    """log Gamma_2(w|1,1) as main terms plus quadrature remainder.

    For even M = 2n the sign of the remainder is checked against the
    completely monotonic normal form (sign_check); odd M carries no sign
    guarantee and the check is skipped (reported as True vacuously would be
    misleading, so it is False only on an actual even-M violation).
    """
    if M < 2:
        raise DomainError("M must be >= 2")
    remainder = r2_remainder(w, M, tol, table)
    main = loggamma2_main(w, M, table)
    sign_check = True
    if M % 2 == 0:
        n = M // 2
        sign_check = (-1.0) ** (n - 1) * remainder > 0.0
    return Gamma2Expansion(main=main, remainder=remainder, M=M,
                           sign_check=sign_check)


_CM_FIXTURES = ("R_N", "P_N", "R2_2N", "F_N")


def cm_fixture(name: str, n: int, tol: float = 1e-11):
    """Callable x -> remainder value for the monotonicity checker.

    R_N:   R_n(x), positive, CM of order k for n >= k.
    P_N:   (-1)^n P_n(x), positive, CM of order k for n >= k+1.
    R2_2N: (-1)^{n-1} R_{2,2n}(x), positive, CM of order k for n >= k+1.
    F_N:   (-1)^n x^n (log Gamma(x) - partial_n(x)), CM (order 0).  The
           difference is assembled on the residual scale, as the Binet
           integral minus the Bernoulli correction terms; the textbook
           form x^n (log Gamma - partial) loses the entire signal to
           cancellation once x^n amplifies the ulp of log Gamma.
    """
    if name not in _CM_FIXTURES:
        raise DomainError(f"unknown fixture {name!r}; expected one of {_CM_FIXTURES}")
    if name == "R_N":
        if n < 0:
            raise DomainError("R_N requires n >= 0")
        rid = KernelId(KernelKind.R, n)
        return lambda x: laplace(rid, x, tol).value
    if name == "P_N":
        if n < 1:
            raise DomainError("P_N requires n >= 1")
        lid = KernelId(KernelKind.LAMBDA, n)
        return lambda x: laplace(lid, x, tol).value
    if name == "R2_2N":
        if n < 1:
            raise DomainError("R2_2N requires n >= 1")
        pid = KernelId(KernelKind.P, n)
        return lambda x: laplace(pid, x, tol).value
    if n < 1:
        raise DomainError("F_N requires n >= 1")

    def f_n(x):
        residual = quadrature.binet_integral(x, 1e-14).value - stirling_tail(x, n)
        return (-1.0) ** n * x ** n * residual

    return f_n
