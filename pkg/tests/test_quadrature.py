"""Adaptive Laplace quadrature against closed forms and mpmath oracles."""

import math

import mpmath
import numpy as np
import pytest

from gammacm import kernels, quadrature
from gammacm.kernels import KernelId, KernelKind


def binet_oracle(x: float) -> float:
    """mu(x) = log Gamma(x) - (x - 1/2) log x + x - log(2 pi)/2."""
    with mpmath.workdps(40):
        mx = mpmath.mpf(x)
        return float(mpmath.loggamma(mx) - (mx - 0.5) * mpmath.log(mx)
                     + mx - 0.5 * mpmath.log(2 * mpmath.pi))


def test_binet_known_value():
    # mu(1) = 1 - log(2 pi)/2
    r = quadrature.binet_integral(1.0, 1e-13)
    truth = 1.0 - 0.5 * math.log(2.0 * math.pi)
    assert abs(r.value - truth) < 1e-12


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0, 10.0, 50.0])
def test_binet_against_mpmath(x):
    r = quadrature.binet_integral(x, 1e-13)
    truth = binet_oracle(x)
    assert abs(r.value - truth) <= r.abs_error_estimate + r.tail_bound + 1e-13


def test_binet_error_budget_is_honest():
    for x in (0.7, 3.0, 20.0):
        for tol in (1e-8, 1e-11):
            r = quadrature.binet_integral(x, tol)
            assert abs(r.value - binet_oracle(x)) <= tol
            assert r.abs_error_estimate + r.tail_bound <= tol


def test_laplace_r0_equals_binet():
    for x in (1.0, 4.0):
        a = quadrature.laplace(KernelId(KernelKind.R, 0), x, 1e-12).value
        b = quadrature.binet_integral(x, 1e-12).value
        assert abs(a - b) < 5e-12


def test_laplace_decreasing_in_x():
    for kind, n in ((KernelKind.R, 1), (KernelKind.LAMBDA, 2), (KernelKind.P, 1)):
        vals = [quadrature.laplace(KernelId(kind, n), x, 1e-11).value
                for x in (1.0, 2.0, 4.0, 8.0)]
        assert all(a > b > 0.0 for a, b in zip(vals, vals[1:]))


def test_laplace_mpmath_cross_check():
    # independent high-precision evaluation of one Laplace transform
    x, n = 3.0, 1
    got = quadrature.laplace(KernelId(KernelKind.R, n), x, 1e-12).value

    def integrand(t):
        tf = float(t)
        v = kernels.v_series(n, tf, 1e-14).value if tf > 0 else float(kernels.v_zero(n))
        return mpmath.e ** (-x * t) * t ** (2 * n) * v

    truth = float(mpmath.quad(integrand, [0, 5, 50]))
    assert abs(got - truth) < 1e-11


def test_growth_envelopes_dominate_kernels():
    ts = np.geomspace(4.0, 200.0, 25)
    for kind, n in ((KernelKind.V, 0), (KernelKind.V, 2), (KernelKind.R, 0),
                    (KernelKind.R, 2), (KernelKind.LAMBDA, 1),
                    (KernelKind.LAMBDA, 3), (KernelKind.P, 1), (KernelKind.P, 2)):
        id = KernelId(kind, n)
        env = quadrature.envelope_for(id)
        vals, err = kernels.kernel_values(id, ts)
        for t, v in zip(ts, vals):
            assert v - err <= env.C * t ** env.m


def test_envelope_tail_integral_closed_form():
    env = quadrature.GrowthEnvelope(C=2.0, m=2, T0=4.0)
    x, T = 1.5, 6.0
    truth = float(mpmath.quad(lambda t: 2.0 * t ** 2 * mpmath.e ** (-x * t),
                              [T, mpmath.inf]))
    assert abs(env.tail_integral(x, T) - truth) < 1e-12


def test_integrate_adaptive_polynomial():
    value, err, _ = quadrature.integrate_adaptive(lambda t: t ** 3, 0.0, 2.0, 1e-12)
    assert abs(value - 4.0) < 1e-12
    assert err <= 1e-12


def test_integrate_adaptive_oscillatory():
    value, _, _ = quadrature.integrate_adaptive(np.cos, 0.0, 40.0, 1e-11)
    assert abs(value - math.sin(40.0)) <= 1e-10


def test_fractional_integral_constant_density():
    # I_alpha of density 1 is t^alpha / Gamma(alpha + 1)
    for alpha in (0.5, 1.0, 1.7, 3.0):
        for t in (0.5, 2.0):
            got = quadrature.fractional_integral(lambda s: 1.0, alpha, t)
            truth = t ** alpha / math.gamma(alpha + 1.0)
            assert abs(got - truth) < 1e-9


def test_fractional_integral_half_order_sqrt_law():
    # alpha = 1/2, density 1: 2 sqrt(t) / sqrt(pi)
    t = 1.0
    got = quadrature.fractional_integral(lambda s: 1.0, 0.5, t)
    assert abs(got - 2.0 / math.sqrt(math.pi)) < 1e-9


def test_fractional_integral_at_order_one_is_plain():
    got = quadrature.fractional_integral(lambda s: s * s, 1.0, 3.0)
    assert abs(got - 9.0) < 1e-10
