"""Series kernels: representations, identities, and certified tails."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gammacm import kernels
from gammacm.bernoulli import bernoulli_number
from gammacm.errors import DomainError
from gammacm.kernels import HelperKind, KernelId, KernelKind


def v_bruteforce(n: int, t: float, terms: int = 200000) -> float:
    """Slow, independent oracle for the defining series of V_n."""
    return math.fsum(
        2.0 / ((t * t + (2.0 * math.pi * k) ** 2) * (2.0 * math.pi * k) ** (2 * n))
        for k in range(1, terms + 1))


def test_v_zero_exact_formula():
    for n in range(9):
        expect = (-1) ** n * bernoulli_number(2 * n + 2) / math.factorial(2 * n + 2)
        assert kernels.v_zero(n) == expect
    assert kernels.v_zero(0) == Fraction(1, 12)
    assert kernels.v_zero(1) == Fraction(1, 720)


@pytest.mark.parametrize("n,t", [(1, 0.5), (2, 1.0), (3, 5.0)])
def test_series_against_bruteforce(n, t):
    assert abs(kernels.v_series(n, t, 1e-12).value - v_bruteforce(n, t)) < 1e-12


def test_series_error_bound_honest():
    for n in (0, 1, 2):
        for t in (0.1, 1.0, 10.0):
            r = kernels.v_series(n, t, 1e-8)
            # for n = 0 the closed form is the only oracle fast enough
            truth = kernels.v_closed0(t) if n == 0 else v_bruteforce(n, t)
            assert abs(r.value - truth) <= r.error_bound + 1e-14


def test_closed_form_v0():
    # V_0(t) = ((t/2) coth(t/2) - 1)/t^2, oracle via mpmath
    for t in (1e-4, 0.01, 0.5, 0.999, 1.0, 2.0, 30.0):
        with mpmath.workdps(40):
            mt = mpmath.mpf(t)
            truth = float((mt / 2 * mpmath.coth(mt / 2) - 1) / mt ** 2)
        assert abs(kernels.v_closed0(t) - truth) < 1e-15 * max(1.0, truth / 1e-2)


def test_closed_form_seam_continuity():
    below = kernels.v_closed0(math.nextafter(1.0, 0.0))
    above = kernels.v_closed0(1.0)
    assert abs(below - above) < 1e-14


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("t", [0.01, 0.5, 1.0, 5.0, 20.0])
def test_three_representations_agree(n, t):
    series = kernels.v_series(n, t, 1e-11).value
    integral = kernels.v_integral(n, t)
    recursion = kernels.v_recursion(n, t)
    assert abs(series - integral) < 1e-10
    assert abs(series - recursion) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=3),
       st.floats(min_value=0.05, max_value=25.0))
def test_series_integral_agreement_property(n, t):
    assert abs(kernels.v_series(n, t, 1e-11).value
               - kernels.v_integral(n, t)) < 1e-10


def test_recursion_domain_guard():
    with pytest.raises(DomainError):
        kernels.v_recursion(1, 1e-6)


def test_recursion_identity():
    # t^2 V_n(t) = V_{n-1}(0) - V_{n-1}(t)
    for n in (1, 2, 3):
        for t in (0.3, 1.0, 4.0):
            lhs = t * t * kernels.v_series(n, t, 1e-14 / max(1.0, t * t)).value
            prev = (kernels.v_closed0(t) if n == 1
                    else kernels.v_series(n - 1, t, 1e-15).value)
            rhs = float(kernels.v_zero(n - 1)) - prev
            assert abs(lhs - rhs) < 1e-13


def test_second_derivative_identity():
    # V_n''(0) = -2 V_{n+1}(0)
    for n in range(4):
        d2 = kernels.kernel_eval(KernelId(KernelKind.DV_DERIV, n, 2), 0.0, 1e-13)
        assert abs(d2.value + 2.0 * float(kernels.v_zero(n + 1))) < 1e-12


def test_derivative_terms_against_numeric():
    h = 1e-6
    for n in (0, 1, 2):
        for t in (0.5, 2.0, 10.0):
            d1 = kernels.kernel_eval(KernelId(KernelKind.DV_DERIV, n, 1), t, 1e-13).value

            def v(s):
                return (kernels.v_closed0(s) if n == 0
                        else kernels.v_series(n, s, 1e-13).value)

            num = (v(t + h) - v(t - h)) / (2.0 * h)
            assert abs(d1 - num) < 1e-7


def test_kernel_families_are_weighted_v():
    for n in (1, 2, 3):
        for t in (0.5, 2.0, 10.0):
            scale = max(1.0, t ** (2 * n))
            v = kernels.v_series(n, t, 1e-13 / scale).value
            r = kernels.kernel_eval(KernelId(KernelKind.R, n), t, 1e-13).value
            lam = kernels.kernel_eval(KernelId(KernelKind.LAMBDA, n), t, 1e-13).value
            assert abs(r - t ** (2 * n) * v) < 1e-12
            assert abs(lam - t ** (2 * n - 1) * v) < 1e-12


def test_u_is_t_cubed_p():
    for n in (1, 2, 3):
        for t in (0.5, 2.0, 10.0):
            u = kernels.kernel_eval(KernelId(KernelKind.U, n), t, 1e-13).value
            p = kernels.kernel_eval(KernelId(KernelKind.P, n), t, 1e-13).value
            assert abs(u - t ** 3 * p) < 1e-11 * max(1.0, t ** 3)


def test_u_against_defining_combination():
    # U_n = t^{2n+1} V_{n-1} + t^2 (t^{2n+1} V_n)'
    h = 1e-6
    n, t = 1, 0.7
    u = kernels.kernel_eval(KernelId(KernelKind.U, n), t, 1e-13).value

    def tv(s):
        return s ** (2 * n + 1) * kernels.v_series(n, s, 1e-14).value

    direct = (t ** (2 * n + 1) * kernels.v_closed0(t)
              + t * t * (tv(t + h) - tv(t - h)) / (2.0 * h))
    assert abs(u - direct) < 1e-8


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 5.0, 20.0])
def test_p_series_matches_kernel(n, t):
    a = kernels.p_series(n, t, 1e-11).value
    b = kernels.kernel_eval(KernelId(KernelKind.P, n), t, 1e-11).value
    assert abs(a - b) < 1e-10


def test_p_at_zero():
    assert abs(kernels.p_series(1, 0.0).value - 1.0 / 12.0) < 1e-12
    assert abs(kernels.p_series(2, 0.0).value) < 1e-15


def test_kernel_eval_meets_tolerance():
    for tol in (1e-8, 1e-12):
        r = kernels.kernel_eval(KernelId(KernelKind.V, 1), 2.0, tol)
        assert r.error_bound <= tol
        assert abs(r.value - v_bruteforce(1, 2.0)) <= tol


def test_kernel_values_vectorized_consistent():
    ts = np.array([0.1, 1.0, 10.0, 100.0])
    vals, err = kernels.kernel_values(KernelId(KernelKind.R, 2), ts)
    for t, v in zip(ts, vals):
        single = kernels.kernel_eval(KernelId(KernelKind.R, 2), float(t), 1e-13).value
        assert abs(v - single) < 1e-12 + err


def test_anchor_values():
    assert abs(kernels.v_closed0(0.0) - 1.0 / 12.0) < 1e-16
    assert abs(kernels.v_closed0(1.0) - 0.0819767069) < 1e-9
    assert abs(kernels.v_series(1, 1.0, 1e-12).value - 0.0013566264) < 1e-9


def test_helper_eval_matches_expr():
    for which in (HelperKind.XI, HelperKind.H, HelperKind.G, HelperKind.S):
        expr = kernels.helper_expr(which, 2)
        for l in (0, 1, 2):
            for x in (0.0, 0.5, 3.0):
                assert kernels.helper_eval(which, 2, l, x) == expr.diff_n(l)(x)


def test_invalid_kernel_ids():
    with pytest.raises(ValueError):
        KernelId(KernelKind.P, 0)
    with pytest.raises(ValueError):
        KernelId(KernelKind.LAMBDA, 0)
