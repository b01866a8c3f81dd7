"""The full numerical verification suite behind `verify all`.

Each criterion is a function returning a CheckResult; the pytest acceptance
module and the CLI both run these, so there is exactly one definition of
what "pass" means.  All computations are deterministic: identical runs
produce byte-identical rendered reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import expansions, kernels, monotonicity, quadrature
from .bernoulli import default_table
from .kernels import HelperKind, KernelId, KernelKind
from .monotonicity import CMOrderSpec, cm_order_check, kernel_positivity_check


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.detail}"


def check_representation_agreement() -> CheckResult:
    """Three V_n representations agree within 1e-10; anchor values hold."""
    worst = 0.0
    ok = True
    for n in (1, 2, 3):
        for t in (0.01, 0.5, 1.0, 5.0, 20.0):
            series = kernels.v_series(n, t, 1e-11).value
            integral = kernels.v_integral(n, t)
            recursion = kernels.v_recursion(n, t)
            spread = max(series, integral, recursion) - min(series, integral, recursion)
            worst = max(worst, spread)
            ok = ok and spread < 1e-10
    anchors = [
        (kernels.v_closed0(0.0), 1.0 / 12.0),
        (float(kernels.v_zero(1)), 1.0 / 720.0),
        (kernels.v_closed0(1.0), 0.0819767069),
        (kernels.v_recursion(1, 1.0), 0.0013566264),
    ]
    for got, want in anchors:
        ok = ok and abs(got - want) < 1e-9
    return CheckResult("kernel representation agreement", ok,
                       f"worst spread = {worst:.3e}")


def check_proposition_suite() -> CheckResult:
    """The four structural identities of V_n."""
    ok = True
    details = []
    # (i) t^{2n} V_n(t) telescopes down to V_0 and the V_j(0) constants
    worst = 0.0
    for n in range(5):
        for t in (0.3, 1.0, 3.0, 10.0):
            lhs = t ** (2 * n) * kernels.kernel_eval(
                KernelId(KernelKind.V, n), t, 1e-13).value
            rhs = (-1.0) ** n * kernels.v_closed0(t) + sum(
                (-1.0) ** (n - 1 - m) * float(kernels.v_zero(m)) * t ** (2 * m)
                for m in range(n))
            worst = max(worst, abs(lhs - rhs))
    ok = ok and worst < 1e-11
    details.append(f"recursion identity {worst:.2e}")
    # (ii) exact rational V_n(0), and float agreement with the series
    tbl = default_table()
    exact_ok = all(
        kernels.v_zero(n) == (-1) ** n * tbl.bernoulli_number(2 * n + 2)
        / math.factorial(2 * n + 2)
        for n in range(9))
    worst0 = max(
        abs(float(kernels.v_zero(n))
            - kernels.kernel_eval(KernelId(KernelKind.V, n), 0.0, 1e-13).value)
        for n in range(9))
    ok = ok and exact_ok and worst0 < 1e-14
    details.append(f"V_n(0) float residual {worst0:.2e}")
    # (iii) V_n''(0) = -2 V_{n+1}(0)
    worst2 = max(
        abs(kernels.kernel_eval(KernelId(KernelKind.DV_DERIV, n, 2), 0.0, 1e-13).value
            + 2.0 * float(kernels.v_zero(n + 1)))
        for n in range(4))
    ok = ok and worst2 < 1e-11
    details.append(f"V_n''(0) identity {worst2:.2e}")
    # (iv) V_n''(t) > V_n''(0) for t > 0
    grid = np.geomspace(1e-2, 30.0, 30)
    conv_ok = True
    for n in range(4):
        d0 = kernels.kernel_eval(KernelId(KernelKind.DV_DERIV, n, 2), 0.0, 1e-13).value
        for t in grid:
            dt = kernels.kernel_eval(
                KernelId(KernelKind.DV_DERIV, n, 2), float(t), 1e-13).value
            conv_ok = conv_ok and dt - d0 > 0.0
    ok = ok and conv_ok
    details.append(f"V_n'' minimum at 0: {conv_ok}")
    return CheckResult("V_n proposition suite", ok, "; ".join(details))


def check_binet_consistency() -> CheckResult:
    """Binet integral equals Stirling terms plus the signed Laplace remainder."""
    worst = 0.0
    for x in (2.0, 5.0, 10.0):
        truth = quadrature.binet_integral(x, 1e-12).value
        for n in range(4):
            rem = quadrature.laplace(KernelId(KernelKind.R, n), x, 1e-12).value
            recon = expansions.stirling_tail(x, n) + (-1.0) ** n * rem
            worst = max(worst, abs(truth - recon))
    return CheckResult("Binet consistency", worst < 5e-10,
                       f"worst |residual| = {worst:.3e}")


def check_loggamma_brackets() -> CheckResult:
    """Brackets contain the classical exact values at width <= 1e-12."""
    targets = [(1.0, 0.0), (0.5, 0.5 * math.log(math.pi)), (6.0, math.log(120.0))]
    ok = True
    worst_width = 0.0
    for x, truth in targets:
        b = expansions.loggamma(x, 1e-12)
        ok = ok and b.lower <= truth <= b.upper and b.width <= 1e-12
        worst_width = max(worst_width, b.width)
    return CheckResult("log Gamma brackets", ok,
                       f"worst width = {worst_width:.3e}")


def check_enveloping() -> CheckResult:
    """Partial sums alternate around the Binet-based truth.

    The comparison runs on the residual scale (Stirling tail minus Binet
    integral): subtracting the shared main terms first keeps the tiny
    high-n differences above the rounding floor.  Margins may still fall
    below quadrature noise for large x, hence the 1e-12 guard.
    """
    ok = True
    worst = math.inf
    for x in (5.0, 10.0, 20.0):
        t = quadrature.binet_integral(x, 1e-14).value
        for n in range(6):
            diff = expansions.stirling_tail(x, n) - t  # = partial_n - truth
            margin = (-1.0) ** (n + 1) * diff
            worst = min(worst, margin)
            ok = ok and margin > -1e-12
    return CheckResult("enveloping alternation", ok,
                       f"worst signed margin = {worst:.3e}")


def check_p_agreement() -> CheckResult:
    """Direct p_n series against the kernel-decomposition evaluation."""
    worst = 0.0
    for n in (1, 2, 3):
        for t in (0.0, 0.5, 1.0, 5.0, 20.0):
            a = kernels.p_series(n, t, 1e-11).value
            b = kernels.kernel_eval(KernelId(KernelKind.P, n), t, 1e-11).value
            worst = max(worst, abs(a - b))
    p10 = abs(kernels.p_series(1, 0.0).value - 1.0 / 12.0)
    ok = worst < 1e-10 and p10 < 1e-12
    return CheckResult("p_n representation agreement", ok,
                       f"worst |difference| = {worst:.3e}, |p_1(0)-1/12| = {p10:.1e}")


CM_CASES = (
    ("R_N", 1, 1), ("R_N", 2, 2), ("R_N", 3, 3),
    ("P_N", 2, 1), ("P_N", 3, 2),
    ("R2_2N", 2, 1), ("R2_2N", 3, 2),
    ("F_N", 1, 0), ("F_N", 2, 0), ("F_N", 3, 0),
)


def cm_reports() -> list[monotonicity.MonotonicityReport]:
    reports = []
    for name, n, k in CM_CASES:
        f = expansions.cm_fixture(name, n)
        reports.append(cm_order_check(
            f, CMOrderSpec(r=float(k)), label=f"{name.lower()} n={n} order={k}"))
    return reports


def check_cm_theorems() -> CheckResult:
    """Order-k complete monotonicity of all three remainder families, plus
    the negative control."""
    reports = cm_reports()
    ok = all(r.verdict for r in reports)
    failed = [r.label for r in reports if not r.verdict]
    control = cm_order_check(
        lambda x: 1.0 / (1.0 + x * x),
        CMOrderSpec(r=0.0, max_diff_order=4,
                    grid=tuple(float(v) for v in np.geomspace(0.1, 5.0, 10))),
        label="negative control")
    ok = ok and not control.verdict
    detail = f"{sum(r.verdict for r in reports)}/{len(reports)} fixtures pass"
    if failed:
        detail += f" (failed: {', '.join(failed)})"
    detail += f"; negative control fails: {not control.verdict}"
    return CheckResult("CM theorem suite", ok, detail)


def check_kernel_positivity() -> CheckResult:
    """Exact-derivative positivity and vanishing-at-zero for all kernels."""
    grid = np.geomspace(1e-3, 50.0, 20)
    ok = True
    worst = math.inf
    for n in range(1, 4):
        for kind, max_l in ((KernelKind.R, n), (KernelKind.LAMBDA, n - 1),
                            (KernelKind.P, n - 1)):
            rep = kernel_positivity_check(
                KernelId(kind, n), range(max_l + 1), grid)
            ok = ok and rep.verdict
            worst = min(worst, rep.min_margin)
    rep0 = kernel_positivity_check(KernelId(KernelKind.R, 0), [0], grid)
    ok = ok and rep0.verdict
    helper_ok = True
    for n in range(1, 4):
        for which in (HelperKind.XI, HelperKind.H):
            for l in range(n + 1):
                for x in grid:
                    helper_ok = helper_ok and kernels.helper_eval(
                        which, n, l, float(x)) > 0.0
            for l in range(n):  # derivatives below order n vanish at 0
                helper_ok = helper_ok and abs(
                    kernels.helper_eval(which, n, l, 0.0)) < 1e-13
    ok = ok and helper_ok
    return CheckResult("kernel positivity suite", ok,
                       f"min kernel margin = {worst:.3e}; helpers: {helper_ok}")


def check_gamma2_stability() -> CheckResult:
    """M-independence of main + remainder, and the remainder sign."""
    worst = 0.0
    signs = True
    for w in (1.0, 3.0, 10.0):
        g4 = expansions.loggamma2(w, 4, 1e-11)
        g6 = expansions.loggamma2(w, 6, 1e-11)
        worst = max(worst, abs(g4.value - g6.value))
        signs = signs and g4.sign_check and g6.sign_check
    return CheckResult("double gamma M-independence", worst < 1e-8 and signs,
                       f"worst |difference| = {worst:.3e}; sign checks: {signs}")


ALL_CHECKS = (
    check_representation_agreement,
    check_proposition_suite,
    check_binet_consistency,
    check_loggamma_brackets,
    check_enveloping,
    check_p_agreement,
    check_cm_theorems,
    check_kernel_positivity,
    check_gamma2_stability,
)


def verify_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]


def render_report(results) -> str:
    lines = [r.line() for r in results]
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
