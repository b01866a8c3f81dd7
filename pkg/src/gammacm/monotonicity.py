"""Empirical certification of complete monotonicity of positive order.

A function f is completely monotonic of order r when x^r f(x) is completely
monotonic, which is equivalent to nonnegativity of all alternating forward
differences (-1)^m Delta_h^m [x^r f(x)].  Differences of a Laplace transform
can be computed to near machine precision, unlike derivative estimates, so
the x-side check works entirely with finite differences.  Kernel-side checks
use the exact closed-form derivatives from the kernels module instead.

Pass thresholds are an artifact decision, not a bound from theory; every
report therefore carries its raw margins and the tolerance that was applied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError
from .kernels import KernelId, KernelKind

DEFAULT_MAX_DIFF_ORDER = 8
DEFAULT_EPS_REL = 1e-9


def default_grid() -> tuple[float, ...]:
    return tuple(float(v) for v in np.geomspace(0.25, 40.0, 12))


DEFAULT_STEPS = (0.125, 0.5, 2.0)


@dataclass(frozen=True)
class CMOrderSpec:
    r: float
    max_diff_order: int = DEFAULT_MAX_DIFF_ORDER
    grid: tuple[float, ...] = field(default_factory=default_grid)
    steps: tuple[float, ...] = DEFAULT_STEPS
    eps_rel: float = DEFAULT_EPS_REL

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be >= 0")
        if self.max_diff_order < 1:
            raise ValueError("max_diff_order must be >= 1")
        if not self.grid or not self.steps:
            raise ValueError("grid and steps must be nonempty")
        if any(x <= 0 for x in self.grid):
            raise ValueError("grid points must be > 0")
        if tuple(sorted(self.grid)) != tuple(self.grid):
            raise ValueError("grid must be sorted ascending")
        if any(h <= 0 for h in self.steps):
            raise ValueError("steps must be > 0")


@dataclass(frozen=True)
class MonotonicityReport:
    margins: tuple[tuple[int, float, float, float], ...]  # (m, x, h, margin)
    min_margin: float
    tolerance_used: float
    verdict: bool
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "margins": [list(row) for row in self.margins],
            "min_margin": self.min_margin,
            "tolerance_used": self.tolerance_used,
            "verdict": "pass" if self.verdict else "fail",
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


def finite_difference(f, x: float, h: float, m: int) -> float:
    """Forward difference Delta_h^m f(x) with exact binomial weights."""
    if h <= 0:
        raise ValueError("h must be > 0")
    if m < 0:
        raise ValueError("m must be >= 0")
    return math.fsum(
        (-1.0) ** (m - j) * math.comb(m, j) * f(x + j * h)
        for j in range(m + 1))


def cm_order_check(f, spec: CMOrderSpec, label: str = "") -> MonotonicityReport:
    """Alternating-difference check that x^r f(x) is completely monotonic.

    The tolerance scales with the cancellation of an m-th difference:
    tol = eps_rel * max|g| * 2^max_order, where g(x) = x^r f(x) over the
    extended stencil.  The verdict passes when every signed margin
    (-1)^m Delta_h^m g(x) stays above -tol.
    """
    cache: dict[float, float] = {}

    def g(x):
        if x not in cache:
            cache[x] = x ** spec.r * f(x)
        return cache[x]

    margins = []
    for x in spec.grid:
        for h in spec.steps:
            for m in range(spec.max_diff_order + 1):
                margins.append(
                    (m, x, h, (-1.0) ** m * finite_difference(g, x, h, m)))
    max_g = max(abs(v) for v in cache.values())
    tol = spec.eps_rel * max_g * 2.0 ** spec.max_diff_order
    min_margin = min(row[3] for row in margins)
    return MonotonicityReport(
        margins=tuple(margins), min_margin=min_margin, tolerance_used=tol,
        verdict=min_margin >= -tol, label=label)


def _claimed_max_order(kind: KernelKind, n: int) -> int:
    if kind is KernelKind.R:
        return n
    if kind in (KernelKind.LAMBDA, KernelKind.P):
        return n - 1
    raise DomainError(f"no derivative-positivity claim for kernel {kind}")


def kernel_positivity_check(id: KernelId, orders, t_grid,
                            zero_tol: float = 1e-13) -> MonotonicityReport:
    """Exact-derivative positivity of a kernel on a grid, plus vanishing of
    the lower derivatives at t = 0.

    Only the claimed derivative ranges are accepted: r_n up to order n,
    lambda_n and p_n up to order n-1.
    """
    max_order = _claimed_max_order(id.kind, id.n)
    for l in orders:
        if l < 0 or l > max_order:
            raise DomainError(
                f"order {l} outside claimed range [0, {max_order}] "
                f"for {id.kind.value}_{id.n}")
    rows = []
    for l in sorted(orders):
        did = KernelId(id.kind, id.n, deriv_order=l)
        for t in t_grid:
            val = kernels.kernel_eval(did, float(t), tol=1e-12)
            rows.append((l, float(t), 0.0, val.value - val.error_bound))
    # derivatives strictly below the first nonvanishing order are zero at 0
    vanish_below = {KernelKind.R: 2 * id.n,
                    KernelKind.LAMBDA: 2 * id.n - 1,
                    KernelKind.P: 2 * id.n - 2}[id.kind]
    for l in range(min(max_order, vanish_below)):
        did = KernelId(id.kind, id.n, deriv_order=l)
        val = kernels.kernel_eval(did, 0.0, tol=1e-12)
        rows.append((l, 0.0, 0.0, zero_tol - abs(val.value)))
    min_margin = min(r[3] for r in rows)
    return MonotonicityReport(
        margins=tuple(rows), min_margin=min_margin, tolerance_used=0.0,
        verdict=min_margin > 0.0,
        label=f"positivity:{id.kind.value}_{id.n}")
