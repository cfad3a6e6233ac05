"""Leave-one-out cross validation of the shape parameter.

Rippa's rule recovers all n leave-one-out residuals of an RBF interpolant
from a single factorization of the full collocation matrix: the j-th
residual equals ``c_j / (K^-1)_jj`` where ``c = K^-1 y``. That turns the
naive n^4 LOOCV sweep into an n^3 one. The rule applies to interpolation
only; the rectangular least-squares setting has no invertible K.

Two searches over the shape parameter are provided: an exhaustive grid
(`grid_search`) and a derivative-free descent from a starting value
(`optimizer_search`).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_solve
from scipy.spatial.distance import pdist, squareform

from ._validation import check_distinct, check_points, check_values
from .exceptions import ConditioningError, SearchFailedError
from .kernels import KERNEL_FAMILIES, RadialKernel
from .rbf import factor_spd

__all__ = [
    "LoocvResult",
    "loo_residuals",
    "loo_cost",
    "grid_search",
    "optimizer_search",
    "bracketed_minimize",
]


@dataclass(frozen=True)
class LoocvResult:
    """Outcome of a shape-parameter search.

    ``trace`` holds every (epsilon, cost) evaluation in order; failed
    candidates appear with cost ``inf``.
    """

    best_epsilon: float
    best_error: float
    trace: list[tuple[float, float]] = field(repr=False)
    elapsed: float = 0.0


def _residuals_from_dists(family: str, epsilon: float, dists: np.ndarray, y: np.ndarray):
    K = KERNEL_FAMILIES[family](epsilon * dists)
    factor = factor_spd(K, epsilon=epsilon)
    coef = cho_solve(factor, y)
    # Diagonal of K^-1 from the cached factorization: solve K S = I and
    # read off the diagonal; this keeps the overall cost at n^3.
    inv_diag = np.diagonal(cho_solve(factor, np.eye(len(y))))
    return coef / inv_diag


def loo_residuals(kernel: RadialKernel, X, y) -> np.ndarray:
    """All n leave-one-out residuals of the interpolant, via Rippa's rule.

    Equals, up to roundoff, the vector whose j-th entry is the error at
    ``X[j]`` of the interpolant fitted on the other n-1 points.

    Raises
    ------
    ConditioningError
        If the collocation matrix cannot be factorized at this epsilon.
    """
    X = check_points(X, name="X")
    y = check_values(y, n=len(X), name="y")
    check_distinct(X, name="X")
    dists = squareform(pdist(X))
    return _residuals_from_dists(kernel.family, kernel.epsilon, dists, y)


def loo_cost(kernel: RadialKernel, X, y) -> float:
    """Infinity norm of the leave-one-out residuals.

    Returns ``inf`` when the collocation matrix fails to factorize, so that
    searches can skip hopeless candidates instead of aborting.
    """
    try:
        return float(np.max(np.abs(loo_residuals(kernel, X, y))))
    except ConditioningError:
        return math.inf


def grid_search(family: str, X, y, *, eps_max=20.0, grid_size=500) -> LoocvResult:
    """Minimize the LOOCV cost over an equally spaced shape-parameter grid.

    Candidates are ``k * eps_max / grid_size`` for k = 1..grid_size (zero is
    excluded; the kernel is undefined there). Ties resolve toward the
    smaller epsilon. Fully deterministic.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    if eps_max <= 0:
        raise ValueError("eps_max must be positive")
    if family not in KERNEL_FAMILIES:
        raise ValueError(f"unknown kernel family {family!r}")
    X = check_points(X, name="X")
    y = check_values(y, n=len(X), name="y")
    check_distinct(X, name="X")

    start = time.perf_counter()
    dists = squareform(pdist(X))
    candidates = np.arange(1, grid_size + 1) * (eps_max / grid_size)
    trace = []
    for eps in candidates:
        try:
            cost = float(np.max(np.abs(_residuals_from_dists(family, eps, dists, y))))
        except ConditioningError:
            cost = math.inf
        trace.append((float(eps), cost))
    elapsed = time.perf_counter() - start

    best_eps, best_cost = min(trace, key=lambda item: item[1])
    if math.isinf(best_cost):
        raise SearchFailedError("every grid candidate failed to factorize")
    return LoocvResult(best_eps, best_cost, trace, elapsed)


_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class _BudgetExhausted(Exception):
    pass


def bracketed_minimize(f, lo, hi, start, *, xtol=1e-6, max_evals=200):
    """Derivative-free bounded univariate minimization from a start value.

    Probes downhill from ``start``, expands the step golden-ratio style
    until the minimum is bracketed (or a bound is hit), then contracts the
    bracket by golden-section search. Terminates when the bracket width
    drops below ``xtol`` or after ``max_evals`` function evaluations.

    Returns ``(best_x, best_f, trace)`` where ``trace`` lists every
    evaluation in order. Like any local descent, it may settle in a local
    minimum of a multimodal objective.
    """
    if not lo < start <= hi:
        raise ValueError(f"start must lie in ({lo}, {hi}], got {start}")
    trace: list[tuple[float, float]] = []

    def ev(x):
        if len(trace) >= max_evals:
            raise _BudgetExhausted
        fx = float(f(x))
        trace.append((float(x), fx))
        return fx

    def golden(a, b):
        c = b - _INV_GOLDEN * (b - a)
        d = a + _INV_GOLDEN * (b - a)
        fc, fd = ev(c), ev(d)
        while (b - a) > xtol:
            if fc <= fd:
                b, d, fd = d, c, fc
                c = b - _INV_GOLDEN * (b - a)
                fc = ev(c)
            else:
                a, c, fc = c, d, fd
                d = a + _INV_GOLDEN * (b - a)
                fd = ev(d)

    try:
        f0 = ev(start)
        step = (hi - lo) / 64.0
        x_right = min(start + step, hi)
        x_left = max(start - step, lo)
        f_right = ev(x_right) if x_right > start else math.inf
        f_left = ev(x_left) if x_left < start else math.inf

        if f_right <= f0 and f_right <= f_left:
            a, b, fb = start, x_right, f_right
        elif f_left <= f0:
            a, b, fb = start, x_left, f_left
        else:
            # Start is lowest at probe scale; contract around it.
            golden(x_left, x_right)
            a = b = None

        if a is not None:
            while True:
                c = b + (1.0 + _INV_GOLDEN) * (b - a)
                c = min(max(c, lo), hi)
                if c == b:  # expansion pinned at a bound
                    golden(min(a, b), max(a, b))
                    break
                fc = ev(c)
                if fc >= fb:
                    golden(min(a, c), max(a, c))
                    break
                a, b, fb = b, c, fc
    except _BudgetExhausted:
        pass

    best_x, best_f = min(trace, key=lambda item: item[1])
    return best_x, best_f, trace


def optimizer_search(family: str, X, y, *, eps_max=20.0, start=None) -> LoocvResult:
    """Minimize the LOOCV cost with a bounded univariate descent.

    ``start`` defaults to the interval median ``eps_max / 2``. Every cost
    evaluation is recorded; the search stops once the bracket width falls
    below 1e-6 or after 200 evaluations. Failed candidates cost ``inf``.
    """
    if eps_max <= 0:
        raise ValueError("eps_max must be positive")
    if family not in KERNEL_FAMILIES:
        raise ValueError(f"unknown kernel family {family!r}")
    if start is None:
        start = eps_max / 2.0
    if not 0 < start <= eps_max:
        raise ValueError(f"start must lie in (0, {eps_max}], got {start}")
    X = check_points(X, name="X")
    y = check_values(y, n=len(X), name="y")
    check_distinct(X, name="X")

    t0 = time.perf_counter()
    dists = squareform(pdist(X))

    def cost(eps):
        try:
            return float(np.max(np.abs(_residuals_from_dists(family, eps, dists, y))))
        except ConditioningError:
            return math.inf

    # The open lower end of (0, eps_max] is approximated by a tiny floor;
    # the cost there is infinite anyway once conditioning collapses.
    lower = 1e-8 * eps_max
    best_eps, best_cost, trace = bracketed_minimize(cost, lower, eps_max, start)
    elapsed = time.perf_counter() - t0
    if math.isinf(best_cost):
        raise SearchFailedError("every probed shape parameter failed to factorize")
    return LoocvResult(best_eps, best_cost, trace, elapsed)
