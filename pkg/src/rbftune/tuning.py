"""End-to-end shape-parameter tuning workflows.

``TunedRbfRegressor`` wraps the three tuning strategies behind one
estimator: exhaustive LOOCV (``"loocv"``), optimizer-driven LOOCV
(``"loocv-star"``) and Bayesian optimization (``"bo"``). The LOOCV methods
score candidates on the full data set through Rippa's rule; the Bayesian
method splits off a validation part, maximizes the negative validation
maximum-absolute-error, and so also covers the least-squares setting with
a strict subset of centers. Whatever the method, the final model is refit
on the complete data set at the selected shape parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, clone

from . import bo, loocv
from ._validation import check_points, check_values
from .data import train_val_split
from .exceptions import ConfigurationError
from .rbf import RbfRegressor, mae, rmae

__all__ = ["TunedRbfRegressor", "TuneReport", "tune_report", "center_sweep"]

_METHODS = ("loocv", "loocv-star", "bo")


class TunedRbfRegressor(RegressorMixin, BaseEstimator):
    """RBF regressor that selects its shape parameter automatically.

    Parameters
    ----------
    kernel : {"ga", "m2", "w2"}
    method : {"loocv", "loocv-star", "bo"}
        Tuning strategy. The LOOCV strategies require interpolation
        (``centers`` omitted in ``fit``); the Bayesian strategy accepts a
        center subset as well.
    eps_lower : float
        Lower end of the Bayesian search interval (must be positive).
    eps_max : float
        Upper end of the search interval, shared by all methods.
    grid_size : int
        Number of grid candidates for ``"loocv"``.
    start : float or None
        Starting value for ``"loocv-star"``; None means the interval median.
    nstart, niter, xi, acquisition_candidates :
        Bayesian-loop schedule and exploration margin; see ``bo.BoConfig``.
    train_fraction : float
        Share of the data used for fitting inside the Bayesian objective;
        the rest forms the validation set.
    random_state : int
        Seed for the validation split and the Bayesian loop.

    Attributes
    ----------
    epsilon_ : float
        Selected shape parameter.
    model_ : RbfRegressor
        Final model, refit on all data at ``epsilon_``.
    trace_ : list of (epsilon, value) pairs
        Every tuning evaluation in order (LOOCV cost, or validation
        objective for ``"bo"``).
    tuning_seconds_ : float
        Wall-clock time of the tuning phase alone.
    """

    def __init__(
        self,
        kernel="ga",
        method="bo",
        eps_lower=1e-3,
        eps_max=20.0,
        grid_size=500,
        start=None,
        nstart=5,
        niter=25,
        xi=0.01,
        acquisition_candidates=2000,
        train_fraction=0.8,
        random_state=0,
    ):
        self.kernel = kernel
        self.method = method
        self.eps_lower = eps_lower
        self.eps_max = eps_max
        self.grid_size = grid_size
        self.start = start
        self.nstart = nstart
        self.niter = niter
        self.xi = xi
        self.acquisition_candidates = acquisition_candidates
        self.train_fraction = train_fraction
        self.random_state = random_state

    def fit(self, X, y, centers=None):
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        X = check_points(X, name="X")
        y = check_values(y, n=len(X), name="y")

        if self.method == "bo":
            result = self._tune_bayesian(X, y, centers)
            self.trace_ = list(result.history)
        else:
            if centers is not None and not np.array_equal(np.asarray(centers, float), X):
                raise ConfigurationError(
                    "Rippa inapplicable: LOOCV tuning needs the centers to equal "
                    "the data locations; use method='bo' for least-squares "
                    "approximation with a center subset"
                )
            if self.method == "loocv":
                result = loocv.grid_search(
                    self.kernel, X, y, eps_max=self.eps_max, grid_size=self.grid_size
                )
            else:
                result = loocv.optimizer_search(
                    self.kernel, X, y, eps_max=self.eps_max, start=self.start
                )
            self.trace_ = list(result.trace)

        self.tuning_result_ = result
        self.epsilon_ = result.best_epsilon
        self.tuning_seconds_ = result.elapsed
        self.model_ = RbfRegressor(self.kernel, self.epsilon_).fit(X, y, centers=centers)
        self.n_features_in_ = X.shape[1]
        return self

    def _tune_bayesian(self, X, y, centers):
        X_tr, y_tr, X_val, y_val, centers_tr = train_val_split(
            X, y, centers, train_fraction=self.train_fraction, seed=self.random_state
        )

        def objective(eps):
            model = RbfRegressor(self.kernel, eps).fit(X_tr, y_tr, centers=centers_tr)
            return -mae(model.predict(X_val), y_val)

        config = bo.BoConfig(
            lower=self.eps_lower,
            upper=self.eps_max,
            nstart=self.nstart,
            niter=self.niter,
            xi=self.xi,
            acquisition_candidates=self.acquisition_candidates,
            seed=self.random_state,
        )
        return bo.optimize(objective, config)

    def predict(self, X):
        if not hasattr(self, "model_"):
            raise AttributeError("this TunedRbfRegressor instance is not fitted yet")
        return self.model_.predict(X)


@dataclass(frozen=True)
class TuneReport:
    """One benchmark row: a tuned fit evaluated on held-out test data."""

    method: str
    kernel: str
    n: int
    n_centers: int
    center_fraction: float
    epsilon_star: float
    mae_test: float
    rmae_test: float | None
    elapsed: float
    trace: list[tuple[float, float]] = field(repr=False)


def tune_report(estimator, X, y, X_test, y_test, *, centers=None, include_rmae=False):
    """Fit a (clone of a) tuning estimator and score it on a test set.

    The test points must be disjoint from the tuning data for the reported
    error to be honest; callers are responsible for that.
    """
    est = clone(estimator).fit(X, y, centers=centers)
    predictions = est.predict(X_test)
    n = len(np.asarray(y).ravel())
    n_centers = n if centers is None else len(centers)
    return TuneReport(
        method=est.method,
        kernel=est.kernel,
        n=n,
        n_centers=n_centers,
        center_fraction=n_centers / n,
        epsilon_star=est.epsilon_,
        mae_test=mae(predictions, y_test),
        rmae_test=rmae(predictions, y_test) if include_rmae else None,
        elapsed=est.tuning_seconds_,
        trace=est.trace_,
    )


def center_sweep(
    X,
    y,
    X_test,
    y_test,
    fractions,
    *,
    kernel="ga",
    seed=0,
    include_rmae=False,
    **bo_params,
):
    """Bayesian tuning across a range of center-subset sizes.

    For each fraction, ``ceil(fraction * n)`` data locations are drawn
    uniformly without replacement (with the given seed) to act as kernel
    centers; fraction 1.0 uses every location and therefore interpolates.
    Returns one TuneReport per fraction, in input order.
    """
    X = check_points(X, name="X")
    y = check_values(y, n=len(X), name="y")
    fractions = [float(f) for f in fractions]
    if any(not 0 < f <= 1 for f in fractions):
        raise ValueError("fractions must lie in (0, 1]")

    rng = np.random.default_rng(seed)
    reports = []
    for fraction in fractions:
        if fraction == 1.0:
            centers = None
        else:
            m = math.ceil(fraction * len(X))
            centers = X[np.sort(rng.choice(len(X), size=m, replace=False))]
        est = TunedRbfRegressor(kernel=kernel, method="bo", random_state=seed, **bo_params)
        reports.append(
            tune_report(est, X, y, X_test, y_test, centers=centers, include_rmae=include_rmae)
        )
    return reports
