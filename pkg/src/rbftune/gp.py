"""Gaussian-process regression over a scalar input.

The surrogate used by the Bayesian tuner: Matern-5/2 covariance, targets
standardized to zero mean and unit variance (so the signal variance is
fixed at 1), zero prior mean in the standardized scale, and a length scale
selected by maximizing the log marginal likelihood over a fixed
logarithmic grid. Predictions come from the standard conditional-normal
formulas evaluated through a Cholesky factorization.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .exceptions import SurrogateFitError

__all__ = ["matern52", "GaussianProcess"]

_SQRT5 = math.sqrt(5.0)

# Jitter ladder, relative to the signal variance: start tiny, escalate
# tenfold on factorization failure. Duplicate inputs (a tuner re-proposing
# a nearly identical parameter) are absorbed this way.
_JITTER_START = 1e-10
_JITTER_MAX = 1e-4

# Log-spaced length-scale candidates per fit, spanning
# [0.01 * input range, 10 * input range].
_LENGTH_SCALE_GRID = 25
_RANGE_FLOOR = 1e-3


def matern52(r, length_scale, signal_variance=1.0):
    """Matern-5/2 covariance as a function of distance ``r >= 0``.

    ``k(r) = s * (1 + sqrt(5) r / l + 5 r^2 / (3 l^2)) * exp(-sqrt(5) r / l)``
    with ``k(0) = s``.
    """
    if length_scale <= 0:
        raise ValueError("length_scale must be positive")
    if signal_variance <= 0:
        raise ValueError("signal_variance must be positive")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("distance must be nonnegative")
    t = _SQRT5 * r / length_scale
    return signal_variance * (1.0 + t + t * t / 3.0) * np.exp(-t)


def _log_marginal_likelihood(factor, alpha, y):
    L = factor[0]
    return (
        -0.5 * float(y @ alpha)
        - float(np.sum(np.log(np.diagonal(L))))
        - 0.5 * len(y) * math.log(2.0 * math.pi)
    )


def _factor_with_jitter(K):
    jitter = _JITTER_START
    while jitter <= _JITTER_MAX * (1.0 + 1e-15):
        try:
            factor = cho_factor(K + jitter * np.eye(len(K)), lower=True)
            return factor, jitter
        except np.linalg.LinAlgError:
            jitter *= 10.0
    return None, None


class GaussianProcess:
    """Matern-5/2 Gaussian process on scalar inputs.

    ``fit`` standardizes the targets, picks the length scale by grid-
    maximized log marginal likelihood and caches the Cholesky factor;
    ``predict`` returns posterior means and standard deviations on the
    original target scale. Instances are immutable once fitted; refitting
    should create a new instance.

    Attributes (after fit)
    ----------------------
    inputs_ : ndarray (s,)
    length_scale_ : float
    jitter_ : float
        The diagonal bump that made the factorization succeed.
    target_mean_, target_std_ : float
        Standardization constants (std falls back to 1 for constant targets).
    """

    def fit(self, inputs, targets):
        x = np.asarray(inputs, dtype=float).ravel()
        y = np.asarray(targets, dtype=float).ravel()
        if x.size != y.size or x.size < 1:
            raise ValueError("inputs and targets must be equal-length and non-empty")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("inputs and targets must be finite")

        self.target_mean_ = float(np.mean(y))
        std = float(np.std(y))
        self.target_std_ = std if std > 0 else 1.0
        z = (y - self.target_mean_) / self.target_std_

        span = max(float(np.max(x) - np.min(x)), _RANGE_FLOOR)
        dists = np.abs(x[:, None] - x[None, :])

        best = None
        for scale in np.geomspace(0.01 * span, 10.0 * span, _LENGTH_SCALE_GRID):
            factor, jitter = _factor_with_jitter(matern52(dists, scale))
            if factor is None:
                continue
            alpha = cho_solve(factor, z)
            lml = _log_marginal_likelihood(factor, alpha, z)
            if best is None or lml > best[0]:
                best = (lml, scale, factor, jitter, alpha)
        if best is None:
            raise SurrogateFitError(
                "covariance matrix not positive definite at maximum jitter"
            )

        _, self.length_scale_, self._factor, self.jitter_, self._alpha = best
        self.inputs_ = x
        self._centered = z
        return self

    def predict(self, queries):
        """Posterior mean and standard deviation at query inputs.

        Returns
        -------
        (mean, std) : two ndarrays shaped like ``np.atleast_1d(queries)``.
        """
        if not hasattr(self, "_alpha"):
            raise AttributeError("this GaussianProcess instance is not fitted yet")
        q = np.atleast_1d(np.asarray(queries, dtype=float))
        cross = matern52(np.abs(q[:, None] - self.inputs_[None, :]), self.length_scale_)
        mean = cross @ self._alpha
        solved = cho_solve(self._factor, cross.T)
        # Cancellation can push the variance a hair below zero; clip first.
        var = np.maximum(1.0 - np.sum(cross * solved.T, axis=1), 0.0)
        return (
            self.target_mean_ + self.target_std_ * mean,
            self.target_std_ * np.sqrt(var),
        )
