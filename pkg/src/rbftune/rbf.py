"""RBF interpolation and least-squares approximation.

The fitted model is ``s(x) = sum_k c_k * kernel(x, center_k)``. With the
centers equal to the data locations the coefficients solve the square
symmetric positive-definite collocation system and the model interpolates;
with a strict subset of centers they solve the rectangular system in the
least-squares sense.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve, lstsq
from sklearn.base import BaseEstimator, RegressorMixin

from ._validation import check_distinct, check_points, check_values, subset_indices
from .exceptions import ConditioningError, RankDeficiencyError
from .kernels import RadialKernel, kernel_matrix

__all__ = ["RbfRegressor", "mae", "rmae", "solve_collocation"]

# Relative singular-value cutoff below which the least-squares solve
# truncates (regularizing ill-conditioned systems the way tuners produce).
_LSTSQ_RCOND = 1e-12
# Structural rank collapse (duplicate or unreachable centers) shows up as
# singular values at roundoff-zero, many orders below the ~1e-13 floor
# that legitimate desk-scale systems bottom out at.
_RANK_COLLAPSE = 1e-15


def factor_spd(matrix: np.ndarray, *, epsilon=None):
    """Cholesky-factor a symmetric kernel matrix, with one jitter retry.

    Extreme shape parameters drive the collocation matrix to numerical
    indefiniteness; a single diagonal bump of 1e-12 * mean(diag) is tried
    before giving up, so that parameter searches survive bad candidates.
    """
    try:
        return cho_factor(matrix, lower=True)
    except np.linalg.LinAlgError:
        pass
    jitter = 1e-12 * (np.trace(matrix) / len(matrix))
    try:
        return cho_factor(matrix + jitter * np.eye(len(matrix)), lower=True)
    except np.linalg.LinAlgError:
        raise ConditioningError(
            f"collocation matrix is numerically indefinite (epsilon={epsilon})",
            epsilon=epsilon,
        ) from None


def solve_collocation(kernel: RadialKernel, X, y, centers=None) -> np.ndarray:
    """Coefficients of the RBF fit on (X, y) with the given centers.

    ``centers=None`` (or the same array as ``X``) selects the square
    interpolation solve; a strict subset of the rows of ``X`` selects the
    rectangular least-squares solve via an orthogonal factorization, which
    avoids squaring the condition number the way normal equations would.
    """
    X = check_points(X, name="X")
    y = check_values(y, n=len(X), name="y")

    if centers is None or (centers is X) or np.array_equal(np.asarray(centers, float), X):
        check_distinct(X, name="X")
        K = kernel_matrix(kernel, X)
        factor = factor_spd(K, epsilon=kernel.epsilon)
        return cho_solve(factor, y)

    centers = check_points(centers, dim=X.shape[1], name="centers")
    subset_indices(X, centers)  # enforce centers ⊆ data locations
    K = kernel_matrix(kernel, X, centers)
    coef, _, rank, sv = lstsq(K, y, cond=_LSTSQ_RCOND)
    if sv[-1] <= _RANK_COLLAPSE * sv[0]:
        raise RankDeficiencyError(
            f"collocation matrix is rank deficient: {centers.shape[0]} centers, "
            f"numerical rank {rank} (epsilon={kernel.epsilon})"
        )
    return coef


class RbfRegressor(RegressorMixin, BaseEstimator):
    """Scattered-data regressor built from radial kernels.

    Parameters
    ----------
    kernel : {"ga", "m2", "w2"}
        Kernel family: Gaussian, Matern C^2 or Wendland C^2.
    epsilon : float
        Shape parameter scaling the radial distances.

    Attributes
    ----------
    kernel_ : RadialKernel
        The configured kernel object.
    centers_ : ndarray of shape (m, d)
        Kernel centers used by the fit.
    coef_ : ndarray of shape (m,)
        Expansion coefficients.

    Examples
    --------
    >>> from rbftune import RbfRegressor, halton_points, eval_test_function
    >>> X = halton_points(40, 2)
    >>> y = eval_test_function("f1", X)
    >>> model = RbfRegressor(kernel="ga", epsilon=4.0).fit(X, y)
    >>> abs(model.predict(X) - y).max() < 1e-8
    True
    """

    def __init__(self, kernel="ga", epsilon=2.0):
        self.kernel = kernel
        self.epsilon = epsilon

    def fit(self, X, y, centers=None):
        """Solve for the expansion coefficients.

        Parameters
        ----------
        X : array-like of shape (n, d)
            Distinct data locations.
        y : array-like of shape (n,)
            Data values.
        centers : array-like of shape (m, d), optional
            Kernel centers; must be rows of ``X``. Omitted means
            ``centers = X`` (interpolation).
        """
        X = check_points(X, name="X")
        y = check_values(y, n=len(X), name="y")
        self.kernel_ = RadialKernel(self.kernel, self.epsilon)
        if centers is None:
            self.centers_ = X
        else:
            self.centers_ = check_points(centers, dim=X.shape[1], name="centers")
        self.coef_ = solve_collocation(self.kernel_, X, y, centers)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        """Evaluate the fitted expansion at query points."""
        if not hasattr(self, "coef_"):
            raise AttributeError("this RbfRegressor instance is not fitted yet")
        X = check_points(X, dim=self.centers_.shape[1], name="X")
        return kernel_matrix(self.kernel_, X, self.centers_) @ self.coef_


def mae(predictions, truth) -> float:
    """Maximum absolute error, ``max_i |p_i - t_i|``."""
    p = check_values(predictions, name="predictions")
    t = check_values(truth, n=p.size, name="truth")
    return float(np.max(np.abs(p - t)))


def rmae(predictions, truth) -> float:
    """Maximum absolute error divided by the largest-magnitude true value."""
    t = check_values(truth, name="truth")
    scale = float(np.max(np.abs(t)))
    if scale == 0:
        raise ValueError("rmae undefined for an all-zero truth vector")
    return mae(predictions, truth) / scale
