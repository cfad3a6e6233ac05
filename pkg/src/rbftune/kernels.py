"""Radial kernels and collocation-matrix assembly.

Three kernel families are supported, all normalized so that phi(0) = 1:

====== ========================== ===========================
token  profile phi(t), t = eps*r  smoothness
====== ========================== ===========================
ga     exp(-t^2)                  Gaussian, C-infinity
m2     exp(-t)*(t + 1)            Matern, C^2
w2     max(1-t, 0)^4 * (4t + 1)   Wendland, C^2, support t<1
====== ========================== ===========================

The Gaussian and Matern kernels are globally supported; the Wendland
kernel is exactly zero for eps*r >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from ._validation import check_points, check_same_dim

__all__ = ["KERNEL_FAMILIES", "RadialKernel", "kernel_matrix"]


def _profile_gaussian(t):
    return np.exp(-(t * t))


def _profile_matern_c2(t):
    return np.exp(-t) * (t + 1.0)


def _profile_wendland_c2(t):
    # Truncate before raising to the 4th power so the support edge is exact.
    base = np.maximum(1.0 - t, 0.0)
    return base**4 * (4.0 * t + 1.0)


KERNEL_FAMILIES = {
    "ga": _profile_gaussian,
    "m2": _profile_matern_c2,
    "w2": _profile_wendland_c2,
}


@dataclass(frozen=True)
class RadialKernel:
    """A kernel family together with its shape parameter.

    Parameters
    ----------
    family : str
        One of ``"ga"``, ``"m2"``, ``"w2"``.
    epsilon : float
        Shape parameter, strictly positive.
    """

    family: str
    epsilon: float

    def __post_init__(self):
        if self.family not in KERNEL_FAMILIES:
            raise ValueError(
                f"unknown kernel family {self.family!r}; "
                f"expected one of {sorted(KERNEL_FAMILIES)}"
            )
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    def phi(self, r):
        """Evaluate the radial profile at distance(s) ``r >= 0``."""
        r = np.asarray(r, dtype=float)
        if np.any(r < 0):
            raise ValueError("radial distance must be nonnegative")
        return KERNEL_FAMILIES[self.family](self.epsilon * r)

    def value(self, x, z) -> float:
        """Kernel value between two points, phi(eps * ||x - z||)."""
        x = np.asarray(x, dtype=float).ravel()
        z = np.asarray(z, dtype=float).ravel()
        check_same_dim(x, z)
        return float(self.phi(np.linalg.norm(x - z)))


def kernel_matrix(kernel: RadialKernel, rows, cols=None) -> np.ndarray:
    """Assemble the matrix of pairwise kernel values.

    Parameters
    ----------
    kernel : RadialKernel
    rows : array-like, shape (n, d)
        Evaluation points, one per matrix row.
    cols : array-like, shape (m, d), optional
        Kernel centers, one per column. When omitted the symmetric square
        matrix on ``rows`` is built from a single half-triangle of
        distances.

    Returns
    -------
    ndarray of shape (n, m)
    """
    rows = check_points(rows, name="rows")
    if cols is None:
        dists = squareform(pdist(rows))
        return kernel.phi(dists)
    cols = check_points(cols, name="cols")
    check_same_dim(rows, cols, names=("rows", "cols"))
    return kernel.phi(cdist(rows, cols))
