"""Input validation helpers shared across the package.

Point sets are plain float64 arrays of shape (n, d); values are float64
vectors of shape (n,). These helpers normalize user input to that form
and enforce the structural requirements the solvers rely on.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConfigurationError


def check_points(points, *, dim=None, name="points") -> np.ndarray:
    """Coerce to a finite float64 array of shape (n, d) with n >= 1."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError(f"{name} contains non-finite coordinates")
    if dim is not None and pts.shape[1] != dim:
        raise ValueError(f"{name} has dimension {pts.shape[1]}, expected {dim}")
    return pts


def check_values(values, *, n=None, name="values") -> np.ndarray:
    """Coerce to a finite float64 vector, optionally of fixed length."""
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size < 1:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"{name} contains non-finite entries")
    if n is not None and vals.size != n:
        raise ValueError(f"{name} has length {vals.size}, expected {n}")
    return vals


def check_same_dim(a: np.ndarray, b: np.ndarray, *, names=("x", "z")) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(
            f"dimension mismatch: {names[0]} has {a.shape[-1]} coordinates, "
            f"{names[1]} has {b.shape[-1]}"
        )


def duplicate_rows(points: np.ndarray) -> list[tuple[int, int]]:
    """Return (first, duplicate) index pairs for exactly-repeated rows."""
    seen: dict[bytes, int] = {}
    pairs = []
    for i, row in enumerate(points):
        key = row.tobytes()
        if key in seen:
            pairs.append((seen[key], i))
        else:
            seen[key] = i
    return pairs


def check_distinct(points: np.ndarray, *, name="points") -> None:
    """Reject coincident rows; interpolation systems need distinct nodes."""
    pairs = duplicate_rows(points)
    if pairs:
        listing = ", ".join(f"{i}=={j}" for i, j in pairs[:5])
        raise ValueError(f"{name} contains duplicate locations ({listing})")


def subset_indices(points: np.ndarray, subset: np.ndarray, *, name="centers") -> np.ndarray:
    """Map each row of `subset` to its index in `points` (exact match).

    Raises ConfigurationError when some row of `subset` does not occur in
    `points`.
    """
    index = {row.tobytes(): i for i, row in enumerate(points)}
    out = np.empty(len(subset), dtype=np.intp)
    for k, row in enumerate(subset):
        i = index.get(row.tobytes())
        if i is None:
            raise ConfigurationError(
                f"{name}[{k}] is not one of the data locations; "
                f"{name} must be a subset of the data points"
            )
        out[k] = i
    return out
