"""Scattered-data generation, ingestion and partitioning.

Point sets live in the unit cube [0, 1]^d. Two node layouts are provided
(uniform random and Halton), together with the two bivariate test surfaces
used by the synthetic benchmarks, a CSV loader for real measurements, and
the seeded train/validation split used by the tuning workflows.
"""

from __future__ import annotations

import csv
import warnings

import numpy as np

from ._validation import check_points, check_values, duplicate_rows, subset_indices

__all__ = [
    "halton_points",
    "random_points",
    "eval_test_function",
    "train_val_split",
    "load_csv",
    "TEST_FUNCTIONS",
]


def _first_primes(k: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < k:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    return primes


def _radical_inverse(index: int, base: int) -> float:
    # Digit-reversal of `index` in `base`, mapped into (0, 1).
    inv = 0.0
    scale = 1.0 / base
    while index > 0:
        index, digit = divmod(index, base)
        inv += digit * scale
        scale /= base
    return inv


def halton_points(n: int, dim: int) -> np.ndarray:
    """First ``n`` Halton points in [0, 1]^dim.

    Coordinate ``j`` uses the radical inverse in the ``j``-th prime base.
    The sequence starts at index 1, skipping the all-zeros point, so the
    output is deterministic and free of the degenerate corner node.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if dim < 1:
        raise ValueError("dim must be at least 1")
    bases = _first_primes(dim)
    out = np.empty((n, dim))
    for j, base in enumerate(bases):
        out[:, j] = [_radical_inverse(i, base) for i in range(1, n + 1)]
    return out


def random_points(n: int, dim: int, seed) -> np.ndarray:
    """``n`` i.i.d. uniform points in [0, 1]^dim; identical for equal seeds."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = np.random.default_rng(seed)
    return rng.random((n, dim))


def _surface_peaks(x1, x2):
    # Four-bump exponential surface on [0, 1]^2.
    return (
        0.75 * np.exp(-((9 * x1 - 2) ** 2) / 4 - ((9 * x2 - 2) ** 2) / 4)
        + 0.75 * np.exp(-((9 * x1 - 2) ** 2) / 49 - (9 * x2 + 1) / 10)
        + 0.5 * np.exp(-((9 * x1 - 7) ** 2) / 4 - ((9 * x2 - 3) ** 2) / 4)
        - 0.2 * np.exp(-((9 * x1 - 4) ** 2) - ((9 * x2 - 7) ** 2))
    )


def _surface_dome(x1, x2):
    # Spherical cap centred on (0.5, 0.5); the radicand stays positive on
    # the unit square (81 * 0.5 < 64).
    return np.sqrt(64 - 81 * ((x1 - 0.5) ** 2 + (x2 - 0.5) ** 2)) / 9 - 0.5


TEST_FUNCTIONS = {"f1": _surface_peaks, "f2": _surface_dome}


def eval_test_function(name: str, points) -> np.ndarray:
    """Evaluate test surface ``"f1"`` or ``"f2"`` at points in [0, 1]^2."""
    try:
        surface = TEST_FUNCTIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown test function {name!r}; expected one of {sorted(TEST_FUNCTIONS)}"
        ) from None
    pts = check_points(points, dim=2)
    if np.any(pts < 0) or np.any(pts > 1):
        raise ValueError("test functions are defined on [0, 1]^2 only")
    return surface(pts[:, 0], pts[:, 1])


def train_val_split(X, y, centers=None, *, train_fraction=0.8, seed=0):
    """Seeded shuffled partition of a data set into train and validation parts.

    The training part receives ``floor(train_fraction * n)`` points and the
    validation part the remaining ``ceil((1 - train_fraction) * n)``. When
    ``centers`` (a subset of the rows of ``X``) is given, each center follows
    its underlying data location: it lands in the returned training centers
    exactly when that location went to the training part.

    Returns
    -------
    (X_train, y_train, X_val, y_val, centers_train)
        ``centers_train`` is None when ``centers`` is None.
    """
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must lie strictly between 0 and 1")
    X = check_points(X, name="X")
    y = check_values(y, n=len(X), name="y")
    if len(X) < 2:
        raise ValueError("need at least 2 points to split")

    center_idx = None
    if centers is not None:
        centers = check_points(centers, dim=X.shape[1], name="centers")
        center_idx = subset_indices(X, centers)

    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(X))
    n_train = int(np.floor(train_fraction * len(X)))
    train_idx, val_idx = perm[:n_train], perm[n_train:]

    centers_train = None
    if center_idx is not None:
        in_train = np.zeros(len(X), dtype=bool)
        in_train[train_idx] = True
        centers_train = centers[in_train[center_idx]]

    return X[train_idx], y[train_idx], X[val_idx], y[val_idx], centers_train


def load_csv(path, dim: int, *, header=False, allow_duplicates=False):
    """Read scattered data from a CSV file of ``x1,...,xd,value`` records.

    Parameters
    ----------
    path : str or Path
    dim : int
        Number of coordinate columns; each row must have ``dim + 1`` fields.
    header : bool
        Skip one leading header line.
    allow_duplicates : bool
        Repeated locations normally abort the load (interpolation needs
        distinct nodes); pass True to downgrade them to a warning, e.g. for
        pure evaluation sets.

    Returns
    -------
    (X, y) : ndarray (n, dim), ndarray (n,)
        Rows in file order.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rows = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        for lineno, record in enumerate(reader, start=1):
            if header and lineno == 1:
                continue
            if not record or (len(record) == 1 and not record[0].strip()):
                continue  # blank line
            if len(record) != dim + 1:
                raise ValueError(
                    f"{path}: row {lineno} has {len(record)} fields, expected {dim + 1}"
                )
            try:
                rows.append([float(field) for field in record])
            except ValueError:
                raise ValueError(f"{path}: row {lineno} has a non-numeric field") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")

    table = np.asarray(rows, dtype=float)
    X, y = table[:, :dim], table[:, dim]
    pairs = duplicate_rows(X)
    if pairs:
        listing = ", ".join(f"{i} and {j}" for i, j in pairs[:10])
        message = f"{path}: duplicate locations at rows (0-based) {listing}"
        if allow_duplicates:
            warnings.warn(message)
        else:
            raise ValueError(message)
    return X, y
