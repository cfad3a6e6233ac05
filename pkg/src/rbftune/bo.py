"""Bayesian optimization of a scalar parameter with Expected Improvement.

The loop models the black-box objective with a Gaussian-process surrogate,
scores random candidate parameters with the Expected Improvement
acquisition (optionally shifted by an exploration margin ``xi``) and
evaluates the objective at the argmax. The schedule is fixed: ``nstart``
seeded random evaluations, then ``niter`` rounds of fit / propose /
evaluate / append.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from .exceptions import NumericalError, SearchFailedError
from .gp import GaussianProcess

__all__ = ["BoConfig", "BoResult", "expected_improvement", "propose_next", "optimize"]


@dataclass(frozen=True)
class BoConfig:
    """Settings of one optimization run over the interval ``(lower, upper]``."""

    lower: float = 1e-3
    upper: float = 20.0
    nstart: int = 5
    niter: int = 25
    xi: float = 0.01
    acquisition_candidates: int = 2000
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.lower < self.upper:
            raise ValueError("need 0 < lower < upper")
        if self.nstart < 1:
            raise ValueError("nstart must be at least 1")
        if self.niter < 0:
            raise ValueError("niter must be nonnegative")
        if self.xi < 0:
            raise ValueError("xi must be nonnegative")
        if self.acquisition_candidates < 1:
            raise ValueError("acquisition_candidates must be at least 1")


@dataclass(frozen=True)
class BoResult:
    """Outcome of an optimization run.

    ``history`` records every (parameter, objective) evaluation in order;
    failed evaluations appear with objective ``-inf``.
    """

    best_epsilon: float
    best_objective: float
    history: list[tuple[float, float]] = field(repr=False)
    elapsed: float = 0.0


def expected_improvement(mean, std, best_so_far, xi=0.0):
    """Closed-form Expected Improvement over the incumbent best.

    ``EI = (mu - best - xi) * Phi(Z) + sigma * phi(Z)`` with
    ``Z = (mu - best - xi) / sigma``, and exactly zero wherever
    ``sigma == 0``. ``phi``/``Phi`` are the standard normal pdf/cdf.
    Round-off can leave a tiny negative residue, which is clipped.
    """
    mean = np.asarray(mean, dtype=float)
    std = np.asarray(std, dtype=float)
    if np.any(std < 0):
        raise ValueError("std must be nonnegative")
    gain = mean - best_so_far - xi
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(std > 0, gain / np.where(std > 0, std, 1.0), 0.0)
    ei = np.where(std > 0, gain * norm.cdf(z) + std * norm.pdf(z), 0.0)
    return np.maximum(ei, 0.0)


def propose_next(surrogate: GaussianProcess, best_so_far: float, config: BoConfig, rng) -> float:
    """Parameter maximizing Expected Improvement over random candidates.

    Draws ``config.acquisition_candidates`` uniform points in the search
    interval, scores them through the surrogate and returns the argmax
    (first occurrence on ties). Deterministic given the generator state.
    """
    candidates = rng.uniform(config.lower, config.upper, config.acquisition_candidates)
    mean, std = surrogate.predict(candidates)
    scores = expected_improvement(mean, std, best_so_far, config.xi)
    return float(candidates[int(np.argmax(scores))])


def optimize(objective, config: BoConfig) -> BoResult:
    """Maximize a black-box objective over ``(lower, upper]``.

    The objective is called once per scheduled evaluation; it may signal an
    unusable parameter by raising a ``NumericalError``, which is recorded
    as ``-inf`` (and excluded from surrogate training, where it would
    poison the target standardization) while the loop continues.

    Raises
    ------
    SearchFailedError
        If every scheduled evaluation failed.
    """
    seed_root = np.random.SeedSequence(config.seed)
    init_rng, candidate_rng = (np.random.default_rng(s) for s in seed_root.spawn(2))

    t0 = time.perf_counter()
    history: list[tuple[float, float]] = []

    def evaluate(eps: float) -> None:
        try:
            value = float(objective(eps))
        except NumericalError:
            value = -math.inf
        history.append((float(eps), value))

    for eps in init_rng.uniform(config.lower, config.upper, config.nstart):
        evaluate(eps)

    for _ in range(config.niter):
        finite = [(e, g) for e, g in history if math.isfinite(g)]
        if finite:
            eps_seen = np.array([e for e, _ in finite])
            g_seen = np.array([g for _, g in finite])
            surrogate = GaussianProcess().fit(eps_seen, g_seen)
            eps_next = propose_next(surrogate, float(g_seen.max()), config, candidate_rng)
        else:
            # Nothing usable to model yet; keep exploring uniformly.
            eps_next = float(candidate_rng.uniform(config.lower, config.upper))
        evaluate(eps_next)

    elapsed = time.perf_counter() - t0
    best_eps, best_val = max(history, key=lambda item: item[1])
    if not math.isfinite(best_val):
        raise SearchFailedError("every objective evaluation failed")
    return BoResult(best_eps, best_val, history, elapsed)
