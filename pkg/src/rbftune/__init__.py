"""rbftune: RBF fitting with automatic shape-parameter selection.

Scattered-data interpolation and least-squares approximation with radial
kernels (Gaussian, Matern C^2, Wendland C^2), plus three tuners for the
kernel shape parameter: exhaustive leave-one-out cross validation via
Rippa's rule, an optimizer-driven LOOCV variant, and Bayesian optimization
with a Matern-5/2 Gaussian-process surrogate and Expected Improvement.
"""

from .bo import BoConfig, BoResult, expected_improvement, optimize, propose_next
from .data import halton_points, load_csv, random_points, eval_test_function, train_val_split
from .exceptions import (
    ConditioningError,
    ConfigurationError,
    NumericalError,
    RankDeficiencyError,
    RbfTuneError,
    SearchFailedError,
    SurrogateFitError,
)
from .gp import GaussianProcess, matern52
from .kernels import RadialKernel, kernel_matrix
from .loocv import LoocvResult, grid_search, loo_cost, loo_residuals, optimizer_search
from .rbf import RbfRegressor, mae, rmae
from .tuning import TunedRbfRegressor, TuneReport, center_sweep, tune_report

__version__ = "0.1.0"

__all__ = [
    "BoConfig",
    "BoResult",
    "ConditioningError",
    "ConfigurationError",
    "GaussianProcess",
    "LoocvResult",
    "NumericalError",
    "RadialKernel",
    "RankDeficiencyError",
    "RbfRegressor",
    "RbfTuneError",
    "SearchFailedError",
    "SurrogateFitError",
    "TuneReport",
    "TunedRbfRegressor",
    "center_sweep",
    "expected_improvement",
    "grid_search",
    "halton_points",
    "kernel_matrix",
    "load_csv",
    "loo_cost",
    "loo_residuals",
    "mae",
    "matern52",
    "optimize",
    "optimizer_search",
    "propose_next",
    "random_points",
    "rmae",
    "eval_test_function",
    "train_val_split",
    "tune_report",
    "__version__",
]
