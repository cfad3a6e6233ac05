"""Fitting, evaluation and error metrics of the RBF model."""

import numpy as np
import pytest
from sklearn.base import clone

from rbftune.data import eval_test_function, random_points
from rbftune.exceptions import ConditioningError, ConfigurationError, RankDeficiencyError
from rbftune.kernels import RadialKernel, kernel_matrix
from rbftune.rbf import RbfRegressor, factor_spd, mae, rmae, solve_collocation

FAMILIES = ("ga", "m2", "w2")


def _sample_problem(n=25, seed=0, surface="f1"):
    X = random_points(n, 2, seed=seed)
    return X, eval_test_function(surface, X)


class TestInterpolation:
    def test_single_point_system(self):
        model = RbfRegressor("ga", 3.0).fit([[0.2, 0.4]], [3.5])
        np.testing.assert_array_equal(model.coef_, [3.5])
        np.testing.assert_allclose(model.predict([[0.2, 0.4]]), [3.5])

    @pytest.mark.parametrize("family", FAMILIES)
    def test_reproduces_data_at_nodes(self, family):
        X, y = _sample_problem(n=5, seed=1)
        model = RbfRegressor(family, 2.0).fit(X, y)
        np.testing.assert_allclose(model.predict(X), y, rtol=1e-8, atol=1e-12)

    def test_node_residual_scales_with_data(self):
        X, y = _sample_problem(n=60, seed=2)
        model = RbfRegressor("m2", 3.0).fit(X, y)
        residual = np.abs(model.predict(X) - y).max()
        assert residual <= 1e-6 * (1 + np.abs(y).max())

    def test_duplicate_nodes_rejected(self):
        X = np.array([[0.1, 0.1], [0.5, 0.5], [0.1, 0.1]])
        with pytest.raises(ValueError, match="duplicate"):
            RbfRegressor("ga", 1.0).fit(X, [1.0, 2.0, 3.0])

    def test_conditioning_error_carries_epsilon(self):
        # Indefinite beyond any jitter the retry applies (eigenvalues 3, -1).
        indefinite = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(ConditioningError) as excinfo:
            factor_spd(indefinite, epsilon=1e-8)
        assert excinfo.value.epsilon == 1e-8

    def test_jitter_retry_rescues_a_borderline_matrix(self):
        # Numerically rank-one, rescued by the diagonal bump.
        ones = np.ones((4, 4))
        factor_spd(ones, epsilon=0.5)


class TestLeastSquares:
    def test_square_centers_match_interpolation_branch(self):
        X, y = _sample_problem(n=12, seed=3)
        kernel = RadialKernel("ga", 2.0)
        direct = solve_collocation(kernel, X, y)
        via_lstsq = solve_collocation(kernel, X, y, centers=X.copy())
        np.testing.assert_allclose(direct, via_lstsq, rtol=1e-7, atol=1e-10)

    def test_first_order_optimality(self):
        X, y = _sample_problem(n=30, seed=4)
        centers = X[::3]
        kernel = RadialKernel("m2", 4.0)
        coef = solve_collocation(kernel, X, y, centers=centers)
        K = kernel_matrix(kernel, X, centers)
        base = np.linalg.norm(K @ coef - y)
        rng = np.random.default_rng(0)
        for _ in range(25):
            delta = rng.normal(scale=1e-4, size=coef.shape)
            assert np.linalg.norm(K @ (coef + delta) - y) >= base - 1e-12

    def test_predictions_at_data_match_matrix_product(self):
        X, y = _sample_problem(n=24, seed=5)
        centers = X[:8]
        model = RbfRegressor("ga", 3.0).fit(X, y, centers=centers)
        expected = kernel_matrix(model.kernel_, X, centers) @ model.coef_
        np.testing.assert_allclose(model.predict(X), expected, rtol=1e-13)

    def test_foreign_centers_rejected(self):
        X, y = _sample_problem(n=10, seed=6)
        with pytest.raises(ConfigurationError, match="subset"):
            RbfRegressor("ga", 2.0).fit(X, y, centers=np.array([[10.0, 10.0]]))

    def test_rank_deficiency_detected(self):
        # Near-coincident centers at a negligible shape parameter produce
        # numerically identical columns.
        X = np.array([[0.0, 0.0], [1e-13, 0.0], [0.5, 0.5], [1.0, 1.0]])
        centers = X[:2]
        with pytest.raises((RankDeficiencyError, ConditioningError)):
            solve_collocation(RadialKernel("ga", 1e-8), X, np.arange(4.0), centers=centers)


class TestModelProperties:
    def test_linearity_of_the_fit(self):
        X, _ = _sample_problem(n=20, seed=7)
        f = eval_test_function("f1", X)
        g = eval_test_function("f2", X)
        queries = random_points(30, 2, seed=8)
        alpha, beta = 2.5, -1.25

        fit = lambda values: RbfRegressor("ga", 3.0).fit(X, values).predict(queries)
        combined = fit(alpha * f + beta * g)
        np.testing.assert_allclose(
            combined, alpha * fit(f) + beta * fit(g), rtol=1e-8, atol=1e-10
        )

    def test_single_center_model(self):
        model = RbfRegressor("m2", 1.0).fit([[0.5, 0.5]], [2.0])
        np.testing.assert_allclose(model.predict([[0.5, 0.5]]), [2.0])

    def test_wendland_evaluates_to_zero_beyond_support(self):
        X, y = _sample_problem(n=15, seed=9)
        model = RbfRegressor("w2", 8.0).fit(X, y)
        # Every center is farther than 1/eps from this corner-adjacent point.
        far = np.array([[50.0, 50.0]])
        np.testing.assert_array_equal(model.predict(far), [0.0])

    def test_predict_before_fit_raises(self):
        with pytest.raises(AttributeError, match="not fitted"):
            RbfRegressor().predict([[0.0, 0.0]])

    def test_dimension_mismatch_on_predict(self):
        X, y = _sample_problem(n=5, seed=10)
        model = RbfRegressor("ga", 2.0).fit(X, y)
        with pytest.raises(ValueError, match="dimension"):
            model.predict(np.zeros((3, 4)))


class TestSklearnCompat:
    def test_get_params_round_trip(self):
        model = RbfRegressor(kernel="w2", epsilon=5.0)
        assert model.get_params() == {"kernel": "w2", "epsilon": 5.0}
        cloned = clone(model)
        assert cloned.get_params() == model.get_params()

    def test_set_params(self):
        model = RbfRegressor().set_params(kernel="m2", epsilon=1.5)
        X, y = _sample_problem(n=8, seed=11)
        model.fit(X, y)
        assert model.kernel_.family == "m2"

    def test_score_is_r2(self):
        X, y = _sample_problem(n=40, seed=12)
        model = RbfRegressor("ga", 4.0).fit(X, y)
        assert model.score(X, y) > 0.999999


class TestErrorMetrics:
    def test_mae_identical_vectors(self):
        assert mae([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0

    def test_mae_hand_value(self):
        assert mae([0.0, 5.0], [1.0, 3.0]) == 2.0

    def test_mae_dominates_mean_absolute_error(self):
        rng = np.random.default_rng(13)
        p, t = rng.normal(size=50), rng.normal(size=50)
        assert mae(p, t) >= np.mean(np.abs(p - t))

    def test_mae_input_validation(self):
        with pytest.raises(ValueError):
            mae([1.0, 2.0], [1.0])
        with pytest.raises(ValueError):
            mae([], [])

    def test_rmae_perfect_predictions(self):
        assert rmae([4.0, -2.0], [4.0, -2.0]) == 0.0

    def test_rmae_hand_value(self):
        assert rmae([0.0], [2.0]) == 1.0

    def test_rmae_zero_truth_rejected(self):
        with pytest.raises(ValueError, match="all-zero"):
            rmae([1.0], [0.0])
