import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.extra.numpy import arrays
from hypothesis.strategies import floats, integers

from src.ads.models import AdsModel, TrrParams
from src.ads.reduction import (
    cumulative_variance_dimension,
    fit_ads,
    fit_fpca,
    reduce,
    trr_dimension,
)
from src.ads.target_matrix import (
    compute_An,
    difference_covariance,
    fpca_matrix,
    pooled_covariance,
    standardized_eigen,
)
from src.basis.fourier import evaluate_basis
from src.basis.models import BasisSpec, FunctionalSample, TimeGrid
from src.core.exceptions import (
    DegenerateVarianceError,
    DomainError,
    EmptyReductionError,
    InsufficientDataError,
)
from src.simlab.generator import gen_sequence
from src.simlab.models import SimConfig
from src.utils.linalg_utils import psd_sqrt_pair, sym_eig

RIDGE_200 = TrrParams.default_ridge(200)

samples = arrays(
    np.float64,
    (12, 5),
    elements=floats(-10.0, 10.0, allow_nan=False, allow_infinity=False),
)


def _sample(coeffs) -> FunctionalSample:
    return FunctionalSample.from_coeffs(np.asarray(coeffs, dtype=float))


class TestTrrParams:
    def test_default_ridge(self):
        assert RIDGE_200 == pytest.approx(0.0589, abs=1e-4)

    @pytest.mark.parametrize("tau1", [0.0, 1.0, 1.5])
    def test_tau1_range(self, tau1):
        with pytest.raises(DomainError):
            TrrParams(tau1=tau1, c_n=0.1)

    def test_ridge_positive(self):
        with pytest.raises(DomainError):
            TrrParams(c_n=0.0)

    def test_overrides(self):
        params = TrrParams.for_sample_size(200, tau1=0.3)
        assert params.tau1 == 0.3
        assert params.c_n == RIDGE_200


class TestComputeAn:
    def test_constant_rows(self):
        A = compute_An(_sample(np.tile([1.0, -2.0, 3.0], (6, 1))))
        np.testing.assert_allclose(A, np.zeros((3, 3)), atol=1e-15)

    def test_single_jump_by_hand(self):
        A = compute_An(_sample([[0.0], [0.0], [1.0], [1.0]]))
        assert A[0, 0] == pytest.approx(0.125, abs=1e-15)

    def test_null_is_near_zero(self, rng):
        A = compute_An(_sample(rng.standard_normal((10000, 5))))
        assert np.max(np.abs(A)) < 0.1

    @settings(max_examples=200, deadline=None)
    @given(samples)
    def test_decomposition(self, coeffs):
        sample = _sample(coeffs)
        np.testing.assert_allclose(
            fpca_matrix(sample),
            compute_An(sample) + difference_covariance(sample.coeffs),
            atol=1e-12 * max(1.0, np.max(np.abs(coeffs)) ** 2),
        )

    @settings(max_examples=200, deadline=None)
    @given(samples)
    def test_reversal_invariance(self, coeffs):
        forward = compute_An(_sample(coeffs))
        backward = compute_An(_sample(coeffs[::-1]))
        np.testing.assert_allclose(
            forward, backward, atol=1e-10 * max(1.0, np.max(np.abs(coeffs)) ** 2)
        )

    def test_matches_kernel_on_fine_grid(self):
        """Quadratic forms of A_n against double Riemann sums of the Delta_n kernel."""
        spec = BasisSpec(D=5)
        m = 500
        grid = TimeGrid(points=(np.arange(m) + 0.5) / m)
        phi = evaluate_basis(spec, grid)
        rng = np.random.default_rng(2024)

        for _ in range(20):
            coeffs = rng.normal(size=(20, 5))
            Y = coeffs @ phi.T
            centered = Y - Y.mean(axis=0)
            steps = np.diff(Y, axis=0)
            kernel = centered.T @ centered / 20 - steps.T @ steps / 40

            b = rng.normal(size=5)
            v = phi @ b
            direct = v @ kernel @ v / m**2
            assert b @ compute_An(_sample(coeffs)) @ b == pytest.approx(direct, abs=1e-4)


class TestSymEig:
    def test_identity(self):
        values, vectors = sym_eig(np.eye(4))
        np.testing.assert_allclose(values, np.ones(4))
        np.testing.assert_allclose(vectors.T @ vectors, np.eye(4), atol=1e-12)

    def test_diagonal(self):
        values, vectors = sym_eig(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(values, [3.0, 2.0, 1.0])
        np.testing.assert_allclose(vectors, np.eye(3)[:, [0, 2, 1]], atol=1e-12)

    def test_reconstruction(self, rng):
        X = rng.normal(size=(21, 21))
        S = (X + X.T) / 2
        values, vectors = sym_eig(S)
        np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.T, S, atol=1e-8)
        residual = np.linalg.norm(S @ vectors - vectors * values, axis=0)
        assert np.all(residual <= 1e-8 * np.linalg.norm(S))

    def test_sign_convention(self, rng):
        X = rng.normal(size=(6, 6))
        _, vectors = sym_eig(X @ X.T)
        pivots = np.argmax(np.abs(vectors), axis=0)
        assert np.all(vectors[pivots, np.arange(6)] > 0)

    def test_not_symmetric(self):
        with pytest.raises(DomainError):
            sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestTrrDimension:
    def test_two_dominant_eigenvalues(self):
        assert trr_dimension([10.0, 4.0, 0.01, 0.005], TrrParams(c_n=RIDGE_200)) == 2

    def test_equal_eigenvalues(self):
        assert trr_dimension([2.0, 2.0, 2.0], TrrParams(c_n=RIDGE_200)) == 0

    def test_single_spike(self):
        assert trr_dimension([1.0, 0.0, 0.0, 0.0], TrrParams(c_n=0.0589)) == 1

    def test_negative_eigenvalues_are_floored(self):
        assert trr_dimension([1.0, -0.5, -1.0], TrrParams(c_n=0.0589)) == 1

    def test_unsorted(self):
        with pytest.raises(DomainError):
            trr_dimension([1.0, 2.0], TrrParams(c_n=0.1))

    @settings(max_examples=200, deadline=None)
    @given(
        arrays(np.float64, integers(2, 21), elements=floats(-1.0, 100.0, allow_nan=False)),
        floats(0.01, 0.99),
    )
    def test_range(self, eigenvalues, tau1):
        lam = np.sort(eigenvalues)[::-1]
        q = trr_dimension(lam, TrrParams(tau1=tau1, c_n=0.05))
        assert 0 <= q < lam.size


class TestReduce:
    def test_first_unit_vector(self, rng):
        sample = _sample(rng.normal(size=(8, 5)))
        np.testing.assert_array_equal(reduce(sample, np.eye(5), 1)[:, 0], sample.coeffs[:, 0])

    def test_full_rotation_is_isometric(self, rng):
        sample = _sample(rng.normal(size=(8, 5)))
        B, _ = np.linalg.qr(rng.normal(size=(5, 5)))
        reduced = reduce(sample, B, 5)
        np.testing.assert_allclose(
            np.linalg.norm(reduced, axis=1), np.linalg.norm(sample.coeffs, axis=1)
        )

    def test_empty_reduction(self, rng):
        with pytest.raises(EmptyReductionError):
            reduce(_sample(rng.normal(size=(8, 5))), np.eye(5), 0)


class TestFitAds:
    def test_noiseless_two_segments(self, piecewise_sample):
        sample = piecewise_sample([[1.0, 0.0, 2.0, 0.0, -1.0], np.zeros(5)], [5, 5])
        model = fit_ads(sample)
        assert model.q_hat == 1
        column = model.reduced[:, 0]
        assert np.unique(np.round(column, 10)).size == 2
        np.testing.assert_allclose(column[:5], column[0])
        np.testing.assert_allclose(column[5:], column[5], atol=1e-12)

    @pytest.mark.parametrize("n_segments", [1, 2, 3])
    def test_change_points_preserved(self, piecewise_sample, rng, n_segments):
        means = rng.normal(scale=3.0, size=(n_segments, 7))
        sample = piecewise_sample(means, [10] * n_segments)
        model = fit_ads(sample)

        def jumps(values):
            return set(np.flatnonzero(np.abs(np.diff(values, axis=0)).max(axis=1) > 1e-9))

        reduced = model.reduced if model.has_signal else np.zeros((sample.n, 1))
        assert jumps(reduced) == jumps(sample.coeffs)

    def test_model_invariants(self, single_change_config):
        model = fit_ads(gen_sequence(single_change_config))
        assert np.all(np.diff(model.eigenvalues) <= 0)
        np.testing.assert_allclose(model.eigenvectors.T @ model.eigenvectors, np.eye(21), atol=1e-8)
        assert model.reduced.shape == (200, model.q_hat)

    def test_too_few_observations(self):
        with pytest.raises(InsufficientDataError):
            fit_ads(_sample(np.zeros((3, 3))))

    def test_json_fields(self, piecewise_sample):
        model = fit_ads(piecewise_sample([[1.0, 1.0, 0.0], [0.0, 0.0, 0.0]], [6, 6]))
        document = model.to_json_dict()
        assert document["q_hat"] == 1
        assert len(document["reduced"]) == 12
        assert set(document) == {"method", "eigenvalues", "q_hat", "eigenvectors", "reduced"}


class TestPsdSqrtPair:
    def test_diagonal(self):
        root, inv_root = psd_sqrt_pair(np.diag([4.0, 1.0]))
        np.testing.assert_allclose(root, np.diag([2.0, 1.0]))
        np.testing.assert_allclose(inv_root, np.diag([0.5, 1.0]))

    def test_rank_deficient_gives_pseudo_inverse(self):
        d = np.array([1.0, 2.0, -2.0])
        root, inv_root = psd_sqrt_pair(np.outer(d, d))
        projector = np.outer(d, d) / (d @ d)
        np.testing.assert_allclose(root @ inv_root, projector, atol=1e-12)
        np.testing.assert_allclose(inv_root @ d, d / np.linalg.norm(d), atol=1e-12)

    def test_zero_matrix(self):
        with pytest.raises(DegenerateVarianceError):
            psd_sqrt_pair(np.zeros((2, 2)))


class TestStandardizedEigen:
    def test_noiseless_step_by_hand(self, piecewise_sample):
        d = np.array([1.0, 0.0, 2.0])
        values, vectors = standardized_eigen(piecewise_sample([d, np.zeros(3)], [5, 5]))
        # M = d d^T / 4 and Q = d d^T / 20 along the step direction
        assert values[0] == pytest.approx(5.0)
        np.testing.assert_allclose(values[1:], 0.0, atol=1e-10)
        np.testing.assert_allclose(vectors[:, 0], d / np.linalg.norm(d), atol=1e-12)
        np.testing.assert_allclose(vectors.T @ vectors, np.eye(3), atol=1e-12)

    def test_constant_sequence_falls_back_to_An(self):
        values, _ = standardized_eigen(_sample(np.ones((6, 3))))
        np.testing.assert_allclose(values, 0.0, atol=1e-15)

    def test_null_values_sit_near_one(self, null_sample):
        values, _ = standardized_eigen(null_sample)
        assert 0.2 <= values[-1] <= values[0] <= 2.0

    def test_invariant_to_coordinate_scaling(self, single_change_config):
        sample = gen_sequence(single_change_config)
        scales = 2.0 ** (np.arange(1, sample.D + 1) / 2.0)
        rescaled = _sample(sample.coeffs * scales)
        np.testing.assert_allclose(
            standardized_eigen(rescaled)[0], standardized_eigen(sample)[0], rtol=1e-6, atol=1e-5
        )

    def test_pooled_covariance_is_Qn(self, rng):
        sample = _sample(rng.normal(size=(9, 3)))
        np.testing.assert_array_equal(pooled_covariance(sample), difference_covariance(sample.coeffs))


class TestFitAdsOnDesign:
    def test_single_change_selects_one(self, single_change_config):
        model = fit_ads(gen_sequence(single_change_config))
        assert model.q_hat == 1
        column = model.reduced[:, 0]
        # projected jump is u * sqrt(D_c) = 0.447
        assert abs(column[:100].mean() - column[100:].mean()) > 0.3

    def test_null_selects_nothing(self, null_sample):
        assert fit_ads(null_sample).q_hat == 0

    def test_noiseless_single_change(self, single_change_config):
        config = single_change_config.model_copy(update={"noise_scale": 0.0})
        model = fit_ads(gen_sequence(config))
        assert model.q_hat == 1
        direction = model.eigenvectors[:, 0]
        expected = config.mean_vector() / np.linalg.norm(config.mean_vector())
        np.testing.assert_allclose(direction, expected, atol=1e-10)


class TestAdsModel:
    def test_eigenvectors_must_be_orthonormal(self):
        with pytest.raises(DomainError):
            AdsModel(
                eigenvalues=[2.0, 1.0],
                eigenvectors=[[1.0, 1.0], [0.0, 1.0]],
                q_hat=0,
                reduced=np.empty((4, 0)),
            )

    def test_reduced_width_matches_q_hat(self):
        with pytest.raises(DomainError):
            AdsModel(
                eigenvalues=[2.0, 1.0],
                eigenvectors=np.eye(2),
                q_hat=1,
                reduced=np.zeros((4, 2)),
            )


class TestFpcaBaseline:
    def test_cumulative_variance(self):
        assert cumulative_variance_dimension([5.0, 3.0, 1.0, 1.0], 0.9) == 3
        assert cumulative_variance_dimension([0.0, 0.0], 0.9) == 0

    def test_variance_range(self):
        with pytest.raises(DomainError):
            cumulative_variance_dimension([1.0], 0.0)

    def test_rank_one_covariance(self, piecewise_sample):
        model = fit_fpca(piecewise_sample([[2.0, 0.0, 1.0], np.zeros(3)], [6, 6]))
        assert model.method == "fpca"
        assert model.q_hat == 1


@pytest.mark.slow
class TestSelectionRates:
    def test_single_change_selects_one_dimension(self):
        config = SimConfig(n=200, change_points=[100], u=0.1, D_c=20)
        hits = sum(fit_ads(gen_sequence(config.with_seed(s))).q_hat == 1 for s in range(100))
        assert hits >= 90

    def test_null_selects_nothing(self):
        config = SimConfig(n=200)
        hits = sum(fit_ads(gen_sequence(config.with_seed(s))).q_hat == 0 for s in range(100))
        assert hits >= 90
