import numpy as np
import pytest

from cholspace import CholeskyMetric
from cholspace.errors import GyroDomainError
from cholspace.gyro import (
    add_defined,
    axiom_suite,
    gyration,
    gyration_defining,
    gyro_add,
    gyro_add_generic,
    gyro_inverse,
    gyro_scale,
    gyro_scale_generic,
    inverse_defined,
    scale_defined,
)

from conftest import rel_err

DEM1 = CholeskyMetric.dem(1.0)


def scalar(x: float) -> np.ndarray:
    return np.array([[float(x)]])


def in_domain_point(rng, metric, n=3):
    from cholspace.gyro import _sample_point

    return _sample_point(metric, rng, n)


FAMILY_GRID = [
    CholeskyMetric.cm(),
    CholeskyMetric.dem(0.5),
    CholeskyMetric.dem(1.0),
    CholeskyMetric.dem(1.5),
    CholeskyMetric.dgbwm(0.5),
    CholeskyMetric.dgbwm(1.0),
    CholeskyMetric.dgbwm(1.5),
]


class TestClosedForms:
    def test_left_identity(self, rng):
        for metric in FAMILY_GRID:
            l = in_domain_point(rng, metric)
            assert rel_err(gyro_add(metric, np.eye(3), l), l) <= 1e-15

    def test_dem1_scalar_add(self):
        assert gyro_add(DEM1, scalar(2.0), scalar(3.0))[0, 0] == pytest.approx(4.0)

    def test_dem1_add_out_of_domain(self):
        assert not add_defined(DEM1, scalar(0.3), scalar(0.3))
        with pytest.raises(GyroDomainError):
            gyro_add(DEM1, scalar(0.3), scalar(0.3))

    def test_dem1_scalar_scale(self):
        assert gyro_scale(DEM1, 2.0, scalar(3.0))[0, 0] == pytest.approx(5.0)

    def test_dem1_scale_out_of_domain(self):
        assert not scale_defined(DEM1, 3.0, scalar(0.5))
        with pytest.raises(GyroDomainError):
            gyro_scale(DEM1, 3.0, scalar(0.5))

    def test_scale_endpoints(self, rng):
        for metric in FAMILY_GRID:
            l = in_domain_point(rng, metric)
            assert rel_err(gyro_scale(metric, 1.0, l), l) <= 1e-15
            assert rel_err(gyro_scale(metric, 0.0, l), np.eye(3)) <= 1e-15

    def test_dem1_inverse(self):
        inv = gyro_inverse(DEM1, scalar(1.5))
        assert inv[0, 0] == pytest.approx(0.5)
        assert gyro_add(DEM1, inv, scalar(1.5))[0, 0] == pytest.approx(1.0)

    def test_inverse_domain_boundary(self):
        metric = CholeskyMetric.dem(0.5)
        bad = scalar(2.0 ** (1.0 / 0.5) + 0.1)
        assert not inverse_defined(metric, bad)
        with pytest.raises(GyroDomainError):
            gyro_inverse(metric, bad)

    def test_identity_inverse_is_identity(self):
        for metric in FAMILY_GRID:
            assert np.allclose(gyro_inverse(metric, np.eye(3)), np.eye(3))

    def test_cm_is_unconditional(self, rng):
        metric = CholeskyMetric.cm()
        l = np.diag(rng.uniform(0.01, 100.0, size=3))
        k = np.diag(rng.uniform(0.01, 100.0, size=3))
        assert add_defined(metric, l, k)
        assert scale_defined(metric, -5.0, l)
        assert inverse_defined(metric, l)
        assert np.allclose(np.diag(gyro_add(metric, l, k)), np.diag(l) * np.diag(k))


class TestGenericComposition:
    def test_add_matches_riemannian_route(self, rng):
        for metric in FAMILY_GRID:
            l, k = in_domain_point(rng, metric), in_domain_point(rng, metric)
            if not add_defined(metric, l, k):
                continue
            assert rel_err(gyro_add(metric, l, k), gyro_add_generic(metric, l, k)) <= 1e-12

    def test_scale_matches_riemannian_route(self, rng):
        for metric in FAMILY_GRID:
            l = in_domain_point(rng, metric)
            t = rng.uniform(0.0, 1.0)
            assert rel_err(gyro_scale(metric, t, l), gyro_scale_generic(metric, t, l)) <= 1e-12


class TestGyration:
    def test_returns_argument(self, rng):
        for metric in FAMILY_GRID:
            l, k, j = (in_domain_point(rng, metric) for _ in range(3))
            assert np.array_equal(gyration(metric, l, k, j), j)

    def test_defining_expression_is_identity(self, rng):
        for metric in FAMILY_GRID:
            for _ in range(20):
                from cholspace.gyro import _sample_trial

                l, k, j, _, _ = _sample_trial(metric, rng, 3)
                assert rel_err(gyration_defining(metric, l, k, j), j) <= 1e-12

    def test_identity_arguments(self, rng):
        j = in_domain_point(rng, DEM1)
        assert np.allclose(gyration_defining(DEM1, np.eye(3), np.eye(3), j), j)


class TestMInvariance:
    def test_bw_gyro_ops_ignore_weight(self, rng):
        """The BW gyro operations are bitwise independent of the weight."""
        weights = [None, [2.0, 0.5, 3.0], [10.0, 10.0, 10.0]]
        for theta in (0.5, 1.0, 1.5):
            ref = CholeskyMetric.dgbwm(theta)
            l, k = in_domain_point(rng, ref), in_domain_point(rng, ref)
            t = rng.uniform(0.0, 1.0)
            expected_add = gyro_add(ref, l, k)
            expected_scale = gyro_scale(ref, t, l)
            expected_inv = gyro_inverse(ref, l)
            for w in weights:
                metric = CholeskyMetric.dgbwm(theta, weight=w)
                assert np.array_equal(gyro_add(metric, l, k), expected_add)
                assert np.array_equal(gyro_scale(metric, t, l), expected_scale)
                assert np.array_equal(gyro_inverse(metric, l), expected_inv)


class TestCommutativityAssociativity:
    def test_gyrocommutative(self, rng):
        for metric in FAMILY_GRID:
            l, k = in_domain_point(rng, metric), in_domain_point(rng, metric)
            if add_defined(metric, l, k):
                assert rel_err(gyro_add(metric, l, k), gyro_add(metric, k, l)) <= 1e-12

    def test_v2_spot_case(self, rng):
        for metric in FAMILY_GRID:
            l = in_domain_point(rng, metric)
            lhs = gyro_scale(metric, 0.5, l)
            rhs = gyro_add(metric, gyro_scale(metric, 0.25, l), gyro_scale(metric, 0.25, l))
            assert rel_err(lhs, rhs) <= 1e-12


class TestAxiomSuite:
    @pytest.mark.parametrize(
        "metric",
        [CholeskyMetric.dem(0.5), CholeskyMetric.dem(1.5), CholeskyMetric.dgbwm(1.0), CholeskyMetric.cm()],
        ids=["dem-0.5", "dem-1.5", "dgbwm", "cm"],
    )
    def test_thousand_trials_pass(self, metric):
        report = axiom_suite(metric, seed=2024, trials=1000)
        assert report.all_passed, report.summary()
        assert report.worst_residual <= 1e-10

    def test_report_is_deterministic(self):
        a = axiom_suite(DEM1, seed=5, trials=50)
        b = axiom_suite(DEM1, seed=5, trials=50)
        assert a.worst == b.worst

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError):
            axiom_suite(DEM1, seed=0, trials=0)
