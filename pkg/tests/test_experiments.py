import numpy as np
import pytest

from cholspace import CholeskyMetric, RAW
from cholspace.errors import ConfigError, ParseError
from cholspace.experiments import (
    StabilityConfig,
    dump_spd_pair,
    gen_random_instance,
    load_spd_pair,
    set_min_diag,
    stability_experiment,
    swelling_pair,
    trial_rng,
)


class TestInstanceGeneration:
    def test_diagonals_are_positive(self):
        for idx in range(200):
            rng = trial_rng(1, "cm", 0.0, 1e-3, idx)
            l, x = gen_random_instance(5, rng)
            assert np.all(np.diag(l) > 0)
            assert np.all(np.diag(x) >= 0)
            assert np.array_equal(l, np.tril(l))
            assert np.array_equal(x, np.tril(x))

    def test_fixed_seed_is_bitwise_reproducible(self):
        a = gen_random_instance(4, trial_rng(9, "dem", 0.5, 1e-5, 3))
        b = gen_random_instance(4, trial_rng(9, "dem", 0.5, 1e-5, 3))
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_distinct_cells_get_distinct_streams(self):
        a, _ = gen_random_instance(4, trial_rng(9, "dem", 0.5, 1e-5, 3))
        b, _ = gen_random_instance(4, trial_rng(9, "dem", 1.5, 1e-5, 3))
        assert not np.array_equal(a, b)

    def test_entry_magnitude_mean(self):
        """|entries| should average about one half."""
        rng = np.random.default_rng(0)
        total, count = 0.0, 0
        for _ in range(300):
            l, x = gen_random_instance(8, rng)
            idx = np.tril_indices(8, -1)
            total += np.abs(l[idx]).sum() + np.abs(x[idx]).sum()
            total += np.diag(l).sum() + np.diag(x).sum()
            count += 2 * (len(idx[0]) + 8)
        assert abs(total / count - 0.5) <= 0.02


class TestSetMinDiag:
    def test_replaces_smallest(self):
        l = np.diag([0.5, 0.2, 0.9])
        out = set_min_diag(l, 1e-5)
        assert np.array_equal(np.diag(out), [0.5, 1e-5, 0.9])

    def test_tie_breaks_low_index(self):
        out = set_min_diag(np.diag([0.3, 0.3, 0.3]), 1e-4)
        assert np.array_equal(np.diag(out), [1e-4, 0.3, 0.3])

    def test_min_equals_eps(self):
        rng = np.random.default_rng(5)
        l, _ = gen_random_instance(6, rng)
        assert np.min(np.diag(set_min_diag(l, 1e-7))) == 1e-7

    def test_does_not_mutate(self):
        l = np.diag([0.5, 0.2])
        set_min_diag(l, 1e-5)
        assert l[1, 1] == 0.2

    def test_rejects_nonpositive_eps(self):
        with pytest.raises(ConfigError):
            set_min_diag(np.eye(2), 0.0)


class TestStabilityExperiment:
    def test_determinism(self):
        cfg = StabilityConfig(n=3, trials=50, eps_list=(1e-3, 1e-10), seed=11)
        a = stability_experiment(cfg)
        b = stability_experiment(cfg)
        assert [c.failures for c in a.cells] == [c.failures for c in b.cells]

    def test_benign_eps_never_fails(self):
        cfg = StabilityConfig(n=3, trials=200, eps_list=(1.0,), seed=1)
        report = stability_experiment(cfg)
        assert all(c.failures == 0 for c in report.cells)

    def test_cm_rate_monotone_in_eps(self):
        eps = (1e-2, 1e-3, 1e-4, 1e-5, 1e-10)
        cfg = StabilityConfig(n=3, trials=300, eps_list=eps, metrics=("cm",), seed=3)
        report = stability_experiment(cfg)
        rates = [report.rate("cm", e) for e in eps]
        assert rates == sorted(rates)

    def test_new_metrics_never_fail_at_tiny_eps(self):
        cfg = StabilityConfig(n=3, trials=300, eps_list=(1e-10, 1e-15), metrics=("dem", "dgbwm"), seed=4)
        report = stability_experiment(cfg)
        for cell in report.cells:
            assert cell.failures == 0
            assert cell.first_failure == -1

    def test_raw_survivors_match_checked_bitwise(self):
        """Whenever the raw geodesic is finite, checked mode returns the same
        floats."""
        cfg = StabilityConfig(n=3, trials=80, eps_list=(1e-3,), seed=8)
        for metric_name, theta in (("cm", None), ("dem", 0.5), ("dgbwm", 1.5)):
            raw = (
                CholeskyMetric.cm(mode=RAW)
                if metric_name == "cm"
                else getattr(CholeskyMetric, metric_name)(theta, mode=RAW)
            )
            checked = CholeskyMetric(raw.line, mode="checked")
            for idx in range(cfg.trials):
                rng = trial_rng(cfg.seed, metric_name, theta or 0.0, 1e-3, idx)
                l, x = gen_random_instance(cfg.n, rng)
                l = set_min_diag(l, 1e-3)
                out = raw.geodesic(l, cfg.tangent_scale * x, cfg.t_eval)
                if np.all(np.isfinite(out)):
                    assert np.array_equal(checked.geodesic(l, cfg.tangent_scale * x, cfg.t_eval), out)

    def test_first_failure_recorded(self):
        cfg = StabilityConfig(n=3, trials=100, eps_list=(1e-10,), metrics=("cm",), seed=2)
        report = stability_experiment(cfg)
        cell = report.cells[0]
        assert cell.failures > 0
        assert 0 <= cell.first_failure < cfg.trials

    def test_checked_mode_counts_the_same_failures(self):
        base = dict(n=3, trials=150, eps_list=(1e-3, 1e-10), seed=6)
        raw = stability_experiment(StabilityConfig(**base, mode="raw"))
        checked = stability_experiment(StabilityConfig(**base, mode="checked"))
        assert [c.failures for c in raw.cells] == [c.failures for c in checked.cells]

    def test_invalid_mode(self):
        with pytest.raises(ConfigError):
            stability_experiment(StabilityConfig(mode="fast"))

    def test_csv_shape(self):
        cfg = StabilityConfig(n=3, trials=10, eps_list=(1e-3,), seed=0)
        report = stability_experiment(cfg)
        rows = report.csv_rows()
        assert rows[0] == ("metric", "theta", "eps", "t", "value")
        # cm once, dem and dgbwm per theta
        assert len(rows) == 1 + 1 + 2 + 2

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            stability_experiment(StabilityConfig(trials=0))
        with pytest.raises(ConfigError):
            stability_experiment(StabilityConfig(eps_list=(-1.0,)))
        with pytest.raises(ConfigError):
            stability_experiment(StabilityConfig(theta_list=(0.0,)))
        with pytest.raises(ConfigError):
            stability_experiment(StabilityConfig(metrics=("cm", "aim")))


class TestSpdPairIo:
    def test_round_trip(self, tmp_path):
        p, q = swelling_pair()
        path = tmp_path / "pair.json"
        path.write_text(dump_spd_pair(p, q))
        p2, q2 = load_spd_pair(str(path))
        assert np.allclose(p, p2) and np.allclose(q, q2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_spd_pair(str(tmp_path / "absent.json"))

    def test_malformed_document(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 2, "P": [[1, 0], [0, 1]]}')
        with pytest.raises(ParseError):
            load_spd_pair(str(path))

    def test_shape_mismatch(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 3, "P": [[1, 0], [0, 1]], "Q": [[1, 0], [0, 1]]}')
        with pytest.raises(ParseError):
            load_spd_pair(str(path))

    def test_swelling_pair_determinants(self):
        p, q = swelling_pair()
        assert np.linalg.det(p) == pytest.approx(3.07, abs=1e-9)
        assert np.linalg.det(q) == pytest.approx(3.38, abs=1e-9)
