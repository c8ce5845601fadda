import numpy as np
import pytest

from cholspace import CholeskyMetric, SpdMetric


def rel_err(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) / scale


def random_cholesky(rng: np.random.Generator, n: int, lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """Random point: signed strict lower part, diagonal in [lo, hi]."""
    l = np.tril(rng.uniform(-1.0, 1.0, size=(n, n)), -1)
    l[np.diag_indices(n)] = rng.uniform(lo, hi, size=n)
    return l


def random_lower(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return np.tril(rng.uniform(-scale, scale, size=(n, n)))


def random_spd(rng: np.random.Generator, n: int, cond: float = 100.0) -> np.ndarray:
    """Random SPD matrix with spectrum log-spaced up to the given condition number."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    w = np.logspace(0.0, np.log10(cond), n) / np.sqrt(cond)
    rng.shuffle(w)
    return (q * w) @ q.T


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def cholesky_presets(theta):
    return [
        CholeskyMetric.cm(),
        CholeskyMetric.dem(theta),
        CholeskyMetric.dgbwm(theta),
    ]


def spd_presets(theta):
    return [
        SpdMetric.lcm(),
        SpdMetric.cdem(theta),
        SpdMetric.cdgbwm(theta),
    ]
