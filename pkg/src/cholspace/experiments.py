"""Desk-scale experiments: geodesic overflow rates and interpolation tables.

The stability experiment draws random Cholesky points and tangents, forces
the smallest diagonal entry of the point down to a target magnitude, and
evaluates the raw-mode geodesic. A trial fails when the output contains any
Inf or NaN. Rates are aggregated per (metric, theta, eps) cell.

Randomness is counter based: every trial owns a generator keyed by
(seed, metric id, theta bits, eps bits, trial index), so reports are
deterministic and trials could run in any order or in parallel.

Two knobs control the evaluation convention:

* ``t_eval`` (default 1.0): where along the geodesic to evaluate.
* ``tangent_scale`` (default 1.5): multiplier applied to the tangent before
  evaluation. Diagonal entries of both the point and the tangent are kept
  positive (a signed tangent diagonal would make fractional powers undefined
  rather than merely unstable). Under this convention the logarithmic-metric
  geodesic overflows exactly when ``t_eval * tangent_scale * diag(X) / eps``
  crosses the double-precision exp limit (~709.8), while the power-family
  formulas stay finite down to eps = 1e-15 and beyond.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cholesky import CHECKED, RAW, CholeskyMetric
from .errors import ConfigError, DomainError, ParseError
from .linalg import spd_point

METRIC_IDS = {"cm": 0, "dem": 1, "dgbwm": 2}

DEFAULT_EPS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-10, 1e-15)


def _float_bits(x: float) -> int:
    return int(np.float64(x).view(np.uint64))


def trial_rng(seed: int, metric: str, theta: float, eps: float, index: int) -> np.random.Generator:
    """Deterministic per-trial generator keyed by the whole cell coordinate."""
    entropy = (int(seed), METRIC_IDS[metric], _float_bits(theta), _float_bits(eps), int(index))
    return np.random.default_rng(np.random.SeedSequence(entropy))


def gen_random_instance(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Random Cholesky point and tangent with entry magnitudes uniform in [0, 1].

    Strictly lower entries of both matrices carry a fair-coin sign; the
    diagonals stay positive (the point needs one, and a signed tangent
    diagonal would make fractional powers undefined rather than unstable).
    The point diagonal is uniform on (0, 1], the tangent diagonal on [0, 1).
    """
    l = np.tril(rng.uniform(-1.0, 1.0, size=(n, n)), -1)
    l[np.diag_indices(n)] = 1.0 - rng.random(n)
    x = np.tril(rng.uniform(-1.0, 1.0, size=(n, n)), -1)
    x[np.diag_indices(n)] = rng.random(n)
    return l, x


def set_min_diag(l: np.ndarray, eps: float) -> np.ndarray:
    """Copy of ``l`` with its smallest diagonal entry replaced by eps
    (ties broken by lowest index)."""
    if eps <= 0:
        raise ConfigError("eps must be positive")
    out = np.array(l, dtype=float)
    idx = int(np.argmin(np.diag(out)))
    out[idx, idx] = eps
    return out


@dataclass(frozen=True)
class StabilityConfig:
    n: int = 3
    trials: int = 1000
    eps_list: Sequence[float] = DEFAULT_EPS
    theta_list: Sequence[float] = (0.5, 1.5)
    metrics: Sequence[str] = ("cm", "dem", "dgbwm")
    seed: int = 0
    t_eval: float = 1.0
    tangent_scale: float = 1.5
    mode: str = RAW  # checked mode turns would-be Inf/NaN into typed errors

    def validate(self) -> None:
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.eps_list or any(e <= 0 for e in self.eps_list):
            raise ConfigError("eps values must be positive")
        if any(th == 0 for th in self.theta_list):
            raise ConfigError("theta values must be nonzero")
        unknown = set(self.metrics) - set(METRIC_IDS)
        if unknown:
            raise ConfigError(f"unknown metrics: {sorted(unknown)}")
        if self.mode not in (RAW, CHECKED):
            raise ConfigError(f"mode must be 'raw' or 'checked', got {self.mode!r}")


@dataclass
class CellResult:
    metric: str
    theta: float | None
    eps: float
    trials: int
    failures: int
    first_failure: int = -1  # trial index of the first failing draw, -1 if none

    @property
    def rate(self) -> float:
        """Failure rate in percent."""
        return 100.0 * self.failures / self.trials


@dataclass
class FailureReport:
    config: StabilityConfig
    cells: list[CellResult] = field(default_factory=list)

    def rate(self, metric: str, eps: float, theta: float | None = None) -> float:
        for cell in self.cells:
            if cell.metric == metric and cell.eps == eps and cell.theta == theta:
                return cell.rate
        raise KeyError((metric, theta, eps))

    def csv_rows(self) -> list[tuple]:
        rows = [("metric", "theta", "eps", "t", "value")]
        for cell in self.cells:
            theta = "" if cell.theta is None else repr(cell.theta)
            rows.append((cell.metric, theta, repr(cell.eps), repr(self.config.t_eval), repr(cell.rate)))
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.csv_rows())
        return buf.getvalue()


def _build_metric(name: str, theta: float | None, mode: str) -> CholeskyMetric:
    if name == "cm":
        return CholeskyMetric.cm(mode=mode)
    if name == "dem":
        return CholeskyMetric.dem(theta, mode=mode)
    return CholeskyMetric.dgbwm(theta, mode=mode)


def _run_cell(config: StabilityConfig, metric_name: str, theta: float | None, eps: float) -> CellResult:
    metric = _build_metric(metric_name, theta, config.mode)
    theta_key = 0.0 if theta is None else theta
    failures = 0
    first = -1
    for idx in range(config.trials):
        rng = trial_rng(config.seed, metric_name, theta_key, eps, idx)
        l, x = gen_random_instance(config.n, rng)
        l = set_min_diag(l, eps)
        try:
            out = metric.geodesic(l, config.tangent_scale * x, config.t_eval)
            failed = not np.all(np.isfinite(out))
        except DomainError:
            failed = True  # checked mode refuses where raw mode would emit Inf/NaN
        if failed:
            failures += 1
            if first < 0:
                first = idx
    return CellResult(metric_name, theta, eps, config.trials, failures, first)


def stability_experiment(config: StabilityConfig) -> FailureReport:
    """Raw-mode geodesic failure rates for every configured cell."""
    config.validate()
    report = FailureReport(config=config)
    for metric_name in config.metrics:
        thetas: Sequence[float | None] = [None] if metric_name == "cm" else list(config.theta_list)
        for theta in thetas:
            for eps in config.eps_list:
                report.cells.append(_run_cell(config, metric_name, theta, eps))
    return report


# -- SPD pair input for the interpolation experiment ---------------------------


def load_spd_pair(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a JSON document ``{"n": int, "P": [[...]], "Q": [[...]]}`` holding
    two SPD matrices in row-major order."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read SPD pair from {path}: {exc}") from None
    try:
        n = int(doc["n"])
        p = np.asarray(doc["P"], dtype=float)
        q = np.asarray(doc["Q"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed SPD pair document: {exc}") from None
    if p.shape != (n, n) or q.shape != (n, n):
        raise ParseError(f"matrices must be {n}x{n}")
    return spd_point(p), spd_point(q)


def dump_spd_pair(p: np.ndarray, q: np.ndarray) -> str:
    doc = {"n": int(p.shape[0]), "P": np.asarray(p).tolist(), "Q": np.asarray(q).tolist()}
    return json.dumps(doc, indent=2)


def swelling_pair(det_p: float = 3.07, det_q: float = 3.38) -> tuple[np.ndarray, np.ndarray]:
    """A fixed 3x3 SPD pair with the requested determinants.

    The two matrices are strongly anisotropic with nearly orthogonal principal
    axes, so the straight-line (Euclidean) interpolant swells far above both
    endpoint determinants while determinant-affine geometries do not.
    """

    def rot_z(angle: float) -> np.ndarray:
        c, s = np.cos(angle), np.sin(angle)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

    base_p = rot_z(0.15) @ np.diag([40.0, 0.25, 1.0]) @ rot_z(0.15).T
    base_q = rot_z(np.pi / 2 + 0.1) @ np.diag([36.0, 0.3, 1.1]) @ rot_z(np.pi / 2 + 0.1).T
    p = base_p * (det_p / np.linalg.det(base_p)) ** (1.0 / 3.0)
    q = base_q * (det_q / np.linalg.det(base_q)) ** (1.0 / 3.0)
    return spd_point(p), spd_point(q)
