"""Geometry of Cholesky factors and SPD matrices with closed-form operators.

Quick start::

    import numpy as np
    from cholspace import CholeskyMetric, SpdMetric

    metric = CholeskyMetric.dem(theta=0.5)
    l = np.array([[1.0, 0.0], [0.3, 2.0]])
    k = np.array([[2.0, 0.0], [-0.1, 0.5]])
    x = metric.log_map(l, k)
    assert np.allclose(metric.exp_map(l, x), k)

    spd = SpdMetric.cdem(theta=0.5)
    print(spd.dist(l @ l.T, k @ k.T))
"""

from . import errors, experiments, gyro, linalg, line, mlr, spd
from .cholesky import CHECKED, RAW, CholeskyMetric
from .errors import (
    BadWeights,
    CholspaceError,
    ConfigError,
    DimMismatch,
    DomainError,
    GyroDomainError,
    NonPositiveDiagonal,
    NonPositiveSpectrum,
    NotPositiveDefinite,
    OutOfDomain,
    ParseError,
    SingularTriangular,
    ZeroTheta,
)
from .experiments import (
    FailureReport,
    StabilityConfig,
    gen_random_instance,
    set_min_diag,
    stability_experiment,
    swelling_pair,
)
from .gyro import axiom_suite, gyro_add, gyro_inverse, gyro_scale
from .line import LineMetric
from .mlr import MlrParams, mlr_logits, mlr_logits_from_factor
from .spd import SpdMetric, baseline_geodesic, chol_diff, chol_diff_inv, interpolation_table

__all__ = [
    "BadWeights",
    "CHECKED",
    "CholeskyMetric",
    "CholspaceError",
    "ConfigError",
    "DimMismatch",
    "DomainError",
    "FailureReport",
    "GyroDomainError",
    "LineMetric",
    "MlrParams",
    "NonPositiveDiagonal",
    "NonPositiveSpectrum",
    "NotPositiveDefinite",
    "OutOfDomain",
    "ParseError",
    "RAW",
    "SingularTriangular",
    "SpdMetric",
    "StabilityConfig",
    "ZeroTheta",
    "axiom_suite",
    "baseline_geodesic",
    "chol_diff",
    "chol_diff_inv",
    "errors",
    "experiments",
    "gen_random_instance",
    "gyro",
    "gyro_add",
    "gyro_inverse",
    "gyro_scale",
    "interpolation_table",
    "line",
    "linalg",
    "mlr",
    "mlr_logits",
    "mlr_logits_from_factor",
    "set_min_diag",
    "spd",
    "stability_experiment",
    "swelling_pair",
]
