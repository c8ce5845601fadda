"""Multinomial-logistic-regression scores for SPD inputs.

Each class j owns a prototype (stored as its Cholesky factor ``L_j``) and a
lower-triangular direction parameter ``A_j``. The logit of class j for an
input ``S = K K.T`` splits like the metric does: a Frobenius pairing of the
strict lower parts plus a weighted pairing of transformed diagonals,

* power family:  <low(K) - low(L_j), low(A_j)> + (1/2 theta) <dK**theta - dL_j**theta, dA_j>
* BW family:     <low(K) - low(L_j), low(A_j)> + (1/4 theta) <dK**(theta/2) - dL_j**(theta/2), dA_j / m>

Scores are unnormalized log-probabilities; softmax is left to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, DomainError, NonPositiveDiagonal
from .line import BW, POWER, fpow
from .linalg import cholesky_factor, spd_point
from .spd import SpdMetric


@dataclass(frozen=True, eq=False)
class MlrParams:
    """Per-class prototypes (as Cholesky factors) and direction parameters."""

    factors: np.ndarray  # (classes, n, n) lower triangular, positive diagonal
    tangents: np.ndarray  # (classes, n, n) lower triangular
    metric: SpdMetric

    def __post_init__(self):
        factors = np.asarray(self.factors, dtype=float)
        tangents = np.asarray(self.tangents, dtype=float)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "tangents", tangents)
        if factors.ndim != 3 or factors.shape[1] != factors.shape[2]:
            raise DimMismatch("factors must be shaped (classes, n, n)")
        if factors.shape[0] < 2:
            raise DomainError("need at least two classes")
        if tangents.shape != factors.shape:
            raise DimMismatch("tangents must match the factors' shape")
        if np.any(np.triu(factors, 1) != 0) or np.any(np.triu(tangents, 1) != 0):
            raise DomainError("factors and tangents must be lower triangular")
        diags = np.diagonal(factors, axis1=1, axis2=2)
        if not np.all(diags > 0):
            raise NonPositiveDiagonal("class factors need strictly positive diagonals")
        if self.metric.base.line.family not in (POWER, BW):
            raise DomainError("scoring is defined for the power and BW families only")

    @property
    def classes(self) -> int:
        return self.factors.shape[0]

    @property
    def dim(self) -> int:
        return self.factors.shape[1]


def mlr_logits_from_factor(params: MlrParams, k: np.ndarray) -> np.ndarray:
    """Scores for an input given directly by its Cholesky factor ``k``."""
    k = np.asarray(k, dtype=float)
    if k.shape != (params.dim, params.dim):
        raise DimMismatch(f"factor has shape {k.shape}, expected {(params.dim, params.dim)}")
    line = params.metric.base.line
    theta = line.theta

    low_k = np.tril(k, -1)
    low_l = np.tril(params.factors, -1)
    low_a = np.tril(params.tangents, -1)
    lower_term = np.sum((low_k[None, :, :] - low_l) * low_a, axis=(1, 2))

    dk = np.diag(k)
    dl = np.diagonal(params.factors, axis1=1, axis2=2)
    da = np.diagonal(params.tangents, axis1=1, axis2=2)
    if line.family == POWER:
        diag_term = np.sum((fpow(dk, theta)[None, :] - fpow(dl, theta)) * da, axis=1) / (2.0 * theta)
    else:
        half = 0.5 * theta
        weighted = da / np.asarray(line.m)
        diag_term = np.sum((fpow(dk, half)[None, :] - fpow(dl, half)) * weighted, axis=1) / (4.0 * theta)
    return lower_term + diag_term


def mlr_logits(params: MlrParams, s: np.ndarray) -> np.ndarray:
    """Scores for an SPD input; the input enters only through its factor."""
    return mlr_logits_from_factor(params, cholesky_factor(spd_point(s)))
