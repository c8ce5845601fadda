"""Geometry on symmetric positive definite matrices through the Cholesky map.

``P = L @ L.T`` identifies SPD matrices with Cholesky factors, and the
identification is smooth both ways. Every operator here conjugates the
corresponding Cholesky-manifold operator by that map: factorize, operate,
square back. Tangent vectors travel through the differential of the
factorization (:func:`chol_diff`) and its algebraic inverse
(:func:`chol_diff_inv`).

Presets: ``SpdMetric.lcm()`` (log-Cholesky geometry), ``SpdMetric.cdem(theta)``
and ``SpdMetric.cdgbwm(theta, weight)`` for the power-deformed diagonal
families.

The module also ships the baseline SPD geodesics used by the interpolation
experiment (Euclidean, power-Euclidean, log-Euclidean, affine-invariant,
Bures-Wasserstein, log-Cholesky) and a determinant-table builder.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gyro
from .cholesky import CHECKED, CholeskyMetric
from .errors import DomainError
from .linalg import (
    as_square,
    cholesky_factor,
    determinant,
    diag_of,
    matrix_exp,
    matrix_log,
    matrix_power_sym,
    strict_lower,
    symmetrize,
    tri_solve,
)


def half_lower(a: np.ndarray) -> np.ndarray:
    """Strictly lower part plus half the diagonal."""
    a = as_square(a)
    return strict_lower(a) + 0.5 * np.diag(diag_of(a))


def chol_diff(p, v, factor: np.ndarray | None = None) -> np.ndarray:
    """Differential of the Cholesky factorization at ``p`` applied to the
    symmetric tangent ``v``: returns ``L * half_lower(L^-1 v L^-T)``.

    Computed with two triangular solves; ``factor`` short-circuits the
    factorization when the caller already has ``L``.
    """
    l = cholesky_factor(p) if factor is None else as_square(factor)
    v = symmetrize(v)
    w = tri_solve(l, v)
    z = tri_solve(l, w.T).T
    return l @ half_lower(z)


def chol_diff_inv(l, x) -> np.ndarray:
    """Inverse of :func:`chol_diff`: the symmetric tangent ``x L^T + L x^T``."""
    l, x = as_square(l), as_square(x)
    return x @ l.T + l @ x.T


@dataclass(frozen=True, eq=False)
class SpdMetric:
    """Pullback of a Cholesky-manifold metric to SPD matrices."""

    base: CholeskyMetric

    @staticmethod
    def lcm(mode: str = CHECKED) -> "SpdMetric":
        return SpdMetric(CholeskyMetric.cm(mode=mode))

    @staticmethod
    def cdem(theta: float = 1.0, mode: str = CHECKED) -> "SpdMetric":
        return SpdMetric(CholeskyMetric.dem(theta, mode=mode))

    @staticmethod
    def cdgbwm(theta: float = 1.0, weight=None, mode: str = CHECKED) -> "SpdMetric":
        return SpdMetric(CholeskyMetric.dgbwm(theta, weight=weight, mode=mode))

    def deformed(self, theta: float) -> "SpdMetric":
        return SpdMetric(self.base.deformed(theta))

    # -- operators -------------------------------------------------------

    def inner(self, p, v, w) -> float:
        l = cholesky_factor(p)
        return self.base.inner(l, chol_diff(p, v, factor=l), chol_diff(p, w, factor=l))

    def norm(self, p, v) -> float:
        return float(np.sqrt(self.inner(p, v, v)))

    def geodesic(self, p, v, t) -> np.ndarray:
        l = cholesky_factor(p)
        g = self.base.geodesic(l, chol_diff(p, v, factor=l), t)
        return g @ g.T

    def exp_map(self, p, v) -> np.ndarray:
        return self.geodesic(p, v, 1.0)

    def log_map(self, p, q) -> np.ndarray:
        l, k = cholesky_factor(p), cholesky_factor(q)
        return chol_diff_inv(l, self.base.log_map(l, k))

    def transport(self, p, q, v) -> np.ndarray:
        l, k = cholesky_factor(p), cholesky_factor(q)
        x = chol_diff(p, v, factor=l)
        return chol_diff_inv(k, self.base.transport(l, k, x))

    def interpolate(self, p, q, t) -> np.ndarray:
        """Geodesic between p and q in closed endpoint form."""
        g = self.base.interpolate(cholesky_factor(p), cholesky_factor(q), t)
        return g @ g.T

    def sq_dist(self, p, q) -> float:
        return self.base.sq_dist(cholesky_factor(p), cholesky_factor(q))

    def dist(self, p, q) -> float:
        return self.base.dist(cholesky_factor(p), cholesky_factor(q))

    def wfm(self, weights, points: Sequence[np.ndarray]) -> np.ndarray:
        m = self.base.wfm(weights, [cholesky_factor(p) for p in points])
        return m @ m.T

    # -- gyro operations ---------------------------------------------------

    def gyro_add(self, p, q) -> np.ndarray:
        g = gyro.gyro_add(self.base, cholesky_factor(p), cholesky_factor(q))
        return g @ g.T

    def gyro_scale(self, t, p) -> np.ndarray:
        g = gyro.gyro_scale(self.base, t, cholesky_factor(p))
        return g @ g.T

    def gyro_inverse(self, p) -> np.ndarray:
        g = gyro.gyro_inverse(self.base, cholesky_factor(p))
        return g @ g.T


# -- baseline geodesics ------------------------------------------------------

BASELINE_KINDS = ("em", "pem", "lem", "aim", "bwm", "lcm", "cdem", "cdgbwm")


def baseline_geodesic(kind: str, p, q, t, theta: float | None = None) -> np.ndarray:
    """Endpoint geodesic from p (t=0) to q (t=1) under a named SPD geometry.

    ``theta`` parameterizes the power families (pem, cdem, cdgbwm).
    """
    p, q = as_square(p), as_square(q)
    if kind == "em":
        return (1.0 - t) * p + t * q
    if kind == "pem":
        th = _require_theta(kind, theta)
        mix = (1.0 - t) * matrix_power_sym(p, th) + t * matrix_power_sym(q, th)
        return matrix_power_sym(mix, 1.0 / th)
    if kind == "lem":
        return matrix_exp((1.0 - t) * matrix_log(p) + t * matrix_log(q))
    if kind == "aim":
        # The usual closed form runs from q to p, so it is evaluated at 1 - t
        # to keep every kind anchored at p for t=0.
        qh = matrix_power_sym(q, 0.5)
        qih = matrix_power_sym(q, -0.5)
        mid = matrix_power_sym(qih @ p @ qih, 1.0 - t)
        return symmetrize(qh @ mid @ qh)
    if kind == "bwm":
        ph = matrix_power_sym(p, 0.5)
        pih = matrix_power_sym(p, -0.5)
        cross = ph @ matrix_power_sym(ph @ q @ ph, 0.5) @ pih
        return symmetrize((1.0 - t) ** 2 * p + t**2 * q + t * (1.0 - t) * (cross + cross.T))
    if kind == "lcm":
        return SpdMetric.lcm().interpolate(p, q, t)
    if kind == "cdem":
        return SpdMetric.cdem(_require_theta(kind, theta)).interpolate(p, q, t)
    if kind == "cdgbwm":
        return SpdMetric.cdgbwm(_require_theta(kind, theta)).interpolate(p, q, t)
    raise DomainError(f"unknown geodesic kind {kind!r}")


def _require_theta(kind: str, theta: float | None) -> float:
    if theta is None:
        raise DomainError(f"geodesic kind {kind!r} needs a theta parameter")
    return float(theta)


_KIND_RE = re.compile(r"^(\d+(?:\.\d+)?)-(em|cdem|cdgbwm)$")


def parse_kind(label: str) -> tuple[str, float | None]:
    """Parse a row label like ``lem``, ``0.5-em``, or ``1.0-cdem`` into a
    (kind, theta) pair. ``<theta>-em`` means the power-Euclidean family."""
    token = label.strip().lower()
    if token in ("em", "lem", "aim", "bwm", "lcm"):
        return token, None
    match = _KIND_RE.match(token)
    if match is None:
        raise DomainError(f"unrecognized geodesic label {label!r}")
    theta = float(match.group(1))
    kind = match.group(2)
    if kind == "em":
        return ("em", None) if theta == 1.0 else ("pem", theta)
    return kind, theta


def interpolation_table(p, q, kinds: Sequence[str], steps: int) -> list[tuple[str, list[float]]]:
    """Determinants of the geodesic interpolants at steps equally spaced
    parameters from 0 to 1, one row per requested kind label."""
    if steps < 2:
        raise DomainError("need at least two interpolation steps")
    grid = [i / (steps - 1) for i in range(steps)]
    rows = []
    for label in kinds:
        kind, theta = parse_kind(label)
        dets = [determinant(baseline_geodesic(kind, p, q, t, theta=theta)) for t in grid]
        rows.append((label, dets))
    return rows
