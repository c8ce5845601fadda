"""Riemannian operators on the manifold of lower-triangular matrices with
positive diagonal.

Every metric here is a product: the strictly lower triangular part carries
the flat Frobenius metric, and each diagonal slot carries one copy of a
:class:`~cholspace.line.LineMetric`. Consequently all operators split into a
linear formula on the strict lower part and an elementwise formula on the
diagonal vector.

Presets
-------
``CholeskyMetric.cm()``
    the classical Cholesky metric (LOG diagonal geometry).
``CholeskyMetric.dem(theta)``
    diagonal power-Euclidean metric; theta=1 is the Euclidean metric.
``CholeskyMetric.dgbwm(theta, weight)``
    diagonal generalized Bures-Wasserstein metric with diagonal weight
    ``weight`` (None means identity); theta=1 is the undeformed metric.

Modes
-----
``checked`` validates domains and raises typed errors; ``raw`` evaluates the
closed forms in straight IEEE arithmetic so Inf/NaN propagate. Both modes run
the same arithmetic, so a finite raw result is bitwise equal to the checked
one.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadWeights, DimMismatch, NonPositiveDiagonal, OutOfDomain
from .line import BW, LineMetric
from .linalg import as_square, diag_of, strict_lower

RAW = "raw"
CHECKED = "checked"


def _assemble(lower_part: np.ndarray, diag_vec: np.ndarray) -> np.ndarray:
    return lower_part + np.diag(diag_vec)


@dataclass(frozen=True, eq=False)
class CholeskyMetric:
    line: LineMetric
    mode: str = CHECKED

    def __post_init__(self):
        if self.mode not in (RAW, CHECKED):
            raise ValueError(f"mode must be 'raw' or 'checked', got {self.mode!r}")

    # -- presets ----------------------------------------------------------

    @staticmethod
    def cm(mode: str = CHECKED) -> "CholeskyMetric":
        return CholeskyMetric(LineMetric.logarithmic(), mode=mode)

    @staticmethod
    def dem(theta: float = 1.0, mode: str = CHECKED) -> "CholeskyMetric":
        return CholeskyMetric(LineMetric.power(theta), mode=mode)

    @staticmethod
    def dgbwm(theta: float = 1.0, weight=None, mode: str = CHECKED) -> "CholeskyMetric":
        m = 1.0 if weight is None else np.asarray(weight, dtype=float)
        return CholeskyMetric(LineMetric.bures_wasserstein(m=m, theta=theta), mode=mode)

    @property
    def checked(self) -> bool:
        return self.mode == CHECKED

    def deformed(self, theta: float) -> "CholeskyMetric":
        """Power-deform the diagonal geometry; the strict lower part is untouched."""
        return dataclasses.replace(self, line=self.line.deform(theta))

    # -- validation helpers ------------------------------------------------

    def _point(self, l) -> np.ndarray:
        l = as_square(l)
        if self.checked and not np.all(np.diag(l) > 0):
            raise NonPositiveDiagonal("point diagonal must be strictly positive")
        return l

    def _same_shape(self, *mats: np.ndarray) -> None:
        n = mats[0].shape[0]
        for m in mats[1:]:
            if m.shape[0] != n:
                raise DimMismatch(f"dimension mismatch: {m.shape[0]} vs {n}")
        if self.line.family == BW:
            w = np.asarray(self.line.m)
            if w.ndim == 1 and w.shape[0] != n:
                raise DimMismatch(f"diagonal weight has length {w.shape[0]}, expected {n}")

    def _finite_point(self, out: np.ndarray, what: str) -> np.ndarray:
        if self.checked and not np.all(np.isfinite(out)):
            raise OutOfDomain(f"{what} is not finite")
        return out

    # -- operators ----------------------------------------------------------

    def inner(self, l, x, y) -> float:
        """Metric tensor at l applied to tangents x and y."""
        l = self._point(l)
        x, y = as_square(x), as_square(y)
        self._same_shape(l, x, y)
        low = float(np.sum(strict_lower(x) * strict_lower(y)))
        slots = self.line.inner(diag_of(l), diag_of(x), diag_of(y), checked=self.checked)
        return low + float(np.sum(slots))

    def norm(self, l, x) -> float:
        return float(np.sqrt(self.inner(l, x, x)))

    def geodesic_domain(self, l, x, t) -> bool:
        """True when the geodesic from (l, x) is defined at parameter t."""
        return bool(np.all(self.line.geodesic_domain(diag_of(l), diag_of(x), t)))

    def geodesic(self, l, x, t) -> np.ndarray:
        """Geodesic from l with initial velocity x; the strict lower part moves
        linearly while each diagonal slot follows the line geodesic."""
        l, x = as_square(l), as_square(x)
        self._same_shape(l, x)
        if self.checked:
            self._point(l)
        low = strict_lower(l) + t * strict_lower(x)
        d = self.line.geodesic(diag_of(l), diag_of(x), t, checked=self.checked)
        return self._finite_point(_assemble(low, d), "geodesic point")

    def exp_map(self, l, x) -> np.ndarray:
        return self.geodesic(l, x, 1.0)

    def log_map(self, l, k) -> np.ndarray:
        l, k = self._point(l), self._point(k)
        self._same_shape(l, k)
        low = strict_lower(k) - strict_lower(l)
        d = self.line.logmap(diag_of(l), diag_of(k), checked=self.checked)
        return _assemble(low, d)

    def transport(self, l, k, x) -> np.ndarray:
        l, k = self._point(l), self._point(k)
        x = as_square(x)
        self._same_shape(l, k, x)
        d = self.line.transport(diag_of(l), diag_of(k), diag_of(x), checked=self.checked)
        return _assemble(strict_lower(x), d)

    def interpolate(self, l, k, t) -> np.ndarray:
        """Geodesic between l and k, in closed endpoint form."""
        l, k = self._point(l), self._point(k)
        self._same_shape(l, k)
        low = (1.0 - t) * strict_lower(l) + t * strict_lower(k)
        d = self.line.interpolate(diag_of(l), diag_of(k), t, checked=self.checked)
        return self._finite_point(_assemble(low, d), "interpolant")

    def sq_dist(self, l, k) -> float:
        l, k = self._point(l), self._point(k)
        self._same_shape(l, k)
        low = strict_lower(k) - strict_lower(l)
        slots = self.line.sq_dist(diag_of(l), diag_of(k), checked=self.checked)
        return float(np.sum(low * low)) + float(np.sum(slots))

    def dist(self, l, k) -> float:
        return float(np.sqrt(self.sq_dist(l, k)))

    def wfm(self, weights, points: Sequence[np.ndarray]) -> np.ndarray:
        """Weighted Fréchet mean, in closed form."""
        pts = np.stack([as_square(p) for p in points])
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.shape[0] != pts.shape[0]:
            raise BadWeights("need one weight per point")
        if self.checked:
            for p in pts:
                self._point(p)
        self._same_shape(*pts)
        low = np.tensordot(w, np.tril(pts, -1), axes=(0, 0))
        diags = np.stack([np.diag(p) for p in pts])
        d = self.line.wfm(w, diags, checked=self.checked)
        return _assemble(np.tril(low, -1), d)
