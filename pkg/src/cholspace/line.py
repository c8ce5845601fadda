"""Riemannian geometry of the positive half-line.

The diagonal of a Cholesky factor lives in (0, inf) slot by slot, so every
metric here lifts to a metric on the whole Cholesky manifold through the
product construction in :mod:`cholspace.cholesky`. Three families are
implemented, all with closed-form operators:

* ``LOG``: the logarithmic metric ``p**-2 v w`` (the diagonal geometry of the
  classical Cholesky metric). Its geodesics are straight lines in log
  coordinates.
* ``POWER``: the pullback of the Euclidean metric by ``p -> p**theta`` scaled
  by ``1/theta**2``; straight lines in power coordinates.
* ``BW``: the scalar generalized Bures-Wasserstein metric with weight ``m``,
  together with its power deformation. Its exponential, logarithm, and
  transport coincide with those of ``POWER`` at exponent ``theta/2``; only the
  inner product and the distance see ``m``.

Deforming any family by a further exponent multiplies the stored ``theta``;
the LOG family is a fixed point of the deformation.

All operators are elementwise over numpy arrays, so a vector of diagonal
slots is processed in one call. ``checked=False`` evaluates straight IEEE
arithmetic and lets Inf/NaN propagate.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import BadWeights, DomainError, OutOfDomain, ZeroTheta

LOG = "log"
POWER = "power"
BW = "bw"

_FAMILIES = (LOG, POWER, BW)


def fpow(x, e: float):
    """Elementwise power with integer fast paths.

    Exponents 0, 1, 2, and -1 are computed by multiplication; everything else
    as exp(e * log(x)), which propagates NaN for negative bases exactly like
    the IEEE ``pow`` of a fractional exponent.
    """
    x = np.asarray(x, dtype=float)
    if e == 0.0:
        return np.ones_like(x)
    if e == 1.0:
        return x
    if e == 2.0:
        return x * x
    if e == -1.0:
        return 1.0 / x
    return np.exp(e * np.log(x))


def _require_positive(x, what: str) -> None:
    # NaN compares False, so non-finite garbage is rejected as well.
    if not np.all(np.asarray(x) > 0):
        raise DomainError(f"{what} must be strictly positive")


def _require_finite(x, exc=OutOfDomain, what: str = "result") -> None:
    if not np.all(np.isfinite(x)):
        raise exc(f"{what} is not finite")


@dataclass(frozen=True, eq=False)
class LineMetric:
    """One of the three metric families on the positive half-line.

    ``theta`` is the power-deformation exponent (ignored by LOG); ``m`` is the
    Bures-Wasserstein weight, scalar or per-slot vector (BW only).
    """

    family: str
    theta: float = 1.0
    m: float | np.ndarray = 1.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown line-metric family {self.family!r}")
        if self.family != LOG and self.theta == 0.0:
            raise ZeroTheta("deformation exponent must be nonzero")
        if self.family == BW and not np.all(np.asarray(self.m) > 0):
            raise DomainError("Bures-Wasserstein weight must be positive")

    @staticmethod
    def logarithmic() -> "LineMetric":
        return LineMetric(LOG)

    @staticmethod
    def power(theta: float) -> "LineMetric":
        return LineMetric(POWER, theta=float(theta))

    @staticmethod
    def bures_wasserstein(m=1.0, theta: float = 1.0) -> "LineMetric":
        return LineMetric(BW, theta=float(theta), m=m)

    @property
    def exponent(self) -> float | None:
        """Power-coordinate exponent: geodesics are straight lines in
        ``p**exponent`` (None for LOG, whose coordinate is the logarithm)."""
        if self.family == POWER:
            return self.theta
        if self.family == BW:
            return 0.5 * self.theta
        return None

    # -- metric tensor -------------------------------------------------

    def inner(self, p, v, w, checked: bool = True):
        if checked:
            _require_positive(p, "base point")
        p = np.asarray(p, dtype=float)
        v = np.asarray(v, dtype=float)
        w = np.asarray(w, dtype=float)
        with np.errstate(all="ignore"):
            if self.family == LOG:
                return v * w / (p * p)
            if self.family == POWER:
                return fpow(p, 2.0 * (self.theta - 1.0)) * v * w
            return fpow(p, self.theta - 2.0) * v * w / (4.0 * np.asarray(self.m))

    # -- geodesics -----------------------------------------------------

    def geodesic_domain(self, p, v, t):
        """True where the geodesic from (p, v) is defined at parameter t."""
        p = np.asarray(p, dtype=float)
        v = np.asarray(v, dtype=float)
        e = self.exponent
        if e is None:
            return np.broadcast_to(True, np.broadcast_shapes(p.shape, v.shape))
        with np.errstate(all="ignore"):
            return 1.0 + t * e * v / p > 0

    def geodesic(self, p, v, t, checked: bool = True):
        """Geodesic from p with initial velocity v, evaluated at t."""
        if checked:
            _require_positive(p, "base point")
            if not np.all(self.geodesic_domain(p, v, t)):
                raise OutOfDomain(f"geodesic is not defined at t={t}")
        p = np.asarray(p, dtype=float)
        v = np.asarray(v, dtype=float)
        with np.errstate(all="ignore"):
            if self.family == LOG:
                out = p * np.exp(t * v / p)
            else:
                e = self.exponent
                out = p * fpow(1.0 + t * e * v / p, 1.0 / e)
        if checked:
            _require_finite(out, what="geodesic value")
        return out

    def logmap(self, p, q, checked: bool = True):
        """Initial velocity of the geodesic running from p to q in unit time."""
        if checked:
            _require_positive(p, "base point")
            _require_positive(q, "target point")
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        with np.errstate(all="ignore"):
            if self.family == LOG:
                out = p * np.log(q / p)
            else:
                e = self.exponent
                out = (p / e) * (fpow(q / p, e) - 1.0)
        if checked:
            _require_finite(out, DomainError, "logarithm")
        return out

    def transport(self, p, q, v, checked: bool = True):
        """Parallel transport of v along the geodesic from p to q."""
        if checked:
            _require_positive(p, "base point")
            _require_positive(q, "target point")
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        v = np.asarray(v, dtype=float)
        with np.errstate(all="ignore"):
            if self.family == LOG:
                out = (q / p) * v
            else:
                out = fpow(q / p, 1.0 - self.exponent) * v
        if checked:
            _require_finite(out, DomainError, "transported vector")
        return out

    def interpolate(self, p, q, t, checked: bool = True):
        """Geodesic between p and q: straight line in the coordinate system
        of the family (log coordinates or power coordinates)."""
        if checked:
            _require_positive(p, "base point")
            _require_positive(q, "target point")
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        with np.errstate(all="ignore"):
            if self.family == LOG:
                out = np.exp((1.0 - t) * np.log(p) + t * np.log(q))
            else:
                e = self.exponent
                out = fpow((1.0 - t) * fpow(p, e) + t * fpow(q, e), 1.0 / e)
        if checked:
            _require_finite(out, what="interpolant")
        return out

    # -- distances and means --------------------------------------------

    def sq_dist(self, p, q, checked: bool = True):
        if checked:
            _require_positive(p, "base point")
            _require_positive(q, "target point")
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        with np.errstate(all="ignore"):
            if self.family == LOG:
                d = np.log(q) - np.log(p)
                return d * d
            if self.family == POWER:
                d = (fpow(q, self.theta) - fpow(p, self.theta)) / self.theta
                return d * d
            d = (fpow(q, 0.5 * self.theta) - fpow(p, 0.5 * self.theta)) / self.theta
            return d * d / np.asarray(self.m)

    def dist(self, p, q, checked: bool = True):
        return np.sqrt(self.sq_dist(p, q, checked=checked))

    def wfm(self, weights, points, checked: bool = True):
        """Weighted Fréchet mean. ``points`` may be shaped (N,) or (N, slots);
        weights must be positive and sum to one."""
        w = np.asarray(weights, dtype=float)
        pts = np.asarray(points, dtype=float)
        if w.ndim != 1 or w.shape[0] != pts.shape[0]:
            raise BadWeights("need one weight per point")
        if np.any(w <= 0) or abs(float(w.sum()) - 1.0) > 1e-12:
            raise BadWeights("weights must be positive and sum to one")
        if checked:
            _require_positive(pts, "points")
        wb = w.reshape((-1,) + (1,) * (pts.ndim - 1))
        with np.errstate(all="ignore"):
            if self.family == LOG:
                return np.exp(np.sum(wb * np.log(pts), axis=0))
            e = self.exponent
            return fpow(np.sum(wb * fpow(pts, e), axis=0), 1.0 / e)

    # -- deformation ----------------------------------------------------

    def deform(self, theta: float) -> "LineMetric":
        """Pull back by ``p -> p**theta`` and rescale by ``1/theta**2``.

        LOG is invariant; the other families compose exponents.
        """
        if theta == 0.0:
            raise ZeroTheta("deformation exponent must be nonzero")
        if self.family == LOG:
            return self
        return dataclasses.replace(self, theta=self.theta * float(theta))
