"""Gyrovector operations on the Cholesky manifold.

The binary operation composes exponential, transport, and logarithm around
the identity matrix::

    add(L, K)   = exp_L(transport(I -> L, log_I(K)))
    scale(t, L) = exp_I(t * log_I(L))

For the metrics in this package those compositions collapse to closed forms
acting separately on the strict lower part (plain vector addition/scaling)
and on the diagonal slots:

=============  ==========================  =============================
family         add (diagonal slots)        scale (diagonal slots)
=============  ==========================  =============================
LOG            p * k                       p**t
POWER/BW       (p**e + k**e - 1)**(1/e)    (t*p**e + 1 - t)**(1/e)
=============  ==========================  =============================

with ``e = theta`` for POWER and ``e = theta/2`` for BW; the BW weight drops
out entirely. The POWER/BW forms are defined only while the expressions in
parentheses stay positive, which the ``*_defined`` predicates expose. The
gyroautomorphism is the identity map, so the structure is gyrocommutative
and associative wherever defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cholesky import CholeskyMetric, _assemble
from .errors import GyroDomainError
from .line import BW, POWER, fpow
from .linalg import as_square, diag_of, strict_lower


def effective_exponent(metric: CholeskyMetric) -> float | None:
    """Power-coordinate exponent of the gyro closed forms (None for LOG)."""
    fam = metric.line.family
    if fam == POWER:
        return metric.line.theta
    if fam == BW:
        return 0.5 * metric.line.theta
    return None


# -- well-definedness predicates ---------------------------------------------


def add_defined(metric: CholeskyMetric, l, k) -> bool:
    e = effective_exponent(metric)
    if e is None:
        return True
    with np.errstate(all="ignore"):
        s = fpow(diag_of(as_square(l)), e) + fpow(diag_of(as_square(k)), e) - 1.0
    return bool(np.all(s > 0))


def scale_defined(metric: CholeskyMetric, t: float, l) -> bool:
    e = effective_exponent(metric)
    if e is None:
        return True
    with np.errstate(all="ignore"):
        s = t * fpow(diag_of(as_square(l)), e) + (1.0 - t)
    return bool(np.all(s > 0))


def inverse_defined(metric: CholeskyMetric, l) -> bool:
    e = effective_exponent(metric)
    if e is None:
        return True
    with np.errstate(all="ignore"):
        s = 2.0 - fpow(diag_of(as_square(l)), e)
    return bool(np.all(s > 0))


# -- closed forms --------------------------------------------------------------


def gyro_add(metric: CholeskyMetric, l, k) -> np.ndarray:
    l, k = as_square(l), as_square(k)
    if metric.checked and not add_defined(metric, l, k):
        raise GyroDomainError("binary operation is not defined for this pair")
    low = strict_lower(l) + strict_lower(k)
    dl, dk = diag_of(l), diag_of(k)
    e = effective_exponent(metric)
    with np.errstate(all="ignore"):
        if e is None:
            d = dl * dk
        else:
            d = fpow(fpow(dl, e) + fpow(dk, e) - 1.0, 1.0 / e)
    return _assemble(low, d)


def gyro_scale(metric: CholeskyMetric, t: float, l) -> np.ndarray:
    l = as_square(l)
    if metric.checked and not scale_defined(metric, t, l):
        raise GyroDomainError(f"scalar product is not defined for t={t}")
    dl = diag_of(l)
    e = effective_exponent(metric)
    with np.errstate(all="ignore"):
        if e is None:
            d = fpow(dl, t)
        else:
            d = fpow(t * fpow(dl, e) + (1.0 - t), 1.0 / e)
    return _assemble(t * strict_lower(l), d)


def gyro_inverse(metric: CholeskyMetric, l) -> np.ndarray:
    l = as_square(l)
    if metric.checked and not inverse_defined(metric, l):
        raise GyroDomainError("inverse is not defined for this point")
    dl = diag_of(l)
    e = effective_exponent(metric)
    with np.errstate(all="ignore"):
        if e is None:
            d = 1.0 / dl
        else:
            d = fpow(2.0 - fpow(dl, e), 1.0 / e)
    return _assemble(-strict_lower(l), d)


def gyration(metric: CholeskyMetric, l, k, j) -> np.ndarray:
    """gyr[l, k] applied to j. The gyroautomorphism is the identity map, so j
    is returned unchanged once the arguments are validated."""
    l, k, j = as_square(l), as_square(k), as_square(j)
    if metric.checked and not add_defined(metric, l, k):
        raise GyroDomainError("gyration arguments are out of domain")
    return j.copy()


def gyration_defining(metric: CholeskyMetric, l, k, j) -> np.ndarray:
    """gyr[l, k] j evaluated from its definition
    ``-(l + k) + (l + (k + j))`` in gyro arithmetic. Used to verify that the
    gyroautomorphism really is the identity."""
    inner_sum = gyro_add(metric, l, k)
    return gyro_add(metric, gyro_inverse(metric, inner_sum), gyro_add(metric, l, gyro_add(metric, k, j)))


# -- generic compositions (Riemannian route) -----------------------------------


def gyro_add_generic(metric: CholeskyMetric, l, k) -> np.ndarray:
    """Binary operation composed from exp/transport/log; equals the closed form."""
    eye = np.eye(as_square(l).shape[0])
    return metric.exp_map(l, metric.transport(eye, l, metric.log_map(eye, k)))


def gyro_scale_generic(metric: CholeskyMetric, t: float, l) -> np.ndarray:
    """Scalar product composed from exp/log at the identity."""
    eye = np.eye(as_square(l).shape[0])
    return metric.exp_map(eye, t * metric.log_map(eye, l))


# -- axiom suite ----------------------------------------------------------------

AXIOM_NAMES = (
    "G1_left_identity",
    "G2_left_inverse",
    "G3_associativity",
    "G4_left_reduction",
    "gyrocommutative",
    "gyration_identity",
    "V1_unit_scalars",
    "V2_scalar_distributive",
    "V3_scalar_associative",
    "V4_gyr_scale_commute",
    "V5_gyr_of_scalings",
    "closed_form_add",
    "closed_form_scale",
)


@dataclass
class AxiomReport:
    """Outcome of a randomized gyrovector-axiom run."""

    trials: int
    tolerance: float
    passes: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)

    def record(self, name: str, residual: float) -> None:
        self.passes.setdefault(name, 0)
        self.worst[name] = max(self.worst.get(name, 0.0), residual)
        if residual <= self.tolerance:
            self.passes[name] += 1

    @property
    def worst_residual(self) -> float:
        return max(self.worst.values()) if self.worst else 0.0

    @property
    def all_passed(self) -> bool:
        return all(self.passes[name] == self.trials for name in self.passes)

    def summary(self) -> str:
        lines = [f"{name}: {self.passes[name]}/{self.trials} (worst {self.worst[name]:.3e})" for name in self.passes]
        return "\n".join(lines)


def _residual(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) / scale


def _sample_point(metric: CholeskyMetric, rng: np.random.Generator, n: int) -> np.ndarray:
    # Diagonal slots drawn so that p**e lands in (0.5, 1.5): pairwise sums then
    # stay inside the domain of the binary operation with high probability.
    e = effective_exponent(metric)
    coords = rng.uniform(0.5, 1.5, size=n)
    d = coords if e is None else fpow(coords, 1.0 / e)
    low = np.tril(rng.uniform(-1.0, 1.0, size=(n, n)), -1)
    return _assemble(low, d)


def _sample_trial(metric: CholeskyMetric, rng: np.random.Generator, n: int, retries: int = 1000):
    """Sample (l, k, j, s, t) with every composition used by the axiom suite
    defined: the associativity chains of G3/G4, the gyration chains, and the
    scalar compositions of V2-V5. Resamples on predicate failure, capped."""
    margin = 1e-6
    for _ in range(retries):
        l, k, j = (_sample_point(metric, rng, n) for _ in range(3))
        s, t = rng.uniform(0.0, 1.0, size=2)
        e = effective_exponent(metric)
        if e is None:
            return l, k, j, s, t
        dl, dk, dj = (fpow(diag_of(x), e) for x in (l, k, j))
        ok = (
            np.all(dl + dk + dj - 2.0 > margin)
            and np.all(dl + 2.0 * dk - 2.0 > margin)
            and np.all(dl + 2.0 * dk + dj - 3.0 > margin)
            and np.all(4.0 - dl - 2.0 * dk > margin)
            and np.all((s + t) * (dl - 1.0) + dj - 1.0 > margin)
        )
        if ok:
            return l, k, j, s, t
    raise GyroDomainError("could not sample an in-domain trial")


def axiom_suite(metric: CholeskyMetric, seed: int, trials: int, n: int = 3, tolerance: float = 1e-10) -> AxiomReport:
    """Randomized check of the gyrogroup and gyrovector-space axioms.

    Each trial derives its randomness from (seed, trial index), so the report
    is deterministic and trials could run in any order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = AxiomReport(trials=trials, tolerance=tolerance)
    eye = np.eye(n)
    for idx in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence((int(seed), idx)))
        l, k, j, s, t = _sample_trial(metric, rng, n)

        report.record("G1_left_identity", _residual(gyro_add(metric, eye, l), l))
        report.record("G2_left_inverse", _residual(gyro_add(metric, gyro_inverse(metric, l), l), eye))
        lhs = gyro_add(metric, l, gyro_add(metric, k, j))
        rhs = gyro_add(metric, gyro_add(metric, l, k), j)
        report.record("G3_associativity", _residual(lhs, rhs))
        g1 = gyration_defining(metric, l, k, j)
        g2 = gyration_defining(metric, gyro_add(metric, l, k), k, j)
        report.record("G4_left_reduction", _residual(g1, g2))
        report.record("gyrocommutative", _residual(gyro_add(metric, l, k), gyro_add(metric, k, l)))
        report.record("gyration_identity", _residual(gyration_defining(metric, l, k, j), j))

        v1 = max(
            _residual(gyro_scale(metric, 1.0, l), l),
            _residual(gyro_scale(metric, 0.0, l), eye),
            _residual(gyro_scale(metric, t, eye), eye),
            _residual(gyro_scale(metric, -1.0, l), gyro_inverse(metric, l)),
        )
        report.record("V1_unit_scalars", v1)
        lhs = gyro_scale(metric, s + t, l)
        rhs = gyro_add(metric, gyro_scale(metric, s, l), gyro_scale(metric, t, l))
        report.record("V2_scalar_distributive", _residual(lhs, rhs))
        lhs = gyro_scale(metric, s * t, l)
        rhs = gyro_scale(metric, s, gyro_scale(metric, t, l))
        report.record("V3_scalar_associative", _residual(lhs, rhs))
        scaled = gyro_scale(metric, t, j)
        lhs = gyration_defining(metric, l, k, scaled)
        rhs = gyro_scale(metric, t, gyration_defining(metric, l, k, j))
        report.record("V4_gyr_scale_commute", _residual(lhs, rhs))
        report.record(
            "V5_gyr_of_scalings",
            _residual(gyration_defining(metric, gyro_scale(metric, s, l), gyro_scale(metric, t, l), j), j),
        )
        report.record("closed_form_add", _residual(gyro_add(metric, l, k), gyro_add_generic(metric, l, k)))
        report.record("closed_form_scale", _residual(gyro_scale(metric, t, l), gyro_scale_generic(metric, t, l)))
    return report
