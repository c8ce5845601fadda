"""Dense primitives for small matrices.

Triangular parts, Cholesky factorization, forward substitution, and symmetric
matrix functions computed through the eigendecomposition. Everything works on
plain float64 numpy arrays; the validating constructors return canonical
copies rather than wrapper objects.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import (
    DimMismatch,
    NonPositiveDiagonal,
    NonPositiveSpectrum,
    NotPositiveDefinite,
    SingularTriangular,
)


def as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def strict_lower(a) -> np.ndarray:
    """Strictly lower triangular part (zero diagonal and above)."""
    return np.tril(as_square(a), -1)


def strict_upper(a) -> np.ndarray:
    """Strictly upper triangular part (zero diagonal and below)."""
    return np.triu(as_square(a), 1)


def diag_of(a, checked: bool = False) -> np.ndarray:
    """Diagonal entries as a 1-D vector.

    With ``checked=True`` the entries must be strictly positive, otherwise
    :class:`NonPositiveDiagonal` is raised.
    """
    d = np.diag(as_square(a)).copy()
    if checked and not np.all(d > 0):
        raise NonPositiveDiagonal(f"diagonal must be strictly positive, got {d}")
    return d


def lower_triangular(a) -> np.ndarray:
    """Canonical lower-triangular copy: entries above the diagonal are exactly 0."""
    return np.tril(as_square(a))


def cholesky_point(a, checked: bool = True) -> np.ndarray:
    """Lower-triangular matrix with (in checked mode) strictly positive diagonal."""
    l = lower_triangular(a)
    if checked and not np.all(np.diag(l) > 0):
        raise NonPositiveDiagonal("Cholesky point needs a strictly positive diagonal")
    return l


def symmetrize(a) -> np.ndarray:
    a = as_square(a)
    return 0.5 * (a + a.T)


def spd_point(a) -> np.ndarray:
    """Symmetrized copy of ``a``, validated positive definite."""
    s = symmetrize(a)
    cholesky_factor(s)
    return s


def cholesky_factor(p) -> np.ndarray:
    """Lower Cholesky factor L with L @ L.T = p.

    Raises :class:`NotPositiveDefinite` when a pivot is non-positive or the
    input carries non-finite entries.
    """
    p = as_square(p)
    if not np.all(np.isfinite(p)):
        raise NotPositiveDefinite("matrix has non-finite entries")
    try:
        return np.linalg.cholesky(p)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None


def tri_solve(l, b, checked: bool = True) -> np.ndarray:
    """Solve ``l @ x = b`` by forward substitution for lower-triangular ``l``.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    l = as_square(l)
    b = np.asarray(b, dtype=float)
    n = l.shape[0]
    if b.shape[0] != n:
        raise DimMismatch(f"rhs has {b.shape[0]} rows, expected {n}")
    d = np.diag(l)
    if checked and np.any(d == 0.0):
        raise SingularTriangular("triangular matrix has a zero diagonal entry")
    flat = b.ndim == 1
    x = np.zeros((n, 1) if flat else b.shape, dtype=float)
    rhs = b.reshape(n, -1)
    for i in range(n):
        x[i] = (rhs[i] - l[i, :i] @ x[:i]) / d[i]
    return x[:, 0] if flat else x


def sym_matfun(p, f: Callable[[np.ndarray], np.ndarray], require_positive: bool = False) -> np.ndarray:
    """Apply the scalar function ``f`` to a symmetric matrix via eigendecomposition.

    Returns ``U f(w) U.T`` (symmetrized) where ``p = U diag(w) U.T``.
    """
    s = symmetrize(p)
    w, u = np.linalg.eigh(s)
    if require_positive and w[0] <= 0:
        raise NonPositiveSpectrum(f"smallest eigenvalue {w[0]} is not positive")
    out = (u * f(w)) @ u.T
    return 0.5 * (out + out.T)


def matrix_log(p) -> np.ndarray:
    return sym_matfun(p, np.log, require_positive=True)


def matrix_exp(s) -> np.ndarray:
    return sym_matfun(s, np.exp)


def matrix_power_sym(p, t: float) -> np.ndarray:
    """``p**t`` for symmetric ``p``; fractional or negative exponents need an SPD input."""
    needs_positive = not (float(t).is_integer() and t >= 0)
    return sym_matfun(p, lambda w: w**t, require_positive=needs_positive)


def matrix_sqrt(p) -> np.ndarray:
    return matrix_power_sym(p, 0.5)


def determinant(a) -> float:
    """Determinant via LU. For a Cholesky factor L, det(L @ L.T) equals
    the squared product of the diagonal of L."""
    return float(np.linalg.det(as_square(a)))
