"""Dense least squares and symmetric pentadiagonal solves.

Both kernels are small enough to own outright. Least squares goes through an
orthogonal factorisation so that correlated regressors do not lose accuracy
in the way an explicit ``inv(X'X)`` would.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError, DomainError, NotPositiveDefinite, RankDeficient

#: A column is dependent when its norm after projection falls below this
#: fraction of its original norm.
RANK_TOL = 1e-10


def as_matrix(X, name: str = "X") -> np.ndarray:
    """Validate a 2-d finite float matrix."""
    A = np.asarray(X, dtype=np.float64)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DataError(f"{name} must be a non-empty 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DataError(f"{name} has non-finite entries")
    return A


@dataclass(frozen=True)
class QRFactor:
    """Thin QR factorisation ``X = Q R`` with ``Q`` orthonormal (n x k)."""

    q: np.ndarray
    r: np.ndarray

    def solve(self, y: np.ndarray) -> np.ndarray:
        return _back_substitute(self.r, self.q.T @ y)

    def xtx_inverse(self) -> np.ndarray:
        """``inv(X'X) = inv(R) inv(R)'``."""
        k = self.r.shape[0]
        r_inv = np.empty((k, k))
        eye = np.eye(k)
        for j in range(k):
            r_inv[:, j] = _back_substitute(self.r, eye[:, j])
        return r_inv @ r_inv.T


def _back_substitute(r: np.ndarray, b: np.ndarray) -> np.ndarray:
    k = r.shape[0]
    x = np.zeros(k)
    for i in range(k - 1, -1, -1):
        x[i] = (b[i] - r[i, i + 1 :] @ x[i + 1 :]) / r[i, i]
    return x


def qr_factor(X) -> QRFactor:
    """Modified Gram-Schmidt with one reorthogonalisation pass.

    Raises
    ------
    RankDeficient
        When a column's residual norm after projection onto the previous
        columns is below ``RANK_TOL`` times its original norm. The exception
        carries the zero-based index of that column.
    """
    A = as_matrix(X)
    n, k = A.shape
    if n < k:
        raise RankDeficient(n)
    q = np.zeros((n, k))
    r = np.zeros((k, k))
    for j in range(k):
        v = A[:, j].copy()
        norm0 = np.linalg.norm(v)
        if norm0 == 0.0:
            raise RankDeficient(j)
        # two sweeps: "twice is enough" keeps Q orthogonal to working precision
        for _ in range(2):
            for i in range(j):
                c = q[:, i] @ v
                r[i, j] += c
                v -= c * q[:, i]
        norm = np.linalg.norm(v)
        if norm < RANK_TOL * norm0:
            raise RankDeficient(j)
        r[j, j] = norm
        q[:, j] = v / norm
    return QRFactor(q, r)


def solve_least_squares(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Minimise ``||y - X b||^2``.

    Parameters
    ----------
    X : array_like, shape (n, k)
        Design matrix with ``n > k`` and full column rank.
    y : array_like, shape (n,)

    Returns
    -------
    coefficients : ndarray, shape (k,)
    residuals : ndarray, shape (n,)
    """
    A = as_matrix(X)
    yv = np.asarray(y, dtype=np.float64).ravel()
    if yv.shape[0] != A.shape[0]:
        raise DataError(f"y has {yv.shape[0]} rows, X has {A.shape[0]}")
    if not np.all(np.isfinite(yv)):
        raise DataError("y has non-finite entries")
    fac = qr_factor(A)
    b = fac.solve(yv)
    return b, yv - A @ b


@dataclass(frozen=True)
class PentadiagonalSystem:
    """Symmetric banded matrix stored by its three distinct diagonals.

    Attributes
    ----------
    main : ndarray, shape (n,)
    off1 : ndarray, shape (n - 1,)
        ``A[i, i + 1] == A[i + 1, i]``.
    off2 : ndarray, shape (n - 2,)
        ``A[i, i + 2] == A[i + 2, i]``.
    """

    main: np.ndarray
    off1: np.ndarray
    off2: np.ndarray

    def __post_init__(self) -> None:
        main = np.asarray(self.main, dtype=np.float64)
        off1 = np.asarray(self.off1, dtype=np.float64)
        off2 = np.asarray(self.off2, dtype=np.float64)
        n = main.size
        if n < 3:
            raise DomainError("a pentadiagonal system needs n >= 3")
        if off1.size != n - 1 or off2.size != n - 2:
            raise DomainError("diagonal lengths must be n, n-1, n-2")
        if not (np.all(np.isfinite(main)) and np.all(np.isfinite(off1)) and np.all(np.isfinite(off2))):
            raise DataError("pentadiagonal system has non-finite entries")
        object.__setattr__(self, "main", main)
        object.__setattr__(self, "off1", off1)
        object.__setattr__(self, "off2", off2)

    @property
    def n(self) -> int:
        return self.main.size

    def to_dense(self) -> np.ndarray:
        A = np.diag(self.main)
        A += np.diag(self.off1, 1) + np.diag(self.off1, -1)
        A += np.diag(self.off2, 2) + np.diag(self.off2, -2)
        return A

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.main * x
        y[:-1] += self.off1 * x[1:]
        y[1:] += self.off1 * x[:-1]
        y[:-2] += self.off2 * x[2:]
        y[2:] += self.off2 * x[:-2]
        return y


def _ldl_factor(sys: PentadiagonalSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # A = L D L' with unit lower-triangular L of bandwidth two
    n = sys.n
    a, b, c = sys.main, sys.off1, sys.off2
    d = np.empty(n)
    l1 = np.zeros(n - 1)  # L[i+1, i]
    l2 = np.zeros(n - 2)  # L[i+2, i]
    for i in range(n):
        di = a[i]
        if i >= 1:
            di -= l1[i - 1] ** 2 * d[i - 1]
        if i >= 2:
            di -= l2[i - 2] ** 2 * d[i - 2]
        if not di > 0.0:
            raise NotPositiveDefinite(i, float(di))
        d[i] = di
        if i + 1 < n:
            e = b[i]
            if i >= 1:
                e -= l2[i - 1] * l1[i - 1] * d[i - 1]
            l1[i] = e / di
        if i + 2 < n:
            l2[i] = c[i] / di
    return d, l1, l2


def _ldl_solve(d: np.ndarray, l1: np.ndarray, l2: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n = d.size
    z = rhs.copy()
    for i in range(1, n):
        z[i] -= l1[i - 1] * z[i - 1]
        if i >= 2:
            z[i] -= l2[i - 2] * z[i - 2]
    z /= d
    for i in range(n - 2, -1, -1):
        z[i] -= l1[i] * z[i + 1]
        if i + 2 < n:
            z[i] -= l2[i] * z[i + 2]
    return z


def solve_pentadiagonal(sys: PentadiagonalSystem, rhs, refine: int = 2) -> np.ndarray:
    """Solve ``A x = rhs`` for symmetric positive-definite pentadiagonal ``A``.

    Uses a banded LDL' factorisation in O(n) time and memory. ``refine``
    rounds of iterative refinement recover accuracy lost to ill
    conditioning, which matters for very large smoothing weights.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is zero or negative.
    """
    r = np.asarray(rhs, dtype=np.float64).ravel()
    if r.size != sys.n:
        raise DataError(f"rhs has length {r.size}, system has n={sys.n}")
    d, l1, l2 = _ldl_factor(sys)
    x = _ldl_solve(d, l1, l2, r)
    for _ in range(refine):
        x = x + _ldl_solve(d, l1, l2, r - sys.matvec(x))
    return x
