"""Dense real matrix primitives: product, symmetric eigendecomposition,
symmetric square root, polar decomposition, QR.

All routines work on 2-D float64 numpy arrays, are pure functions of
their inputs, and are deterministic (identical inputs give identical
bits on a fixed kernel path).
"""

from typing import NamedTuple

import numpy as np

from ._kernels import jacobi_eigh
from .errors import ConvergenceError, PreconditionError

DEFAULT_TOL = 1e-10
JACOBI_TOL = 1e-12
MAX_SWEEPS = 64


def as_matrix(a):
    """Validate and convert to a 2-D float64 array with finite entries."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise PreconditionError(f"expected a 2-D array, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise PreconditionError(f"empty matrix of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise PreconditionError("matrix contains non-finite entries")
    return m


def require_square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {m.shape}")
    return m


def fro(a):
    """Frobenius norm."""
    return float(np.linalg.norm(a, "fro"))


def matmul(a, b):
    """Matrix product with an explicit inner-dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise PreconditionError(
            f"inner dimensions do not match: {a.shape} x {b.shape}"
        )
    return a @ b


class SymEig(NamedTuple):
    """Eigendecomposition of a symmetric matrix: a = q @ diag(d) @ q.T."""

    q: np.ndarray
    d: np.ndarray


def sym_eig(a, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    The input must be symmetric to within tol * ||a||_F.  Eigenvalues are
    returned in descending order (ties keep their pre-sort index order)
    with the eigenvector columns permuted to match.

    Raises ConvergenceError if the off-diagonal mass has not dropped to
    tol * ||a||_F after max_sweeps full sweeps.
    """
    m = require_square(a)
    nrm = fro(m)
    if fro(m - m.T) > max(tol, JACOBI_TOL) * max(nrm, 1.0):
        raise PreconditionError("matrix is not symmetric to the requested tolerance")
    if nrm == 0.0:
        n = m.shape[0]
        return SymEig(np.eye(n), np.zeros(n))
    sym = (m + m.T) / 2.0
    d, v, sweeps = jacobi_eigh(sym, tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {max_sweeps} sweeps"
        )
    order = np.argsort(-d, kind="stable")
    return SymEig(v[:, order].copy(), d[order].copy())


def sym_sqrt(a, tol=DEFAULT_TOL):
    """Positive semidefinite square root of a symmetric PSD matrix.

    Eigenvalues in [-tol * ||a||_F, 0) are treated as roundoff and
    clamped to zero; anything below that signals a genuinely indefinite
    input and raises PreconditionError.
    """
    m = require_square(a)
    nrm = fro(m)
    q, d = sym_eig(m, tol=min(tol, JACOBI_TOL))
    if nrm > 0.0 and np.min(d) < -tol * nrm:
        raise PreconditionError(
            f"matrix is not positive semidefinite: min eigenvalue {np.min(d):.3e}"
        )
    root = q @ np.diag(np.sqrt(np.clip(d, 0.0, None))) @ q.T
    return (root + root.T) / 2.0


def polar_decompose(a, tol=DEFAULT_TOL):
    """Polar factors (u, p) of an invertible square matrix: a = u @ p.

    p is the symmetric square root of a.T @ a and u is orthogonal.  The
    orthogonal factor is extracted from the matrix sign function of the
    symmetric embedding [[0, a], [a.T, 0]], which keeps u orthogonal to
    machine precision independently of the conditioning of a.

    Raises PreconditionError when the smallest singular value (estimated
    from the eigenvalues of a.T @ a) is at most tol * ||a||_F.
    """
    m = require_square(a)
    n = m.shape[0]
    nrm = fro(m)
    gram = m.T @ m
    qg, dg = sym_eig(gram, tol=1e-14)
    sigma_min = np.sqrt(max(float(dg[-1]), 0.0))
    if sigma_min <= tol * nrm:
        raise PreconditionError(
            f"matrix is numerically singular: sigma_min {sigma_min:.3e}"
        )
    p = qg @ np.diag(np.sqrt(dg)) @ qg.T
    p = (p + p.T) / 2.0
    emb = np.zeros((2 * n, 2 * n))
    emb[:n, n:] = m
    emb[n:, :n] = m.T
    qe, de = sym_eig(emb, tol=1e-14)
    sign = qe @ np.diag(np.where(de >= 0.0, 1.0, -1.0)) @ qe.T
    u = sign[:n, n:].copy()
    return u, p


def qr(a):
    """Thin QR factorization with a nonnegative diagonal of r.

    Requires rows >= cols.  Rank deficiency is not an error; it surfaces
    as near-zero diagonal entries of r for the caller to judge.
    """
    m = as_matrix(a)
    if m.shape[0] < m.shape[1]:
        raise PreconditionError(
            f"qr requires rows >= cols, got shape {m.shape}"
        )
    q, r = np.linalg.qr(m)
    signs = np.where(np.diag(r) < 0.0, -1.0, 1.0)
    return q * signs, signs[:, None] * r


def cluster_by_gap(values_desc, gap):
    """Split a descending 1-D array into clusters at gaps larger than gap.

    Returns a list of (start, stop) index slices.
    """
    values = np.asarray(values_desc, dtype=np.float64)
    slices = []
    start = 0
    for i in range(1, values.size):
        if values[i - 1] - values[i] > gap:
            slices.append((start, i))
            start = i
    if values.size:
        slices.append((start, values.size))
    return slices
