"""Hot numerical kernels: row-cyclic Jacobi diagonalization.

Two interchangeable implementations live here.  ``_jacobi_loops`` is a
scalar-loop kernel compiled with numba when available; ``_jacobi_numpy``
performs the identical rotation sequence with vectorized row/column
updates.  Setting the environment variable ``MATCANON_NO_NUMBA=1``
(before import) forces the pure-numpy path; the same fallback engages
automatically when numba cannot be imported.

Both paths are deterministic: a given input always produces the same
bits on the same path.  No fastmath is enabled anywhere.
"""

import math
import os

import numpy as np


def _jacobi_loops(a, v, off_target, max_sweeps):
    """Row-cyclic Jacobi sweeps on symmetric a, accumulating rotations in v.

    Mutates a toward diagonal form and v toward the eigenvector matrix
    (columns).  Returns the number of sweeps used, or -1 if the
    off-diagonal mass never dropped to off_target.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= off_target:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 1.0e150 or tau <= -1.0e150:
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


def _jacobi_numpy(a, v, off_target, max_sweeps):
    """Same rotation sequence as _jacobi_loops, with sliced numpy updates."""
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= off_target:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                tau = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
                if tau >= 1.0e150 or tau <= -1.0e150:
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                akp = a[:, p].copy()
                akq = a[:, q].copy()
                a[:, p] = c * akp - s * akq
                a[:, q] = s * akp + c * akq
                apk = a[p, :].copy()
                aqk = a[q, :].copy()
                a[p, :] = c * apk - s * aqk
                a[q, :] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                vkp = v[:, p].copy()
                vkq = v[:, q].copy()
                v[:, p] = c * vkp - s * vkq
                v[:, q] = s * vkp + c * vkq
    return -1


_NO_NUMBA = os.environ.get("MATCANON_NO_NUMBA", "").strip() not in ("", "0", "false", "False")

if not _NO_NUMBA:
    try:
        from numba import njit

        _jacobi_compiled = njit(cache=True)(_jacobi_loops)
        ACTIVE_IMPL = "numba"
    except ImportError:
        _jacobi_compiled = None
        ACTIVE_IMPL = "numpy"
else:
    _jacobi_compiled = None
    ACTIVE_IMPL = "numpy"


def jacobi_eigh(a, tol, max_sweeps):
    """Diagonalize symmetric a by row-cyclic Jacobi rotations.

    Every off-diagonal pair is rotated each sweep (no threshold), and the
    iteration stops once the off-diagonal Frobenius mass is at most
    tol * ||a||_F.  Returns (diag, vectors, sweeps) where sweeps is -1 on
    non-convergence; eigenvalues are unsorted.
    """
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    n = work.shape[0]
    v = np.eye(n, dtype=np.float64)
    off_target = tol * math.sqrt(float(np.sum(work * work)))
    if ACTIVE_IMPL == "numba":
        sweeps = _jacobi_compiled(work, v, off_target, max_sweeps)
    else:
        sweeps = _jacobi_numpy(work, v, off_target, max_sweeps)
    return np.diag(work).copy(), v, sweeps
