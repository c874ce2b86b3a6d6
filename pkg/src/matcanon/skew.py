"""Canonical form of real skew-symmetric matrices.

A skew-symmetric s is reduced to an orthogonal change of basis v, block
scalars p_1 >= p_2 >= ... > 0 and a kernel, so that in the split
arrangement (all first partners, then all second partners, then kernel)

    v @ s @ v.T = [[0, -P], [P, 0]] (+) 0,   P = diag(p).

Two routes are provided: an eigensolver route working on s.T @ s, and a
cyclic route that splits the space into even/odd Krylov subspaces of a
starting vector and applies a polar decomposition to the restriction of
s between them.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    cluster_by_gap,
    fro,
    polar_decompose,
    require_square,
    sym_eig,
)
from .errors import ConvergenceError, PreconditionError

CLUSTER_GAP = 1e-8
RANK_TOL = 1e-10
DEFLATION_START_TOL = 1e-8
PAIRING_TOL = 1e-8


@dataclass
class SkewCanonicalForm:
    """Orthogonal factor v, positive block scalars p (descending), kernel size."""

    v: np.ndarray
    p: np.ndarray
    kernel_dim: int

    @property
    def dim(self):
        return self.v.shape[0]


def canonical_matrix(form):
    """The split block matrix [[0, -P], [P, 0]] (+) 0_kernel."""
    m = len(form.p)
    n = form.dim
    out = np.zeros((n, n))
    for j, pj in enumerate(form.p):
        out[j, m + j] = -pj
        out[m + j, j] = pj
    return out


def reconstruct(form):
    """Map the canonical matrix back through v: equals the original input."""
    return form.v.T @ canonical_matrix(form) @ form.v


def _check_skew(s, tol):
    m = require_square(s)
    nrm = fro(m)
    if fro(m + m.T) > tol * max(nrm, 1.0):
        raise PreconditionError("matrix is not skew-symmetric to the requested tolerance")
    return (m - m.T) / 2.0, nrm


def skew_canonical(s, tol=DEFAULT_TOL, scale=None):
    """Canonical form of a skew-symmetric matrix via the eigensolver route.

    Eigenvectors of s.T @ s are paired inside each eigenvalue cluster:
    the first unextracted unit vector u gets the partner w = s @ u / p,
    the rest of the cluster is re-orthonormalized against the pair, and
    the loop repeats.  Eigenvalues with p <= tol * scale become kernel
    columns; scale defaults to ||s||_F and lets callers of embedded
    sub-blocks keep the kernel threshold on the parent scale.
    """
    w, nrm = _check_skew(s, tol)
    n = w.shape[0]
    if scale is None:
        scale = nrm
    if nrm == 0.0 or scale == 0.0:
        return SkewCanonicalForm(np.eye(n), np.zeros(0), n)

    gram = w.T @ w
    qg, _ = sym_eig(gram)
    # eigenvalues of the Gram matrix cannot resolve singular values below
    # sqrt(eps) * ||s||; the direct image norms can, and the eigenvectors
    # are accurate regardless, so classify and cluster on those
    pvals = np.linalg.norm(w @ qg, axis=0)
    order = np.argsort(-pvals, kind="stable")
    qg = qg[:, order]
    pvals = pvals[order]
    n_nonzero = int(np.sum(pvals > tol * scale))
    kernel_dim = n - n_nonzero
    kernel_cols = qg[:, n_nonzero:]

    pairs = []
    for start, stop in cluster_by_gap(pvals[:n_nonzero], CLUSTER_GAP * scale):
        basis = qg[:, start:stop].copy()
        width = float(pvals[start] - pvals[stop - 1])
        p_ref = float(np.mean(pvals[start:stop]))
        while basis.shape[1] > 0:
            u = basis[:, 0]
            img = w @ u
            pj = float(np.linalg.norm(img))
            if abs(pj - p_ref) > PAIRING_TOL * p_ref + width:
                raise ConvergenceError(
                    "eigenspace pairing breakdown: |s u| deviates from the cluster value"
                )
            wvec = img / pj
            in_span = basis @ (basis.T @ wvec)
            if np.linalg.norm(wvec - in_span) > PAIRING_TOL:
                raise ConvergenceError(
                    "eigenspace pairing breakdown: partner left the eigenspace"
                )
            pairs.append((pj, u.copy(), wvec))
            rest = basis[:, 1:]
            rest = rest - np.outer(u, u @ rest) - np.outer(wvec, wvec @ rest)
            kept = []
            for col in rest.T:
                for prev in kept:
                    col = col - prev * (prev @ col)
                r = np.linalg.norm(col)
                if r > PAIRING_TOL:
                    kept.append(col / r)
            if len(kept) != basis.shape[1] - 2:
                raise ConvergenceError(
                    "eigenspace pairing breakdown: cluster dimension is not even"
                )
            basis = np.column_stack(kept) if kept else np.zeros((n, 0))

    pairs.sort(key=lambda t: -t[0])
    m = len(pairs)
    v = np.zeros((n, n))
    for j, (_, u, wvec) in enumerate(pairs):
        v[j, :] = u
        v[m + j, :] = wvec
    for l in range(kernel_dim):
        v[2 * m + l, :] = kernel_cols[:, l]
    p = np.array([t[0] for t in pairs])
    return SkewCanonicalForm(v, p, kernel_dim)


def _orthonormalize_against(vec, basis_cols):
    """Two-pass Gram-Schmidt of vec against a list of unit columns."""
    w = vec.copy()
    for _ in range(2):
        for b in basis_cols:
            w = w - b * (b @ w)
    return w


def skew_canonical_cyclic(s, x, tol=DEFAULT_TOL):
    """Canonical form of an invertible skew-symmetric matrix, cyclic route.

    The even Krylov powers of the starting vector span a subspace K, the
    odd powers span N = s(K), and in those orthonormal bases s takes the
    form [[0, -R.T], [R, 0]].  The polar decomposition R = U P and an
    eigendecomposition of P yield the split canonical form.  When the
    cyclic subspace is proper, the construction restarts on the
    orthogonal complement from a fresh standard basis vector.
    """
    w, nrm = _check_skew(s, tol)
    n = w.shape[0]
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != n:
        raise PreconditionError(f"starting vector has length {x.shape[0]}, expected {n}")
    xnrm = float(np.linalg.norm(x))
    if xnrm == 0.0:
        raise PreconditionError("starting vector is zero")
    gram = w.T @ w
    _, dg = sym_eig(gram)
    if float(dg[-1]) <= tol * nrm * nrm:
        raise PreconditionError(
            "matrix is numerically singular; the split form requires invertibility"
        )

    ws = w / nrm
    k_cols = []
    n_cols = []
    start = x / xnrm
    rounds = 0
    while 2 * len(k_cols) < n:
        rounds += 1
        if rounds > n:
            raise ConvergenceError("Krylov deflation exceeded its restart budget")
        everything = k_cols + n_cols
        seed = _orthonormalize_against(start, everything)
        seed_norm = float(np.linalg.norm(seed))
        if seed_norm <= DEFLATION_START_TOL:
            raise ConvergenceError("Krylov breakdown: no usable restart vector")
        k_round = [seed / seed_norm]
        queue = [k_round[0]]
        while queue:
            q = queue.pop(0)
            cand = ws @ (ws @ q)
            cnrm = float(np.linalg.norm(cand))
            if cnrm == 0.0:
                continue
            rem = _orthonormalize_against(cand, everything + k_round)
            if np.linalg.norm(rem) > RANK_TOL * cnrm:
                newvec = rem / np.linalg.norm(rem)
                k_round.append(newvec)
                queue.append(newvec)
        n_round = []
        for q in k_round:
            img = ws @ q
            inrm = float(np.linalg.norm(img))
            rem = _orthonormalize_against(img, everything + k_round + n_round)
            rnrm = float(np.linalg.norm(rem))
            if inrm == 0.0 or rnrm <= RANK_TOL * inrm:
                raise ConvergenceError("Krylov breakdown: odd subspace lost rank")
            n_round.append(rem / rnrm)
        k_cols.extend(k_round)
        n_cols.extend(n_round)
        # next restart probe: first standard basis vector with enough
        # projection onto the complement
        start = None
        if 2 * len(k_cols) < n:
            accepted = k_cols + n_cols
            for i in range(n):
                probe = _orthonormalize_against(np.eye(n)[:, i], accepted)
                if np.linalg.norm(probe) > DEFLATION_START_TOL:
                    start = probe / np.linalg.norm(probe)
                    break
            if start is None:
                raise ConvergenceError("Krylov breakdown: no usable restart vector")

    kmat = np.column_stack(k_cols)
    nmat = np.column_stack(n_cols)
    r = nmat.T @ w @ kmat
    u_r, p_r = polar_decompose(r, tol)
    qp, dp = sym_eig(p_r)
    left = kmat @ qp
    right = nmat @ (u_r @ qp)
    m = left.shape[1]
    v = np.zeros((n, n))
    v[:m, :] = left.T
    v[m:, :] = right.T
    return SkewCanonicalForm(v, dp.copy(), 0)


def assemble_split(form):
    """Reassemble v.T @ [[0, -P], [P, 0]] @ v; requires an empty kernel."""
    if form.kernel_dim != 0:
        raise PreconditionError(
            "split form requires an invertible input (kernel dimension is nonzero)"
        )
    return form.v.T @ canonical_matrix(form) @ form.v
