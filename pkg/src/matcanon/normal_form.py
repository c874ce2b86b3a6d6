"""Canonical form of real normal matrices and the symmetric-orthogonal
equivalence between a normal matrix and its transpose.

A real normal matrix is orthogonally similar to a block-diagonal matrix
holding its real eigenvalues followed by 2x2 rotation-scaling blocks
[[alpha, beta], [-beta, alpha]] with beta > 0, one block per conjugate
eigenvalue pair alpha +/- i beta.  The algorithm splits the input into
its commuting symmetric part H and skew part S, diagonalizes H, and
reduces S inside each repeated-eigenvalue cluster of H with the
skew-canonical routine.
"""

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, cluster_by_gap, fro, require_square, sym_eig
from .errors import ConvergenceError, PreconditionError
from .skew import CLUSTER_GAP, DEFLATION_START_TOL, RANK_TOL, skew_canonical


@dataclass
class RealNormalForm:
    """Orthogonal w, real eigenvalues (descending) and rotation-scaling blocks.

    Columns of w: one per real eigenvalue, then a pair per block, in the
    order of real_eigs and blocks.  Blocks are (alpha, beta) with
    beta > 0 and are sorted by alpha then beta, both descending.
    """

    w: np.ndarray
    real_eigs: np.ndarray
    blocks: list

    @property
    def dim(self):
        return self.w.shape[0]


def canonical_matrix(form):
    """The block-diagonal matrix d with w.T @ a @ w = d."""
    n = form.dim
    out = np.zeros((n, n))
    k = len(form.real_eigs)
    out[:k, :k] = np.diag(form.real_eigs)
    for j, (alpha, beta) in enumerate(form.blocks):
        i = k + 2 * j
        out[i, i] = alpha
        out[i + 1, i + 1] = alpha
        out[i, i + 1] = beta
        out[i + 1, i] = -beta
    return out


def reconstruct(form):
    return form.w @ canonical_matrix(form) @ form.w.T


def is_normal(a, tol=DEFAULT_TOL):
    """True when a commutes with its transpose to within tol * ||a||_F^2."""
    m = require_square(a)
    nrm = fro(m)
    if nrm == 0.0:
        return True
    return fro(m @ m.T - m.T @ m) <= tol * nrm * nrm


def _require_normal(a, tol):
    m = require_square(a)
    if not is_normal(m, tol):
        raise PreconditionError("matrix is not normal to the requested tolerance")
    return m


def real_normal_form(a, tol=DEFAULT_TOL):
    """Orthogonal reduction of a normal matrix to real-plus-block form.

    Eigenvalues of the symmetric part within 1e-8 * ||a||_F of each other
    are treated as one cluster; the skew part restricted to a cluster is
    exactly skew-symmetric and its canonical pairs become the blocks.
    Per-block (alpha, beta) are Rayleigh quotients of the actual column
    vectors, so merged clusters do not smear the recovered values.
    """
    m = _require_normal(a, tol)
    n = m.shape[0]
    nrm = fro(m)
    if nrm == 0.0:
        return RealNormalForm(np.eye(n), np.zeros(n), [])

    h = (m + m.T) / 2.0
    sk = (m - m.T) / 2.0
    qh, dh = sym_eig(h)

    reals = []
    blocks = []
    for start, stop in cluster_by_gap(dh, CLUSTER_GAP * nrm):
        qc = qh[:, start:stop]
        sc = qc.T @ sk @ qc
        sc = (sc - sc.T) / 2.0
        sub = skew_canonical(sc, tol=tol, scale=nrm)
        npairs = len(sub.p)
        for j in range(npairs):
            u = qc @ sub.v[j, :]
            v = qc @ sub.v[npairs + j, :]
            x, y = u, -v
            alpha = (x @ m @ x + y @ m @ y) / 2.0
            beta = -(y @ m @ x)
            blocks.append((float(alpha), float(beta), x, y))
        for l in range(sub.kernel_dim):
            z = qc @ sub.v[2 * npairs + l, :]
            reals.append((float(z @ m @ z), z))

    reals.sort(key=lambda t: -t[0])
    blocks.sort(key=lambda t: (-t[0], -t[1]))
    cols = [z for _, z in reals]
    for _, _, x, y in blocks:
        cols.append(x)
        cols.append(y)
    w = np.column_stack(cols)
    return RealNormalForm(
        w,
        np.array([val for val, _ in reals]),
        [(alpha, beta) for alpha, beta, _, _ in blocks],
    )


def spectrum(a, tol=DEFAULT_TOL):
    """Eigenvalue multiset of a normal matrix, conjugate-closed.

    Real eigenvalues come first (descending), then alpha + i beta and
    alpha - i beta per block.
    """
    form = real_normal_form(a, tol)
    out = [complex(v) for v in form.real_eigs]
    for alpha, beta in form.blocks:
        out.append(complex(alpha, beta))
        out.append(complex(alpha, -beta))
    return out


def transpose_equivalence(a, tol=DEFAULT_TOL):
    """Symmetric orthogonal u with u @ a @ u.T = a.T.

    Built as w @ d @ w.T where d is the identity on real-eigenvalue
    coordinates and diag(1, -1) on every 2x2 block, so u is an
    involution by construction.
    """
    form = real_normal_form(a, tol)
    k = len(form.real_eigs)
    signs = np.ones(form.dim)
    for j in range(len(form.blocks)):
        signs[k + 2 * j + 1] = -1.0
    u = (form.w * signs) @ form.w.T
    return (u + u.T) / 2.0


def transpose_equivalence_cyclic(a, x, tol=DEFAULT_TOL):
    """Same map as transpose_equivalence, built from a starting vector.

    The orthonormal basis of the invariant subspace generated by x under
    a and a.T is grown breadth-first; alongside each accepted basis
    vector q the construction tracks its image y = u(q), seeded by
    u(x) = x and propagated through u(a q) = a.T y and u(a.T q) = a y.
    Proper subspaces trigger a restart from the first standard basis
    vector with enough projection onto the complement.  The assembled
    map is snapped to the nearest symmetric orthogonal involution
    through the matrix sign function.
    """
    m = _require_normal(a, tol)
    n = m.shape[0]
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != n:
        raise PreconditionError(f"starting vector has length {x.shape[0]}, expected {n}")
    xnrm = float(np.linalg.norm(x))
    if xnrm == 0.0:
        raise PreconditionError("starting vector is zero")
    nrm = fro(m)
    if nrm == 0.0:
        return np.eye(n)
    ms = m / nrm

    basis = []
    images = []

    def _residual(cand, partner):
        w = cand.copy()
        tw = partner.copy()
        for _ in range(2):
            for q, y in zip(basis, images):
                c = q @ w
                w = w - c * q
                tw = tw - c * y
        return w, tw, float(np.linalg.norm(w))

    def _grow(seed_pair):
        # greedy pivoted Gram-Schmidt: always take the candidate whose
        # remainder is largest, so poorly reachable directions are
        # orthonormalized last and cannot contaminate later images
        pool = [seed_pair]
        grew = False
        while pool:
            best = -1
            best_r = -1.0
            survivors = []
            for cand, partner in pool:
                w, tw, r = _residual(cand, partner)
                if r <= RANK_TOL * max(float(np.linalg.norm(cand)), 1e-30):
                    continue
                survivors.append((cand, partner))
                if r > best_r:
                    best_r = r
                    best = len(survivors) - 1
            if best < 0:
                return grew
            cand, partner = survivors.pop(best)
            w, tw, r = _residual(cand, partner)
            basis.append(w / r)
            images.append(tw / r)
            grew = True
            q, y = basis[-1], images[-1]
            survivors.append((ms @ q, ms.T @ y))
            survivors.append((ms.T @ q, ms @ y))
            pool = survivors
        return grew

    rounds = 0
    start = x / xnrm
    while len(basis) < n:
        rounds += 1
        if rounds > n:
            raise ConvergenceError("deflation exceeded its restart budget")
        if not _grow((start, start)):
            raise ConvergenceError("restart vector collapsed during orthonormalization")
        if len(basis) < n:
            start = None
            bmat = np.column_stack(basis)
            for i in range(n):
                probe = np.eye(n)[:, i] - bmat @ (bmat.T @ np.eye(n)[:, i])
                pn = float(np.linalg.norm(probe))
                if pn > DEFLATION_START_TOL:
                    start = probe / pn
                    break
            if start is None:
                raise ConvergenceError("no usable restart vector for deflation")

    raw = np.column_stack(images) @ np.column_stack(basis).T
    raw = (raw + raw.T) / 2.0
    qm, dm = sym_eig(raw, tol=1e-14)
    if float(np.min(np.abs(dm))) < 0.5:
        raise ConvergenceError("basis degeneracy: assembled map is far from orthogonal")
    u = (qm * np.where(dm >= 0.0, 1.0, -1.0)) @ qm.T
    return (u + u.T) / 2.0
