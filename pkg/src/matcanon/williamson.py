"""Williamson normal form of strictly positive matrices of even order.

Any strictly positive 2n x 2n matrix a factors as

    a = L.T @ [[P, 0], [0, P]] @ L

with L symplectic (L.T @ J @ L = J for J = [[0, -I], [I, 0]]) and
P = diag(d) strictly positive.  The diagonal d is the symplectic
spectrum of a, unique up to ordering and invariant under symplectic
conjugation.  Vectors are laid out (q_1..q_n, p_1..p_n); callers using
interleaved coordinates must permute first.
"""

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, fro, require_square, sym_eig
from .errors import ConvergenceError, PreconditionError
from .skew import skew_canonical

PAIR_TOL = 1e-8


def involution(n):
    """The 2n x 2n block matrix [[0, -I], [I, 0]]; squares to -I exactly."""
    if n < 1:
        raise PreconditionError("half-dimension must be at least 1")
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return j


@dataclass
class WilliamsonForm:
    """Symplectic factor l and symplectic eigenvalues d (descending)."""

    l: np.ndarray
    d: np.ndarray

    @property
    def half_dim(self):
        return self.l.shape[0] // 2


def _positive_even_root(a, tol):
    """Shared precondition checks; returns (sym part, sqrt, J, ||a||_F)."""
    m = require_square(a)
    n2 = m.shape[0]
    if n2 % 2 != 0:
        raise PreconditionError("odd dimension")
    nrm = fro(m)
    if fro(m - m.T) > tol * max(nrm, 1.0):
        raise PreconditionError("matrix is not symmetric to the requested tolerance")
    sym = (m + m.T) / 2.0
    qa, da = sym_eig(sym)
    if nrm == 0.0 or float(da[-1]) <= tol * nrm:
        raise PreconditionError(
            f"matrix is not strictly positive: min eigenvalue {float(da[-1]):.3e}"
        )
    root = qa @ np.diag(np.sqrt(da)) @ qa.T
    root = (root + root.T) / 2.0
    return sym, root, involution(n2 // 2), nrm


def williamson(a, tol=DEFAULT_TOL):
    """Williamson normal form of a strictly positive even-order matrix.

    Forms the skew-symmetric b = sqrt(a) @ J @ sqrt(a), reduces it to the
    split canonical form [[0, -P], [P, 0]] by an orthogonal gamma, and
    assembles L = diag(P^{-1/2}, P^{-1/2}) @ gamma.T @ sqrt(a).
    """
    _, root, j, nrm = _positive_even_root(a, tol)
    b = root @ j @ root
    b = (b - b.T) / 2.0
    form = skew_canonical(b, tol=tol, scale=fro(b))
    if form.kernel_dim != 0:
        raise PreconditionError(
            "skew kernel detected: strict positivity lost to roundoff"
        )
    p = form.p
    inv_sqrt_p = np.concatenate([1.0 / np.sqrt(p), 1.0 / np.sqrt(p)])
    l = inv_sqrt_p[:, None] * (form.v @ root)
    return WilliamsonForm(l, p.copy())


def symplectic_residual(q):
    """Frobenius defect of the symplectic identity: ||q.T @ J @ q - J||."""
    m = require_square(q)
    if m.shape[0] % 2 != 0:
        raise PreconditionError("odd dimension")
    j = involution(m.shape[0] // 2)
    return fro(m.T @ j @ m - j)


def symplectic_spectrum(a, tol=DEFAULT_TOL):
    """Symplectic eigenvalues of a, descending."""
    return williamson(a, tol).d


def symplectic_spectrum_oracle(a, tol=DEFAULT_TOL):
    """Symplectic eigenvalues computed without the block-pairing logic.

    Uses only that g = b.T @ b has each squared symplectic eigenvalue
    twice, for b = sqrt(a) @ J @ sqrt(a): the sorted eigenvalues of g
    must pair up, and the square roots of one representative per pair
    are the symplectic spectrum.
    """
    _, root, j, nrm = _positive_even_root(a, tol)
    b = root @ j @ root
    b = (b - b.T) / 2.0
    g = b.T @ b
    _, dg = sym_eig(g)
    n = g.shape[0] // 2
    out = np.empty(n)
    for i in range(n):
        mu1, mu2 = float(dg[2 * i]), float(dg[2 * i + 1])
        if abs(mu1 - mu2) > PAIR_TOL * max(abs(mu1), abs(mu2)):
            raise ConvergenceError(
                "eigenvalues failed to pair; input is not symmetric enough"
            )
        out[i] = np.sqrt(max((mu1 + mu2) / 2.0, 0.0))
    return out


def random_symplectic(n, seed):
    """Deterministic random symplectic matrix on R^(2n).

    Product of a lower shear [[I, 0], [C, I]], an upper shear
    [[I, C'], [0, I]] (C, C' random symmetric with entries in [-1, 1])
    and an orthogonal-symplectic factor [[X, Y], [-Y, X]] obtained by
    QR-orthonormalizing a random matrix of that block pattern (done in
    its complex representation, where the pattern is automatic).
    """
    if n < 1:
        raise PreconditionError("half-dimension must be at least 1")
    rng = np.random.default_rng(seed)
    c1 = rng.uniform(-1.0, 1.0, size=(n, n))
    c1 = (c1 + c1.T) / 2.0
    c2 = rng.uniform(-1.0, 1.0, size=(n, n))
    c2 = (c2 + c2.T) / 2.0
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    qz, _ = np.linalg.qr(z)
    eye = np.eye(n)
    lower = np.block([[eye, np.zeros((n, n))], [c1, eye]])
    upper = np.block([[eye, c2], [np.zeros((n, n)), eye]])
    orth = np.block([[qz.real, qz.imag], [-qz.imag, qz.real]])
    return lower @ upper @ orth


def uniqueness_check(a, trials, seed, tol=DEFAULT_TOL):
    """Max relative drift of the symplectic spectrum under conjugation.

    Conjugates a by `trials` random symplectic matrices (trial t uses
    seed + t) and compares the recomputed spectra against the base one;
    evaluation is sequential and fully deterministic in seed.
    """
    base = symplectic_spectrum(a, tol)
    n = base.shape[0]
    worst = 0.0
    for t in range(trials):
        ns = random_symplectic(n, seed + t)
        conj = ns.T @ np.asarray(a, dtype=np.float64) @ ns
        conj = (conj + conj.T) / 2.0
        d = symplectic_spectrum(conj, tol)
        worst = max(worst, float(np.max(np.abs(d - base) / base)))
    return worst
