"""Finite atomic spectral pairs of real normal matrices.

Every normal matrix decomposes over its spectrum atoms as

    a = sum_lambda [ Re(lambda) E1({lambda}) - Im(lambda) E2({lambda}) ]

with E1 symmetric positive semidefinite and E2 skew-symmetric set
functions obeying E1(conj e) = E1(e), E2(conj e) = -E2(e).  Atoms are
stored for Im(lambda) >= 0 only; the conjugate-closed family is
generated on demand from those symmetry relations.  The complexified
projection of an atom is E1 + i E2 and is an honest spectral projection
of the complexified matrix, which is what the Wong-style residual check
verifies against an independent kernel-projection computation.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import DEFAULT_TOL, as_matrix, fro, require_square, sym_eig
from .errors import PreconditionError
from .normal_form import real_normal_form

ATOM_MERGE_TOL = 1e-8
MOMENT_MAX_POWER = 8


class ComplexMatrix(NamedTuple):
    """Real/imaginary parts of a complexified operator."""

    re: np.ndarray
    im: np.ndarray

    def conj(self):
        """Entrywise conjugation (the action of the conjugation map)."""
        return ComplexMatrix(self.re, -self.im)

    def transpose(self):
        return ComplexMatrix(self.re.T, self.im.T)

    def to_complex(self):
        return self.re + 1j * self.im


def complexify(a):
    """Extend a real matrix to the complexification: (re, im) = (a, 0)."""
    m = as_matrix(a)
    return ComplexMatrix(m.copy(), np.zeros_like(m))


@dataclass
class SpectralAtom:
    """One spectrum atom: lambda with Im >= 0, symmetric e1, skew e2."""

    value: complex
    e1: np.ndarray
    e2: np.ndarray


@dataclass
class SpectralAtomSet:
    atoms: list
    dim: int


def atom_projector(atom):
    """Complexified spectral projection of one atom: e1 + i e2."""
    return ComplexMatrix(atom.e1, atom.e2)


def conjugate_closure(s):
    """Atoms extended over the full conjugate-closed spectrum.

    Yields (value, e1, e2) triples; atoms with Im > 0 contribute their
    conjugate with the same e1 and negated e2.
    """
    closed = []
    for atom in s.atoms:
        closed.append((atom.value, atom.e1, atom.e2))
        if atom.value.imag > 0.0:
            closed.append((atom.value.conjugate(), atom.e1, -atom.e2))
    return closed


def spectral_pair(a, tol=DEFAULT_TOL):
    """Spectral pair atoms of a normal matrix.

    Real eigenvalue columns z contribute rank-one e1 = z z^T; a block
    with columns (x, y) contributes lambda = alpha + i beta with
    e1 = (x x^T + y y^T)/2 and e2 = (y x^T - x y^T)/2.  Atoms whose
    values agree within 1e-8 * ||a||_F are merged by summing; the stored
    value is the mean of the merged group.
    """
    form = real_normal_form(a, tol)
    n = form.dim
    nrm = fro(np.asarray(a, dtype=np.float64))
    raw = []
    for r, alpha in enumerate(form.real_eigs):
        z = form.w[:, r]
        raw.append((complex(alpha), np.outer(z, z), np.zeros((n, n))))
    k = len(form.real_eigs)
    for j, (alpha, beta) in enumerate(form.blocks):
        x = form.w[:, k + 2 * j]
        y = form.w[:, k + 2 * j + 1]
        e1 = (np.outer(x, x) + np.outer(y, y)) / 2.0
        e2 = (np.outer(y, x) - np.outer(x, y)) / 2.0
        raw.append((complex(alpha, beta), e1, e2))

    raw.sort(key=lambda t: (-t[0].real, -t[0].imag))
    merge_tol = ATOM_MERGE_TOL * max(nrm, 1e-300)
    groups = []
    for value, e1, e2 in raw:
        for g in groups:
            if abs(value - g["sum"] / g["count"]) <= merge_tol:
                g["sum"] += value
                g["count"] += 1
                g["e1"] += e1
                g["e2"] += e2
                break
        else:
            groups.append({"sum": value, "count": 1, "e1": e1.copy(), "e2": e2.copy()})

    atoms = []
    for g in groups:
        value = g["sum"] / g["count"]
        if abs(value.imag) <= merge_tol:
            value = complex(value.real, 0.0)
        e1 = (g["e1"] + g["e1"].T) / 2.0
        e2 = (g["e2"] - g["e2"].T) / 2.0
        atoms.append(SpectralAtom(value, e1, e2))
    atoms.sort(key=lambda at: (-at.value.real, -at.value.imag))
    return SpectralAtomSet(atoms, n)


def reconstruct(s):
    """Sum Re(lambda) e1 - Im(lambda) e2 over the conjugate-closed atoms."""
    out = np.zeros((s.dim, s.dim))
    for value, e1, e2 in conjugate_closure(s):
        out += value.real * e1 - value.imag * e2
    return out


def moment(s, t1, t2):
    """The mixed power a^t1 (a^T)^t2 evaluated from the atoms.

    Each closed-family atom lambda = r e^{i theta} contributes
    r^(t1+t2) [cos((t1-t2) theta) e1 - sin((t1-t2) theta) e2].
    """
    if t1 < 0 or t2 < 0:
        raise PreconditionError("moment exponents must be nonnegative")
    if t1 + t2 > MOMENT_MAX_POWER:
        raise PreconditionError(
            f"moment exponent bound exceeded: t1 + t2 must be <= {MOMENT_MAX_POWER}"
        )
    out = np.zeros((s.dim, s.dim))
    total = t1 + t2
    diff = t1 - t2
    for value, e1, e2 in conjugate_closure(s):
        r = abs(value)
        theta = math.atan2(value.imag, value.real)
        out += (r**total) * (
            math.cos(diff * theta) * e1 - math.sin(diff * theta) * e2
        )
    return out


def _kernel_projector(ac, value):
    """Orthogonal projection onto ker(ac - value I) for normal complex ac.

    Computed through the real symmetric embedding of the Hermitian
    matrix (ac - value)^* (ac - value) with the Jacobi eigensolver, so
    the route is independent of the block reduction that produced the
    atoms.  Assumes the distinct eigenvalues are separated well beyond
    the eigensolver tolerance.
    """
    n = ac.shape[0]
    m = ac - value * np.eye(n)
    herm = m.conj().T @ m
    hr = (herm.real + herm.real.T) / 2.0
    hi = (herm.imag - herm.imag.T) / 2.0
    emb = np.block([[hr, -hi], [hi, hr]])
    qe, de = sym_eig(emb, tol=1e-14)
    thresh = 1e-8 * max(float(de[0]), 1e-300)
    proj = np.zeros((n, n), dtype=np.complex128)
    for i in range(2 * n):
        if de[i] <= thresh:
            zeta = qe[:n, i] + 1j * qe[n:, i]
            proj += np.outer(zeta, zeta.conj()) / 2.0
    return proj


def wong_residual(a, s):
    """Max defect of conjugation-swaps-projections over the atom set.

    For each atom the complexified projection at lambda is recomputed
    independently as the kernel projector of (a_hat - lambda); its
    entrywise conjugate must equal the projection at conj(lambda) built
    from the atom data and the symmetry relations.
    """
    m = require_square(a)
    nrm = fro(m)
    scale = nrm if nrm > 0.0 else 1.0
    ac = (m / scale).astype(np.complex128)
    worst = 0.0
    for atom in s.atoms:
        proj = _kernel_projector(ac, atom.value / scale)
        target = atom.e1 - 1j * atom.e2
        worst = max(worst, float(np.linalg.norm(np.conj(proj) - target)))
    return worst


def wong_check(a, tol=DEFAULT_TOL):
    """Compute the spectral pair of a and return its max Wong defect."""
    return wong_residual(a, spectral_pair(a, tol))
