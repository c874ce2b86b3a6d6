"""matcanon: canonical forms of dense real matrices.

Williamson normal form and symplectic spectra of strictly positive
matrices, skew-symmetric canonical form, the real-normal canonical form
with its transpose equivalence, and finite atomic spectral pairs, plus
a CLI producing verifiable JSON reports.
"""

from .core import SymEig, matmul, polar_decompose, qr, sym_eig, sym_sqrt
from .errors import ConvergenceError, PreconditionError
from .normal_form import (
    RealNormalForm,
    is_normal,
    real_normal_form,
    spectrum,
    transpose_equivalence,
    transpose_equivalence_cyclic,
)
from .skew import (
    SkewCanonicalForm,
    assemble_split,
    skew_canonical,
    skew_canonical_cyclic,
)
from .spectral import (
    ComplexMatrix,
    SpectralAtom,
    SpectralAtomSet,
    complexify,
    moment,
    reconstruct,
    spectral_pair,
    wong_check,
)
from .williamson import (
    WilliamsonForm,
    involution,
    random_symplectic,
    symplectic_residual,
    symplectic_spectrum,
    symplectic_spectrum_oracle,
    uniqueness_check,
    williamson,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexMatrix",
    "ConvergenceError",
    "PreconditionError",
    "RealNormalForm",
    "SkewCanonicalForm",
    "SpectralAtom",
    "SpectralAtomSet",
    "SymEig",
    "WilliamsonForm",
    "assemble_split",
    "complexify",
    "involution",
    "is_normal",
    "matmul",
    "moment",
    "polar_decompose",
    "qr",
    "random_symplectic",
    "real_normal_form",
    "reconstruct",
    "skew_canonical",
    "skew_canonical_cyclic",
    "spectral_pair",
    "spectrum",
    "sym_eig",
    "sym_sqrt",
    "symplectic_residual",
    "symplectic_spectrum",
    "symplectic_spectrum_oracle",
    "transpose_equivalence",
    "transpose_equivalence_cyclic",
    "uniqueness_check",
    "williamson",
    "wong_check",
]
