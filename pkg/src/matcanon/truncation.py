"""Finite-section study of infinite-mode operators.

Two built-in positive operator families are truncated to growing
2n x 2n sections and their symplectic spectra compared size to size:

* ``thermal-diag``: blockdiag(D_n, D_n) with D_n = diag(1 + c k^-alpha),
  k = 1..n.  The section is already in Williamson form, so its
  symplectic spectrum is exactly {1 + c k^-alpha} and convergence of the
  top values can be checked in closed form.
* ``coupled-chain``: the thermal family plus eps * blockdiag(T_n, T_n)
  for the symmetric Toeplitz coupling T[i][j] = 1/(1 + (i-j)^2).  No
  closed form; sections whose minimum eigenvalue is not positive are
  reported as rejected and the study continues.
"""

import numpy as np

from .core import DEFAULT_TOL
from .errors import ConvergenceError, PreconditionError
from .matrixio import format_float
from .williamson import symplectic_spectrum

FAMILIES = ("thermal-diag", "coupled-chain")


def thermal_diag_matrix(n, c, alpha):
    """2n x 2n section blockdiag(D, D), D = diag(1 + c k^-alpha), k=1..n."""
    if n < 1:
        raise PreconditionError("section size must be at least 1")
    if c <= 0.0 or alpha <= 0.0:
        raise PreconditionError("thermal-diag parameters require c > 0 and alpha > 0")
    k = np.arange(1, n + 1, dtype=np.float64)
    d = 1.0 + c * k ** (-alpha)
    return np.diag(np.concatenate([d, d]))


def coupling_toeplitz(n):
    """Symmetric Toeplitz coupling with entries 1 / (1 + (i-j)^2)."""
    idx = np.arange(n)
    return 1.0 / (1.0 + (idx[:, None] - idx[None, :]) ** 2)


def coupled_chain_matrix(n, c, alpha, eps):
    base = thermal_diag_matrix(n, c, alpha)
    if eps == 0.0:
        return base
    t = coupling_toeplitz(n)
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = t
    block[n:, n:] = t
    return base + eps * block


def section_matrix(family, n, c, alpha, eps):
    if family == "thermal-diag":
        return thermal_diag_matrix(n, c, alpha)
    if family == "coupled-chain":
        return coupled_chain_matrix(n, c, alpha, eps)
    raise PreconditionError(f"unknown family {family!r}; expected one of {FAMILIES}")


def run_truncation_study(family, sizes, c, alpha, eps=0.0, seed=0, tol=DEFAULT_TOL):
    """Symplectic spectra of growing sections plus consecutive deltas.

    Sizes must be strictly increasing.  For each consecutive pair of
    successful sizes the top-m spectrum values (m = the smaller size)
    are compared entrywise and the largest absolute drift is reported.
    """
    if family not in FAMILIES:
        raise PreconditionError(f"unknown family {family!r}; expected one of {FAMILIES}")
    sizes = [int(n) for n in sizes]
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise PreconditionError("sizes must be a strictly increasing nonempty list")
    parameters = {"c": float(c), "alpha": float(alpha)}
    if family == "coupled-chain":
        parameters["epsilon"] = float(eps)

    results = []
    for n in sizes:
        entry = {"n": n, "status": "ok", "reason": None, "spectrum": []}
        try:
            a = section_matrix(family, n, c, alpha, eps)
            entry["spectrum"] = [float(v) for v in symplectic_spectrum(a, tol)]
        except (PreconditionError, ConvergenceError) as exc:
            entry["status"] = "rejected"
            entry["reason"] = str(exc)
        results.append(entry)

    deltas = []
    previous = None
    for entry in results:
        if entry["status"] != "ok":
            previous = None
            continue
        if previous is not None:
            m = min(previous["n"], entry["n"])
            drift = [
                abs(entry["spectrum"][i] - previous["spectrum"][i]) for i in range(m)
            ]
            deltas.append(
                {
                    "from": previous["n"],
                    "to": entry["n"],
                    "top_m": m,
                    "max_abs_delta": max(drift),
                    "deltas": drift,
                }
            )
        previous = entry

    return {
        "family": family,
        "parameters": parameters,
        "seed": int(seed),
        "tol": float(tol),
        "sizes": sizes,
        "results": results,
        "consecutive_deltas": deltas,
    }


def study_to_csv(study):
    """CSV table of all computed spectra: header n,index,value (1-based index)."""
    lines = ["n,index,value"]
    for entry in study["results"]:
        if entry["status"] != "ok":
            continue
        for i, value in enumerate(entry["spectrum"], start=1):
            lines.append(f"{entry['n']},{i},{format_float(value)}")
    return "\n".join(lines) + "\n"
