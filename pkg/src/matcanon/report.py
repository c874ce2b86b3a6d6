"""Decomposition reports: building, deterministic JSON rendering,
and residual re-verification.

A report carries the input matrix, the factor payloads, a map of named
residuals and the tolerance each residual must satisfy.  Every residual
is recomputable from the payloads alone; `verify_report` recomputes them
and demands agreement with the stored values within 1e-12 absolute, plus
each stored value under its stored tolerance.  Rendering is fully
deterministic: fixed key order, floats at 17 significant digits.
"""

import json

import numpy as np

from . import normal_form as nf
from . import skew as sk
from . import spectral as sp
from .core import fro
from .errors import ConvergenceError, PreconditionError
from .matrixio import format_float
from .williamson import (
    involution,
    symplectic_spectrum,
    symplectic_spectrum_oracle,
    williamson,
)

VERIFY_ABS_TOL = 1e-12

TOLERANCES = {
    "williamson": {
        "reconstruction": 1e-8,
        "symplectic_ltjl": 1e-8,
        "symplectic_ljlt": 1e-8,
        "symplectic_inverse": 1e-7,
    },
    "skew": {
        "reconstruction": 1e-9,
        "orthogonality": 1e-10,
    },
    "normal-form": {
        "reconstruction": 1e-9,
        "orthogonality": 1e-10,
    },
    "spectral-pair": {
        "reconstruction": 1e-9,
        "e1_total": 1e-9,
        "e2_total": 1e-9,
        "wong": 1e-9,
    },
    "transpose-equiv": {
        "conjugation": 1e-9,
        "symmetry": 1e-10,
        "orthogonality": 1e-10,
        "involution": 1e-9,
    },
    "symplectic-spectrum": {
        "oracle_deviation": 1e-9,
    },
}


def _mat(rows):
    return np.asarray(rows, dtype=np.float64)


def _rel(x, scale):
    return float(x / scale) if scale > 0.0 else float(x)


def _payload_matrix(a):
    return [[float(v) for v in row] for row in np.asarray(a)]


def _compute_payload(kind, a, tol):
    """Run the decomposition for `kind` and return its payload dict."""
    if kind == "williamson":
        form = williamson(a, tol)
        return {"d": [float(v) for v in form.d], "l": _payload_matrix(form.l)}
    if kind == "skew":
        form = sk.skew_canonical(a, tol)
        return {
            "p": [float(v) for v in form.p],
            "kernel_dim": int(form.kernel_dim),
            "v": _payload_matrix(form.v),
        }
    if kind == "normal-form":
        form = nf.real_normal_form(a, tol)
        out = {
            "real_eigs": [float(v) for v in form.real_eigs],
            "blocks": [[float(al), float(be)] for al, be in form.blocks],
            "w": _payload_matrix(form.w),
        }
        spec = nf.spectrum(a, tol)
        out["spectrum"] = [[z.real, z.imag] for z in spec]
        return out
    if kind == "spectral-pair":
        atoms = sp.spectral_pair(a, tol)
        return {
            "dim": atoms.dim,
            "atoms": [
                {
                    "re": at.value.real,
                    "im": at.value.imag,
                    "e1": _payload_matrix(at.e1),
                    "e2": _payload_matrix(at.e2),
                }
                for at in atoms.atoms
            ],
        }
    if kind == "transpose-equiv":
        u = nf.transpose_equivalence(a, tol)
        return {"u": _payload_matrix(u)}
    if kind == "symplectic-spectrum":
        d = symplectic_spectrum(a, tol)
        return {"d": [float(v) for v in d]}
    raise ValueError(f"unknown report kind {kind!r}")


def compute_residuals(kind, a, payload, tol):
    """Named residuals for a payload; shared by build and verify."""
    a = np.asarray(a, dtype=np.float64)
    nrm = fro(a)
    if kind == "williamson":
        l = _mat(payload["l"])
        d = np.asarray(payload["d"], dtype=np.float64)
        j = involution(len(payload["d"]))
        dd = np.diag(np.concatenate([d, d]))
        return {
            "reconstruction": _rel(fro(l.T @ dd @ l - a), nrm),
            "symplectic_ltjl": fro(l.T @ j @ l - j),
            "symplectic_ljlt": fro(l @ j @ l.T - j),
            "symplectic_inverse": _rel(fro(np.linalg.inv(l) - (-j) @ l.T @ j), fro(l)),
        }
    if kind == "skew":
        form = sk.SkewCanonicalForm(
            _mat(payload["v"]),
            np.asarray(payload["p"], dtype=np.float64),
            int(payload["kernel_dim"]),
        )
        return {
            "reconstruction": _rel(fro(sk.reconstruct(form) - a), nrm),
            "orthogonality": fro(form.v @ form.v.T - np.eye(form.dim)),
        }
    if kind == "normal-form":
        form = nf.RealNormalForm(
            _mat(payload["w"]),
            np.asarray(payload["real_eigs"], dtype=np.float64),
            [(al, be) for al, be in payload["blocks"]],
        )
        return {
            "reconstruction": _rel(fro(form.w.T @ a @ form.w - nf.canonical_matrix(form)), nrm),
            "orthogonality": fro(form.w @ form.w.T - np.eye(form.dim)),
        }
    if kind == "spectral-pair":
        atoms = sp.SpectralAtomSet(
            [
                sp.SpectralAtom(complex(at["re"], at["im"]), _mat(at["e1"]), _mat(at["e2"]))
                for at in payload["atoms"]
            ],
            int(payload["dim"]),
        )
        closed = sp.conjugate_closure(atoms)
        e1_total = sum(e1 for _, e1, _ in closed)
        e2_total = sum(e2 for _, _, e2 in closed)
        return {
            "reconstruction": _rel(fro(sp.reconstruct(atoms) - a), nrm),
            "e1_total": fro(e1_total - np.eye(atoms.dim)),
            "e2_total": fro(e2_total),
            "wong": sp.wong_residual(a, atoms),
        }
    if kind == "transpose-equiv":
        u = _mat(payload["u"])
        n = u.shape[0]
        return {
            "conjugation": _rel(fro(u @ a @ u.T - a.T), nrm),
            "symmetry": fro(u - u.T),
            "orthogonality": fro(u @ u.T - np.eye(n)),
            "involution": fro(u @ u - np.eye(n)),
        }
    if kind == "symplectic-spectrum":
        d = np.asarray(payload["d"], dtype=np.float64)
        ref = symplectic_spectrum_oracle(a, tol)
        return {"oracle_deviation": float(np.max(np.abs(d - ref) / ref))}
    raise ValueError(f"unknown report kind {kind!r}")


def build_report(kind, a, tol):
    """Full report dict for a decomposition of a at tolerance tol."""
    a = np.asarray(a, dtype=np.float64)
    report = {
        "kind": kind,
        "status": "ok",
        "reason": None,
        "tol": float(tol),
        "input": {
            "rows": int(a.shape[0]),
            "cols": int(a.shape[1]),
            "frobenius_norm": fro(a),
            "matrix": _payload_matrix(a),
        },
        "payload": {},
        "residuals": {},
        "tolerances": {},
    }
    try:
        payload = _compute_payload(kind, a, tol)
        report["payload"] = payload
        report["residuals"] = compute_residuals(kind, a, payload, tol)
        report["tolerances"] = dict(TOLERANCES[kind])
    except (PreconditionError, ConvergenceError) as exc:
        report["status"] = "rejected"
        report["reason"] = str(exc)
    return report


def verify_report(report):
    """Recheck a parsed report; returns a list of failure descriptions."""
    kind = report["kind"]
    if kind not in TOLERANCES:
        raise ValueError(f"unknown report kind {kind!r}")
    if report["status"] == "rejected":
        return []
    a = _mat(report["input"]["matrix"])
    failures = []
    recomputed = compute_residuals(kind, a, report["payload"], report["tol"])
    stored = report["residuals"]
    tolerances = report["tolerances"]
    for key, fresh in recomputed.items():
        if key not in stored:
            failures.append(f"missing residual {key!r}")
            continue
        if abs(fresh - float(stored[key])) > VERIFY_ABS_TOL:
            failures.append(
                f"residual {key!r} mismatch: stored {stored[key]:.17g}, "
                f"recomputed {fresh:.17g}"
            )
        if key not in tolerances:
            failures.append(f"missing tolerance for {key!r}")
        elif float(stored[key]) > float(tolerances[key]):
            failures.append(
                f"residual {key!r} = {stored[key]:.17g} exceeds tolerance "
                f"{tolerances[key]:.17g}"
            )
    for key in stored:
        if key not in recomputed:
            failures.append(f"unexpected residual {key!r}")
    return failures


def render_json(obj):
    """Deterministic JSON text: insertion order kept, floats at 17 digits."""
    pieces = []
    _render(obj, pieces)
    return "".join(pieces)


def _render(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _render(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _render(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot render {type(obj).__name__} as JSON")
