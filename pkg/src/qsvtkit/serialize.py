"""JSON interchange for matrices, polynomials, phases, and reports.

Number formatting uses Python's shortest round-trip float repr, so identical
values always serialize to identical bytes.
"""

from __future__ import annotations

import json

import numpy as np

from .chebyshev import ChebyshevSeries, cheb_to_monomial, monomial_to_cheb, parity_of
from .csd import CSDecomposition
from .errors import ValidationError
from .qsp import ComplexPolynomial, QspPair


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(v.real), float(v.imag)] for v in m.reshape(-1)],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed matrix JSON: {exc}") from exc
    if len(data) != rows * cols:
        raise ValidationError(
            f"matrix JSON has {len(data)} entries, expected {rows}x{cols}"
        )
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return flat.reshape(rows, cols)


def _coeffs_to_pairs(coeffs) -> list:
    return [[float(c.real), float(c.imag)] for c in np.asarray(coeffs, dtype=complex)]


def _pairs_to_coeffs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def polynomial_to_json(p, basis: str = "monomial") -> dict:
    """Serialize a ComplexPolynomial or ChebyshevSeries."""
    if basis not in ("monomial", "chebyshev"):
        raise ValidationError(f"unknown basis {basis!r}")
    if isinstance(p, ChebyshevSeries):
        coeffs = p.coeffs if basis == "chebyshev" else cheb_to_monomial(p.coeffs)
        parity = p.parity
    elif isinstance(p, ComplexPolynomial):
        coeffs = p.coeffs if basis == "monomial" else p.cheb_coeffs()
        parity = p.parity
    else:
        coeffs = np.asarray(p, dtype=complex)
        parity = parity_of(coeffs)
    return {"basis": basis, "parity": parity, "coeffs": _coeffs_to_pairs(coeffs)}


def polynomial_from_json(obj: dict) -> ComplexPolynomial:
    try:
        basis = obj.get("basis", "monomial")
        parity = obj.get("parity", "none")
        coeffs = _pairs_to_coeffs(obj["coeffs"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed polynomial JSON: {exc}") from exc
    if basis == "chebyshev":
        coeffs = cheb_to_monomial(coeffs)
    elif basis != "monomial":
        raise ValidationError(f"unknown basis {basis!r}")
    return ComplexPolynomial(coeffs, parity)


def chebseries_from_json(obj: dict) -> ChebyshevSeries:
    basis = obj.get("basis", "chebyshev")
    coeffs = _pairs_to_coeffs(obj["coeffs"])
    if basis == "monomial":
        coeffs = monomial_to_cheb(coeffs)
    return ChebyshevSeries(coeffs, obj.get("parity", "none"))


def phases_to_json(phi) -> list:
    return [float(x) for x in np.asarray(phi, dtype=float).reshape(-1)]


def phases_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValidationError("phase JSON must be a nonempty list of reals")
    return np.array([float(x) for x in obj], dtype=float)


def pair_to_json(pair: QspPair, basis: str = "monomial") -> dict:
    return {
        "p": polynomial_to_json(pair.p, basis),
        "q": polynomial_to_json(pair.q, basis),
    }


def pair_from_json(obj: dict) -> QspPair:
    return QspPair(polynomial_from_json(obj["p"]), polynomial_from_json(obj["q"]))


def csd_to_json(dec: CSDecomposition) -> dict:
    s = dec.structure
    return {
        "r1": dec.r1,
        "c1": dec.c1,
        "structure": {
            "n_zero": s.n_zero,
            "n_mid": s.n_mid,
            "n_one": s.n_one,
            "cos_values": [float(x) for x in s.cos_values],
            "sin_values": [float(x) for x in s.sin_values],
        },
        "v1": matrix_to_json(dec.v1),
        "v2": matrix_to_json(dec.v2),
        "w1": matrix_to_json(dec.w1),
        "w2": matrix_to_json(dec.w2),
        "d": matrix_to_json(dec.d),
    }


def certificate_to_json(cert) -> dict:
    return {
        "poly": polynomial_to_json(cert.poly, "chebyshev"),
        "map": [float(cert.map_a), float(cert.map_b)],
        "degree": int(cert.degree),
        "parity": cert.parity,
        "windows": {
            k: (None if v is None else [float(v[0]), float(v[1])])
            for k, v in cert.windows.items()
        },
        "measured": {
            "sup_inner": float(cert.sup_inner),
            "sup_bounded": float(cert.sup_bounded),
            "sup_outer": float(cert.sup_outer),
        },
        "claims": {"bound": float(cert.bound), "eps": float(cert.eps)},
        "params": {
            k: (float(v) if isinstance(v, (int, float, np.floating)) else v)
            for k, v in cert.params.items()
        },
    }


def dumps(obj) -> str:
    """Deterministic JSON text (fixed key order as constructed, repr floats)."""
    return json.dumps(obj, indent=2, allow_nan=False)


def loads(text: str):
    return json.loads(text)
