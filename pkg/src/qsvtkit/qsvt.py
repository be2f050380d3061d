"""Block encodings, phased alternating sequences, and singular value
transformation, with a numerical verifier for the lifting theorem.

A block encoding is a unitary together with two isometries selecting the
encoded corner; the phased alternating sequence interleaves the unitary and
its adjoint with exponentiated reflections of the two range projections.
The verifier checks that the projected sequence equals the singular value
transform of the encoded block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import EVEN, ODD
from .config import Tolerance
from .errors import NormError, ValidationError
from .numerics import DEFAULT_TOLERANCE, as_matrix, check_unitary, unitarity_defect
from .qsp import QspPair, qsp_polynomials


@dataclass(frozen=True)
class BlockEncoding:
    """Unitary u with isometries bl1 (d x r) and br1 (d x c): bl1† u br1 = A."""

    u: np.ndarray
    bl1: np.ndarray
    br1: np.ndarray

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    @property
    def pi_left(self) -> np.ndarray:
        return self.bl1 @ self.bl1.conj().T

    @property
    def pi_right(self) -> np.ndarray:
        return self.br1 @ self.br1.conj().T

    def encoded(self) -> np.ndarray:
        """The encoded block A = bl1† U br1."""
        return self.bl1.conj().T @ self.u @ self.br1

    def validate(self, tolerance: Tolerance | None = None) -> None:
        tol = tolerance or DEFAULT_TOLERANCE
        check_unitary(self.u, tol.unitarity_tol, "encoding unitary")
        for name, iso in (("bl1", self.bl1), ("br1", self.br1)):
            defect = unitarity_defect(iso)
            if defect > tol.unitarity_tol:
                raise ValidationError(
                    f"{name} does not have orthonormal columns (defect {defect:.3e})",
                    residual=defect,
                )


def block_encode(a, tolerance: Tolerance | None = None) -> BlockEncoding:
    """Standard unitary dilation [[A, sqrt(I-AA†)], [sqrt(I-A†A), -A†]].

    The square roots are built from the SVD of A so the result is unitary to
    machine precision.  Requires ||A||_op <= 1.
    """
    tol = tolerance or DEFAULT_TOLERANCE
    a = as_matrix(a)
    r, c = a.shape
    u, s, vh = np.linalg.svd(a)
    if s.size and s[0] > 1.0 + 1e-10:
        raise NormError(f"block_encode needs ||A|| <= 1, got {s[0]:.6f}", norm=float(s[0]))
    s = np.clip(s, 0.0, 1.0)
    root = np.sqrt(1.0 - s**2)
    k = s.size
    # sqrt(I - A A†) = U diag(root, 1...) U† ; sqrt(I - A†A) = V diag(root, 1...) V†
    left_diag = np.ones(r)
    left_diag[:k] = root
    right_diag = np.ones(c)
    right_diag[:k] = root
    top_right = (u * left_diag) @ u.conj().T
    bottom_left = (vh.conj().T * right_diag) @ vh
    dim = r + c
    out = np.zeros((dim, dim), dtype=complex)
    out[:r, :c] = a
    out[:r, c:] = top_right
    out[r:, :c] = bottom_left
    out[r:, c:] = -a.conj().T
    enc = BlockEncoding(
        out,
        np.eye(dim, r, dtype=complex),
        np.eye(dim, c, dtype=complex),
    )
    enc.validate(tol)
    return enc


def conjugate_encoding(be: BlockEncoding, bl: np.ndarray, br: np.ndarray) -> BlockEncoding:
    """Rotate an encoding into new bases: u -> bl u br†, isometries likewise.

    The encoded block is unchanged; this realizes the general-basis setting
    from a computational-basis one.
    """
    return BlockEncoding(bl @ be.u @ br.conj().T, bl @ be.bl1, br @ be.br1)


def _phase_reflection(phi: float, projector: np.ndarray) -> np.ndarray:
    """exp(i phi (2 P - I)) = e^{-i phi} I + (e^{i phi} - e^{-i phi}) P."""
    dim = projector.shape[0]
    return np.exp(-1j * phi) * np.eye(dim) + (np.exp(1j * phi) - np.exp(-1j * phi)) * projector


def phased_alternating(be: BlockEncoding, phi) -> np.ndarray:
    """The phased alternating sequence U_Phi for n+1 phases.

    Odd n:  e^{i phi_0 (2PL-I)} U e^{i phi_1 (2PR-I)}
            prod_j U† e^{i phi_2j (2PL-I)} U e^{i phi_2j+1 (2PR-I)};
    even n: e^{i phi_0 (2PR-I)} prod_j U† e^{i phi_2j-1 (2PL-I)} U e^{i phi_2j (2PR-I)}.
    """
    phases = np.asarray(phi, dtype=float).reshape(-1)
    if phases.size < 1:
        raise ValidationError("need at least one phase")
    n = phases.size - 1
    pl = be.pi_left
    pr = be.pi_right
    u = be.u
    ud = u.conj().T
    if n % 2 == 1:
        out = _phase_reflection(phases[0], pl) @ u @ _phase_reflection(phases[1], pr)
        for j in range(1, (n - 1) // 2 + 1):
            out = (
                out
                @ ud
                @ _phase_reflection(phases[2 * j], pl)
                @ u
                @ _phase_reflection(phases[2 * j + 1], pr)
            )
    else:
        out = _phase_reflection(phases[0], pr)
        for j in range(1, n // 2 + 1):
            out = (
                out
                @ ud
                @ _phase_reflection(phases[2 * j - 1], pl)
                @ u
                @ _phase_reflection(phases[2 * j], pr)
            )
    return out


def sv_transform(a, f, parity: str) -> np.ndarray:
    """Apply f to the singular values of A.

    Odd parity: sum f(sigma_i) u_i v_i† over i <= min(r, c).
    Even parity: sum over all c right singular directions of f(sigma_i) v_i v_i†,
    where sigma_i = 0 beyond min(r, c).
    """
    a = as_matrix(a)
    if parity not in (EVEN, ODD):
        raise ValidationError("parity must be 'even' or 'odd'")
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    r, c = a.shape
    k = s.size
    if parity == ODD:
        fs = np.array([f(x) for x in s], dtype=complex)
        return (u[:, :k] * fs) @ vh[:k, :]
    sigma_full = np.zeros(c)
    sigma_full[:k] = s
    fs = np.array([f(x) for x in sigma_full], dtype=complex)
    return (vh.conj().T * fs) @ vh


@dataclass(frozen=True)
class QsvtReport:
    """Outcome of a lifting-theorem verification."""

    residual: float
    parity: str
    degree: int
    unitarity_defect: float


def _poly_callable(pair: QspPair):
    coeffs = pair.p.coeffs

    def p(x):
        return np.polynomial.polynomial.polyval(x, coeffs) if coeffs.size else 0.0

    return p


def verify_qsvt(be: BlockEncoding, phi, tolerance: Tolerance | None = None) -> QsvtReport:
    """Measure || Pi U_Phi Pi' - embedded p^(SV)(A) ||_max.

    For odd degree the projectors are (PL, PR); for even degree (PR, PR).
    The residual is returned as data, not thresholded.
    """
    tol = tolerance or DEFAULT_TOLERANCE
    be.validate(tol)
    phases = np.asarray(phi, dtype=float).reshape(-1)
    n = phases.size - 1
    pair = qsp_polynomials(phases)
    p = _poly_callable(pair)
    u_phi = phased_alternating(be, phases)
    defect = unitarity_defect(u_phi)
    a_big = be.pi_left @ be.u @ be.pi_right
    if n % 2 == 1:
        lhs = be.pi_left @ u_phi @ be.pi_right
        rhs = sv_transform(a_big, p, ODD)
    else:
        lhs = be.pi_right @ u_phi @ be.pi_right
        rhs = be.pi_right @ sv_transform(a_big, p, EVEN) @ be.pi_right
    residual = float(np.max(np.abs(lhs - rhs)))
    return QsvtReport(residual, ODD if n % 2 else EVEN, n, defect)


def real_part_encoding(be: BlockEncoding, phi) -> np.ndarray:
    """(H ⊗ I)(|0><0| ⊗ U_Phi + |1><1| ⊗ U_{-Phi})(H ⊗ I).

    The top-left d x d block is the average of U_Phi and U_{-Phi}; projected
    onto the encoding corner it realizes Re(p)^(SV)(A).
    """
    phases = np.asarray(phi, dtype=float).reshape(-1)
    u_plus = phased_alternating(be, phases)
    u_minus = phased_alternating(be, -phases)
    d = be.dim
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    avg = 0.5 * (u_plus + u_minus)
    diff = 0.5 * (u_plus - u_minus)
    out[:d, :d] = avg
    out[:d, d:] = diff
    out[d:, :d] = diff
    out[d:, d:] = avg
    return out


def real_part_block(be: BlockEncoding, phi) -> np.ndarray:
    """The encoded corner of real_part_encoding: bl1†/br1† projections applied
    to its top-left block (right projectors on both sides for even degree)."""
    phases = np.asarray(phi, dtype=float).reshape(-1)
    n = phases.size - 1
    top = real_part_encoding(be, phases)[: be.dim, : be.dim]
    if n % 2 == 1:
        return be.bl1.conj().T @ top @ be.br1
    return be.br1.conj().T @ top @ be.br1
