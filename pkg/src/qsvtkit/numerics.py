"""Dense complex linear algebra and special functions used by every other module.

Matrices are plain complex128 ndarrays (row-major); the JSON interchange
format lives in :mod:`qsvtkit.serialize`.  Decompositions are backed by
LAPACK through numpy and post-processed to the sign/order conventions the
CS decomposition construction needs.
"""

from __future__ import annotations

import numpy as np
import scipy.special

from .config import Tolerance
from .errors import ConvergenceError, DomainError, OverflowRegimeError, ValidationError

DEFAULT_TOLERANCE = Tolerance()

#: erf_complex validity window for the imaginary part.
ERF_IMAG_WINDOW = 50.0

#: bessel_i argument limits.
BESSEL_MAX_ORDER = 10_000
BESSEL_MAX_ARG = 10_000.0


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array and reject non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a matrix, got ndim={m.ndim}")
    if m.size and not np.isfinite(m).all():
        raise ValidationError("matrix contains NaN or Inf entries")
    return m


def unitarity_defect(u: np.ndarray) -> float:
    """max |U†U - I|, the measure every unitarity check reports."""
    u = np.asarray(u)
    n = u.shape[1]
    if n == 0:
        return 0.0
    return float(np.max(np.abs(u.conj().T @ u - np.eye(n))))


def check_unitary(u: np.ndarray, tol: float, what: str = "matrix") -> None:
    defect = unitarity_defect(u)
    if defect > tol:
        raise ValidationError(
            f"{what} is not unitary: max|U†U - I| = {defect:.3e} > {tol:.3e}",
            residual=defect,
        )


def svd(a, tolerance: Tolerance | None = None):
    """SVD ``A = V diag(sigma) W†`` with square V, W and descending sigma.

    Returns ``(v, sigma, w)`` where ``w`` is the right-factor itself (not its
    adjoint).  The reconstruction residual is checked against
    ``tolerance.residual_tol`` relative to ``||A||_F``.
    """
    tol = tolerance or DEFAULT_TOLERANCE
    a = as_matrix(a)
    try:
        v, sigma, wh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    w = wh.conj().T
    norm = np.linalg.norm(a)
    if norm > 0:
        k = sigma.size
        resid = np.linalg.norm(a - (v[:, :k] * sigma) @ w[:, :k].conj().T) / norm
        if resid > tol.residual_tol:
            raise ConvergenceError(
                f"SVD reconstruction residual {resid:.3e} exceeds {tol.residual_tol:.3e}",
                residual=float(resid),
            )
    return v, sigma, w


def qr_positive_diag(a, complete: bool = False):
    """QR factorization with real nonnegative entries on the diagonal of R.

    Column phases of Q absorb the signs, so ``A = QR`` is preserved.  With
    ``complete=True`` Q is square (its extra columns span the cokernel).
    """
    a = as_matrix(a)
    if not complete and a.shape[0] < a.shape[1]:
        raise ValidationError("qr_positive_diag requires rows >= cols in reduced mode")
    q, r = np.linalg.qr(a, mode="complete" if complete else "reduced")
    q = q.astype(complex, copy=True)
    r = r.astype(complex, copy=True)
    k = min(a.shape)
    d = np.diag(r)[:k]
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    q[:, :k] *= phases
    r[:k, :] *= np.conj(phases)[:, None]
    # snap the now real-positive diagonal exactly onto the real axis
    idx = np.arange(k)
    r[idx, idx] = r[idx, idx].real
    return q, r


def erf_complex(z):
    """Error function for complex arguments, |Im z| <= 50.

    Accepts scalars or arrays; evaluation is delegated to scipy's Faddeeva
    backend, the validity window guards the regime we have verified against
    the quadrature oracle.
    """
    z = np.asarray(z, dtype=complex)
    if z.size and float(np.max(np.abs(z.imag))) > ERF_IMAG_WINDOW:
        raise DomainError(f"erf_complex requires |Im z| <= {ERF_IMAG_WINDOW}")
    out = scipy.special.erf(z)
    if z.ndim == 0:
        return complex(out)
    return out


def bessel_i(n: int, t: float) -> float:
    """Modified Bessel function of the first kind I_n(t).

    These are (half) the Chebyshev coefficients of exp(t x).  Raises
    OverflowRegimeError when the value exceeds double range; the scaled value
    exp(-|t|) I_n(t) is attached for callers that can work in that form.
    """
    if n < 0 or n != int(n):
        raise DomainError("order n must be a nonnegative integer")
    if n > BESSEL_MAX_ORDER or abs(t) > BESSEL_MAX_ARG:
        raise DomainError(
            f"bessel_i supports n <= {BESSEL_MAX_ORDER} and |t| <= {BESSEL_MAX_ARG}"
        )
    val = scipy.special.iv(n, t)
    if not np.isfinite(val):
        scaled = float(scipy.special.ive(n, t))
        raise OverflowRegimeError(
            f"I_{n}({t}) exceeds double range; scaled value exp(-|t|) I_n = {scaled:.6e}",
            scaled=scaled,
        )
    return float(val)


def bessel_i_sequence(n_max: int, t: float) -> np.ndarray:
    """I_0(t) .. I_{n_max}(t) in one vectorized call (same checks as bessel_i)."""
    if n_max > BESSEL_MAX_ORDER or abs(t) > BESSEL_MAX_ARG:
        raise DomainError("order or argument outside supported range")
    vals = scipy.special.iv(np.arange(n_max + 1), t)
    if not np.isfinite(vals).all():
        raise OverflowRegimeError(f"I_n({t}) exceeds double range for some n <= {n_max}")
    return vals


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary: QR of a complex Gaussian with phase fixing."""
    if dim == 0:
        return np.zeros((0, 0), dtype=complex)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Random matrix with orthonormal columns (cols <= rows)."""
    if cols > rows:
        raise ValidationError("isometry needs cols <= rows")
    return random_unitary(rows, rng)[:, :cols]
