"""Cosine-Sine decomposition of partitioned unitaries, principal angles, and
the two-projection block decomposition.

The construction follows the constructive existence proof: an SVD of the
top-left block ordered as (zeros, rising cosines, ones), QR factorizations
of the two off-diagonal blocks with nonnegative diagonals, and a final
rotation absorbing the trailing unitary of the bottom-right block into W2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Tolerance
from .errors import ValidationError
from .numerics import (
    DEFAULT_TOLERANCE,
    as_matrix,
    check_unitary,
    qr_positive_diag,
    svd,
    unitarity_defect,
)


@dataclass(frozen=True)
class CSStructure:
    """Classification of the top-left block's singular values.

    n_zero / n_mid / n_one count singular values snapped to 0, kept strictly
    inside (0, 1), and snapped to 1.  cos_values are ascending; sin_values are
    the matching sqrt(1 - c^2).
    """

    n_zero: int
    n_mid: int
    n_one: int
    cos_values: np.ndarray
    sin_values: np.ndarray

    @property
    def rank_counts(self):
        return self.n_zero, self.n_mid, self.n_one


@dataclass(frozen=True)
class CSDecomposition:
    """Factors blockdiag(v1,v2)† U blockdiag(w1,w2) = d with d in canonical form."""

    v1: np.ndarray
    v2: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    d: np.ndarray
    structure: CSStructure
    r1: int
    c1: int

    @property
    def v(self) -> np.ndarray:
        return _blockdiag(self.v1, self.v2)

    @property
    def w(self) -> np.ndarray:
        return _blockdiag(self.w1, self.w2)

    def reconstruction_residual(self, u: np.ndarray) -> float:
        """max |V† U W - D|; the decomposition's own quality measure."""
        return float(np.max(np.abs(self.v.conj().T @ u @ self.w - self.d)))


@dataclass(frozen=True)
class JordanBlocks:
    """Unitary basis and 1/2-element index sets making two projections
    simultaneously block diagonal."""

    basis: np.ndarray
    partition: tuple

    def conjugated(self, p: np.ndarray) -> np.ndarray:
        return self.basis.conj().T @ p @ self.basis

    def block_residual(self, p: np.ndarray) -> float:
        """Residual of block-diagonality of basis† P basis w.r.t. the partition."""
        m = self.conjugated(p)
        mask = np.zeros(m.shape, dtype=bool)
        for block in self.partition:
            idx = np.array(block)
            mask[np.ix_(idx, idx)] = True
        off = np.where(mask, 0.0, np.abs(m))
        return float(np.max(off)) if off.size else 0.0


def _blockdiag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def _classified_corner_svd(u11: np.ndarray, tol: Tolerance):
    """Full SVD of the corner block reordered to the canonical (0, C, 1) layout.

    Returns (v1, w1, sigma_ascending, structure).  Null-space columns padding a
    rectangular block are placed first so the diagonal lands where the
    canonical form wants it.
    """
    r1, c1 = u11.shape
    m1 = min(r1, c1)
    if m1 == 0:
        v1 = np.eye(r1, dtype=complex)
        w1 = np.eye(c1, dtype=complex)
        empty = np.zeros(0)
        return v1, w1, empty, CSStructure(0, 0, 0, empty, empty)
    uu, s, w = svd(u11, tol)
    s = np.clip(s, 0.0, 1.0)
    asc = np.arange(m1)[::-1]
    v1 = np.concatenate([uu[:, m1:], uu[:, asc]], axis=1)
    w1 = np.concatenate([w[:, m1:], w[:, asc]], axis=1)
    sigma = s[asc]
    n_one = int(np.sum(sigma >= 1.0 - tol.sv_cluster_tol))
    n_zero = int(np.sum(sigma <= tol.sv_cluster_tol))
    n_mid = m1 - n_one - n_zero
    cos_values = sigma[n_zero : n_zero + n_mid].copy()
    sin_values = np.sqrt(np.clip(1.0 - cos_values**2, 0.0, None))
    return v1, w1, sigma, CSStructure(n_zero, n_mid, n_one, cos_values, sin_values)


def structure_matrix(structure: CSStructure, r1: int, c1: int, dim: int) -> np.ndarray:
    """The canonical D for given block sizes: diagonal (0, C, I | I, S, 0 //
    I, S, 0 | 0, -C, -I) blocks."""
    n_mid, n_one = structure.n_mid, structure.n_one
    a = r1 - n_mid - n_one
    b = c1 - n_mid - n_one
    if a < 0 or b < 0:
        raise ValidationError("structure counts inconsistent with block sizes")
    d = np.zeros((dim, dim))
    cos_v, sin_v = structure.cos_values, structure.sin_values
    for i in range(n_mid):
        d[a + i, b + i] = cos_v[i]
    for i in range(n_one):
        d[a + n_mid + i, b + n_mid + i] = 1.0
    for i in range(a):  # D12 identity block
        d[i, c1 + i] = 1.0
    for i in range(n_mid):
        d[a + i, c1 + a + i] = sin_v[i]
    for i in range(b):  # D21 identity block
        d[r1 + i, i] = 1.0
    for i in range(n_mid):
        d[r1 + b + i, b + i] = sin_v[i]
    for i in range(n_mid):  # D22: -C then -I
        d[r1 + b + i, c1 + a + i] = -cos_v[i]
    n_negone = dim - r1 - c1 + n_one
    for i in range(n_negone):
        d[r1 + b + n_mid + i, c1 + a + n_mid + i] = -1.0
    return d


def cs_decompose(u, r1: int, c1: int, tolerance: Tolerance | None = None) -> CSDecomposition:
    """CS decomposition of a unitary partitioned into an (r1, c1) corner.

    The returned ``d`` is the canonical structured matrix; its distance to
    V† U W is the reconstruction residual a caller should check against
    ``tolerance.residual_tol``.
    """
    tol = tolerance or DEFAULT_TOLERANCE
    u = as_matrix(u)
    dim = u.shape[0]
    if u.shape[0] != u.shape[1]:
        raise ValidationError("cs_decompose needs a square matrix")
    if not (0 <= r1 <= dim and 0 <= c1 <= dim):
        raise ValidationError(f"split ({r1}, {c1}) out of range for dimension {dim}")
    check_unitary(u, tol.unitarity_tol, "input")

    u11 = u[:r1, :c1]
    u12 = u[:r1, c1:]
    u21 = u[r1:, :c1]
    u22 = u[r1:, c1:]

    v1, w1, _, structure = _classified_corner_svd(u11, tol)
    v2, _ = qr_positive_diag(u21 @ w1, complete=True)
    w2, _ = qr_positive_diag(u12.conj().T @ v1, complete=True)

    r2, c2 = dim - r1, dim - c1
    n_negone = dim - r1 - c1 + structure.n_one
    if n_negone > 0:
        d22 = v2.conj().T @ u22 @ w2
        trailing = d22[r2 - n_negone :, c2 - n_negone :]
        # unitarize the trailing block before absorbing it, so w2 stays unitary
        pu, _, pw = np.linalg.svd(trailing)
        rot = np.eye(c2, dtype=complex)
        rot[c2 - n_negone :, c2 - n_negone :] = -(pu @ pw).conj().T
        w2 = w2 @ rot

    d = structure_matrix(structure, r1, c1, dim)
    return CSDecomposition(v1, v2, w1, w2, d, structure, r1, c1)


def principal_angles(x, y, tolerance: Tolerance | None = None) -> np.ndarray:
    """Angles between the column spans: arccos of the singular values of X†Y.

    Singular values are clamped into [0, 1]; the result is ascending, length
    min(cols X, cols Y).
    """
    tol = tolerance or DEFAULT_TOLERANCE
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise ValidationError("X and Y must have the same row count")
    for name, m in (("X", x), ("Y", y)):
        defect = unitarity_defect(m)
        if defect > tol.unitarity_tol:
            raise ValidationError(
                f"{name} does not have orthonormal columns (defect {defect:.3e})",
                residual=defect,
            )
    if min(x.shape[1], y.shape[1]) == 0:
        return np.zeros(0)
    _, sigma, _ = svd(x.conj().T @ y, tol)
    sigma = np.clip(sigma, 0.0, 1.0)
    return np.sort(np.arccos(sigma))


def _projection_range(p: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Orthonormal basis of the range of an orthogonal projection."""
    defect = float(np.max(np.abs(p @ p - p))) if p.size else 0.0
    herm = float(np.max(np.abs(p - p.conj().T))) if p.size else 0.0
    if max(defect, herm) > tol.residual_tol * max(1.0, float(np.max(np.abs(p))) if p.size else 1.0):
        raise ValidationError(
            f"input is not an orthogonal projection (idempotency defect {defect:.3e}, "
            f"hermiticity defect {herm:.3e})",
            residual=max(defect, herm),
        )
    vals, vecs = np.linalg.eigh((p + p.conj().T) / 2)
    keep = vals > 0.5
    return vecs[:, keep]


def jordan_decompose(px, py, tolerance: Tolerance | None = None) -> JordanBlocks:
    """Joint block-diagonalization of two orthogonal projections.

    Pairs each strictly-interior principal direction of the two ranges into a
    2-dimensional invariant subspace; directions with cosine snapped to 1 or 0
    are pulled out as singletons, as is everything orthogonal to both ranges.
    """
    tol = tolerance or DEFAULT_TOLERANCE
    px = as_matrix(px)
    py = as_matrix(py)
    if px.shape != py.shape or px.shape[0] != px.shape[1]:
        raise ValidationError("projections must be square and of equal shape")
    dim = px.shape[0]
    x = _projection_range(px, tol)
    y = _projection_range(py, tol)
    dx, dy = x.shape[1], y.shape[1]
    if dx < dy:
        # the construction is symmetric in the two projections
        x, y, dx, dy = y, x, dy, dx

    if dy:
        uu, s, w = svd(x.conj().T @ y, tol)
        s = np.clip(s, 0.0, 1.0)
        asc = np.arange(dy)[::-1]
        xv = x @ np.concatenate([uu[:, dy:], uu[:, asc]], axis=1)
        yw = y @ w[:, asc]
        sigma = s[asc]
    else:
        xv = x
        yw = y
        sigma = np.zeros(0)
    n_one = int(np.sum(sigma >= 1.0 - tol.sv_cluster_tol))
    n_zero_sv = int(np.sum(sigma <= tol.sv_cluster_tol))
    n_mid = dy - n_one - n_zero_sv
    a = dx - n_mid - n_one  # x-columns unmatched by y (zero rows + padding)
    b = n_zero_sv  # y-columns orthogonal to span(x)

    columns = []
    partition = []

    def add_single(vec):
        partition.append((len(columns),))
        columns.append(vec)

    for i in range(a):
        add_single(xv[:, i])
    for i in range(b):
        add_single(yw[:, i])
    for k in range(n_mid):
        xk = xv[:, a + k]
        yk = yw[:, b + k]
        u2 = yk - (xk.conj() @ yk) * xk
        u2 /= np.linalg.norm(u2)
        partition.append((len(columns), len(columns) + 1))
        columns.append(xk)
        columns.append(u2)
    for k in range(n_one):
        add_single(xv[:, a + n_mid + k])

    used = np.column_stack(columns) if columns else np.zeros((dim, 0), dtype=complex)
    n_left = dim - used.shape[1]
    if n_left > 0:
        proj = np.eye(dim, dtype=complex) - used @ used.conj().T
        vals, vecs = np.linalg.eigh(proj)
        comp = vecs[:, np.argsort(vals)[::-1][:n_left]]
        for i in range(n_left):
            add_single(comp[:, i])
        used = np.column_stack(columns)

    check_unitary(used, 1e-8, "jordan basis")
    return JordanBlocks(used, tuple(partition))
