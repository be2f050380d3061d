"""Quantum signal processing: circuit evaluation, the polynomial recurrence,
phase-factor synthesis by layer stripping, and real-pair completion.

Convention: the reflection form.  A length-(n+1) phase vector defines

    circuit(phi, x) = e^{i phi_0 Z} prod_{j=1..n} R(x) e^{i phi_j Z},
    R(x) = [[x, sqrt(1-x^2)], [sqrt(1-x^2), -x]],

whose corner entries are p(x) and q(x) sqrt(1-x^2) for a polynomial pair of
opposite parities with |p|^2 + (1-x^2)|q|^2 = 1.

Layer stripping divides out one layer at a time using the leading
coefficients.  That step is exponentially ill-conditioned in the degree for
coefficients carried in double precision, so both the recurrence and the
stripping run in gmpy2 multiprecision (~192 + 6*degree bits); pairs produced
here carry their extended-precision coefficients along, which is what makes
synthesis round-trips work at degree 64 and beyond.  Pairs built from plain
double inputs are lifted as-is and synthesis accuracy then decays with the
degree; the reported residual tells the caller what was achieved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np
from gmpy2 import mpc

from .chebyshev import EVEN, NONE, ODD, monomial_to_cheb, parity_of, trim_trailing
from .errors import DomainError, NotAchievableError, NotCompletableError, ValidationError

MAX_SYNTHESIS_DEGREE = 512

#: extended-precision bits used for a degree-n pair
def _precision(n: int) -> int:
    return 192 + 6 * max(n, 1)


def _to_exact(coeffs: np.ndarray, prec: int) -> tuple:
    with gmpy2.context(precision=prec):
        return tuple(mpc(c) for c in coeffs)


def _round_exact(exact) -> np.ndarray:
    if not exact:
        return np.zeros(0, dtype=complex)
    return np.array([complex(c) for c in exact], dtype=complex)


@dataclass(eq=False)
class ComplexPolynomial:
    """Polynomial with monomial coefficients (ascending) and a declared parity.

    The zero polynomial is the empty coefficient vector (degree -1).  An
    extended-precision image of the coefficients may ride along in ``exact``
    (consulted by synthesis when present), and ``cheb`` caches the correctly
    rounded Chebyshev-basis image.  Monomial coefficients of high-degree
    bounded polynomials are scale-mixed, so consumers needing coefficientwise
    accuracy should work through cheb_coeffs().
    """

    coeffs: np.ndarray
    parity: str = NONE
    exact: tuple | None = field(default=None, repr=False)
    cheb: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        self.coeffs = trim_trailing(self.coeffs) if self.coeffs.size else self.coeffs
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            self.coeffs = self.coeffs[:0]
        if self.parity == NONE:
            self.parity = parity_of(self.coeffs)
        elif self.coeffs.size and np.max(np.abs(self.coeffs)) > 0:
            detected = parity_of(self.coeffs)
            if detected != self.parity and detected != NONE:
                raise ValidationError(
                    f"declared parity {self.parity} does not match support ({detected})"
                )
            if detected == NONE:
                raise ValidationError("coefficients have mixed parity support")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        if self.coeffs.size == 0:
            return np.zeros_like(np.asarray(x, dtype=complex))
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=complex), self.coeffs)

    def conjugate(self) -> "ComplexPolynomial":
        return ComplexPolynomial(np.conj(self.coeffs), self.parity)

    def cheb_coeffs(self) -> np.ndarray:
        if self.cheb is not None:
            return self.cheb
        if self.coeffs.size == 0:
            return np.zeros(1, dtype=complex)
        return monomial_to_cheb(self.coeffs)


@dataclass(eq=False)
class QspPair:
    """The (p, q) corner polynomials of a signal-processing circuit."""

    p: ComplexPolynomial
    q: ComplexPolynomial

    def degree(self) -> int:
        return self.p.degree


@dataclass(frozen=True)
class AchievabilityReport:
    ok: bool
    residual: float
    degree_ok: bool
    parity_ok: bool


def _as_phases(phi) -> np.ndarray:
    phases = np.asarray(phi, dtype=float).reshape(-1)
    if phases.size < 1:
        raise ValidationError("a phase sequence needs at least one phase")
    if not np.isfinite(phases).all():
        raise ValidationError("phases must be finite")
    return phases


def qsp_eval(phi, x: float) -> np.ndarray:
    """The 2x2 circuit unitary at a point x in [-1, 1]."""
    phases = _as_phases(phi)
    if abs(x) > 1:
        raise DomainError(f"qsp_eval needs |x| <= 1, got {x}")
    s = math.sqrt(max(0.0, 1.0 - x * x))
    refl = np.array([[x, s], [s, -x]], dtype=complex)
    out = np.diag([np.exp(1j * phases[0]), np.exp(-1j * phases[0])])
    for ph in phases[1:]:
        out = out @ refl @ np.diag([np.exp(1j * ph), np.exp(-1j * ph)])
    return out


def _recurrence_up(phases: np.ndarray, prec: int):
    """Run the layer recurrence to exact (P, Q) monomial coefficient lists.

    p_n = e^{i phi_n}, q_n = 0, then
    p_k = e^{i phi_k} (x p_{k+1} + (1 - x^2) q_{k+1}),
    q_k = e^{-i phi_k} (p_{k+1} - x q_{k+1}).
    """
    n = len(phases) - 1
    with gmpy2.context(precision=prec):
        p = [gmpy2.exp(mpc(0, 1) * mpc(phases[n]))]
        q: list = []
        for k in range(n - 1, -1, -1):
            deg = len(p) - 1
            e = gmpy2.exp(mpc(0, 1) * mpc(phases[k]))
            pn = [mpc(0)] * (deg + 2)
            for i, c in enumerate(p):
                pn[i + 1] = c
            for i, c in enumerate(q):
                pn[i] += c
                pn[i + 2] -= c
            pn = [e * c for c in pn]
            qn = [mpc(0)] * (deg + 1)
            for i, c in enumerate(p):
                qn[i] = c
            for i, c in enumerate(q):
                qn[i + 1] -= c
            qn = [c / e for c in qn]
            p, q = pn, qn
    return p, q


def _exact_mono_to_cheb(exact: list, prec: int) -> np.ndarray:
    """Rounded Chebyshev coefficients of an exact monomial coefficient list."""
    n = len(exact) - 1
    if n < 0:
        return np.zeros(1, dtype=complex)
    with gmpy2.context(precision=prec):
        acc = [mpc(0)] * (n + 1)
        for j, cj in enumerate(exact):
            if cj == 0:
                continue
            scale = gmpy2.mpfr(2) ** (1 - j)
            for m in range(j // 2 + 1):
                k = j - 2 * m
                w = scale * gmpy2.bincoef(j, m)
                if k == 0:
                    w /= 2
                acc[k] += cj * w
        return np.array([complex(v) for v in acc])


def qsp_polynomials(phi) -> QspPair:
    """The polynomial pair computed by a phase sequence.

    Runs in extended precision; the returned pair carries its exact
    coefficients so a later synthesis round-trips, plus correctly rounded
    Chebyshev-basis images for scale-free comparisons.
    """
    phases = _as_phases(phi)
    n = phases.size - 1
    prec = _precision(n)
    p_exact, q_exact = _recurrence_up(phases, prec)
    p = ComplexPolynomial(
        _round_exact(p_exact),
        ODD if n % 2 else EVEN,
        exact=tuple(p_exact),
        cheb=_exact_mono_to_cheb(p_exact, prec),
    )
    q_parity = EVEN if n % 2 else ODD
    q = ComplexPolynomial(
        _round_exact(q_exact),
        q_parity,
        exact=tuple(q_exact),
        cheb=_exact_mono_to_cheb(q_exact, prec) if q_exact else None,
    )
    return QspPair(p, q)


def _constraint_residual_coeffs(p: ComplexPolynomial, q: ComplexPolynomial) -> np.ndarray:
    """Coefficients of |p|^2 + (1 - x^2)|q|^2 - 1 (real polynomial in x).

    Monomial arithmetic below degree 24 (exact regime); above that the
    products are formed in the Chebyshev basis, whose O(1) coefficients keep
    the computation stable where monomial coefficients would overflow the
    significand.
    """
    pc = p.coeffs
    qc = q.coeffs
    poly = np.polynomial.polynomial
    if max(p.degree, 0) <= 24:
        out = np.zeros(1, dtype=complex)
        if pc.size:
            out = poly.polymul(pc, np.conj(pc))
        if qc.size:
            qq = poly.polymul(qc, np.conj(qc))
            out = poly.polyadd(out, poly.polysub(qq, poly.polymul([0, 0, 1], qq)))
        out = poly.polysub(out, [1.0])
        return np.atleast_1d(out)
    cheb = np.polynomial.chebyshev
    one_minus_x2 = np.array([0.5, 0.0, -0.5])
    out = cheb.chebmul(p.cheb_coeffs(), np.conj(p.cheb_coeffs()))
    if qc.size:
        qq = cheb.chebmul(q.cheb_coeffs(), np.conj(q.cheb_coeffs()))
        out = cheb.chebadd(out, cheb.chebmul(one_minus_x2, qq))
    out = cheb.chebsub(out, [1.0])
    return np.atleast_1d(out)


def achievable_check(pair: QspPair) -> AchievabilityReport:
    """Test the three achievability conditions; residual is the max coefficient
    of |p|^2 + (1-x^2)|q|^2 - 1."""
    p, q = pair.p, pair.q
    degree_ok = q.degree <= p.degree - 1 or (q.degree == -1 and p.degree >= 0)
    parity_ok = (
        p.degree >= 0
        and p.parity in (EVEN, ODD)
        and (q.degree == -1 or {p.parity, q.parity} == {EVEN, ODD})
    )
    residual = float(np.max(np.abs(_constraint_residual_coeffs(p, q))))
    ok = bool(degree_ok and parity_ok and residual <= 1e-10)
    return AchievabilityReport(ok, residual, bool(degree_ok), bool(parity_ok))


def _strip_layers(p_exact: list, q_exact: list, prec: int):
    """Layer stripping at fixed precision.  Returns (phases, max dropped top)."""
    with gmpy2.context(precision=prec):
        p = [mpc(c) for c in p_exact]
        q = [mpc(c) for c in q_exact]
        n = len(p) - 1
        phases = np.empty(n + 1)
        max_drop = 0.0
        for step in range(n):
            deg = len(p) - 1
            a, b = p[deg], q[deg - 1]
            if b == 0 or a == 0:
                ph = gmpy2.mpfr(0)
            else:
                ph = gmpy2.phase(a / b) / 2
            phases[step] = float(ph)
            e = gmpy2.exp(mpc(0, ph))
            einv = 1 / e
            pd = [mpc(0)] * (deg + 2)
            for i, c in enumerate(p):
                pd[i + 1] = einv * c
            for i, c in enumerate(q):
                ec = e * c
                pd[i] += ec
                pd[i + 2] -= ec
            qd = [mpc(0)] * (deg + 1)
            for i, c in enumerate(p):
                qd[i] = einv * c
            for i, c in enumerate(q):
                qd[i + 1] -= e * c
            max_drop = max(max_drop, float(abs(pd[deg + 1])), float(abs(qd[deg])))
            p = pd[:deg]
            q = qd[: max(deg - 1, 0)]
        phases[n] = float(gmpy2.phase(p[0]))
        return phases, max_drop


def _pair_exact(pair: QspPair, prec: int):
    p_exact = pair.p.exact if pair.p.exact is not None else _to_exact(pair.p.coeffs, prec)
    if pair.q.exact is not None:
        q_exact = pair.q.exact
    else:
        q_exact = _to_exact(pair.q.coeffs, prec)
    p_list, q_list = list(p_exact), list(q_exact)
    # the strip indexes q up to deg(p) - 1; pad defensively
    while len(q_list) < len(p_list) - 1:
        q_list.append(mpc(0))
    return p_list, q_list


def synthesize_phases(pair: QspPair, tol: float = 1e-8) -> np.ndarray:
    """Phase factors implementing an achievable pair, by layer stripping.

    The synthesis is verified by re-running the recurrence; if the
    reconstructed pair misses the input beyond ``tol`` (coefficientwise, in
    the scale-free Chebyshev basis) a NotAchievableError carrying the
    constraint residual is raised.
    """
    report = achievable_check(pair)
    if not (report.degree_ok and report.parity_ok) or report.residual > 1e-6:
        raise NotAchievableError(
            f"pair is not achievable: degree_ok={report.degree_ok} "
            f"parity_ok={report.parity_ok} constraint residual={report.residual:.3e}",
            residual=report.residual,
        )
    n = pair.p.degree
    if n > MAX_SYNTHESIS_DEGREE:
        raise DomainError(f"synthesis capped at degree {MAX_SYNTHESIS_DEGREE}")
    if n == 0:
        return np.array([float(np.angle(pair.p.coeffs[0]))])
    prec = _precision(n)
    p_exact, q_exact = _pair_exact(pair, prec)
    phases, _ = _strip_layers(p_exact, q_exact, prec)

    # verification round-trip in the Chebyshev basis (scale-free comparison)
    rebuilt = qsp_polynomials(phases)
    err = float(np.max(np.abs(rebuilt.p.cheb_coeffs() - pair.p.cheb_coeffs())))
    if pair.q.degree >= 0 and rebuilt.q.degree >= 0:
        err = max(err, float(np.max(np.abs(rebuilt.q.cheb_coeffs() - pair.q.cheb_coeffs()))))
    if err > tol:
        raise NotAchievableError(
            f"synthesis round-trip residual {err:.3e} exceeds {tol:.3e} "
            f"(input constraint residual {report.residual:.3e})",
            residual=err,
        )
    return phases


# ---------------------------------------------------------------------------
# Completion of real pairs


def _cluster_roots(roots: np.ndarray, tol: float):
    """Group companion-matrix roots into the five irreducible classes.

    Returns (n_zero_pairs, interior_pairs, real_pairs, imag_pairs, quads);
    raises NotCompletableError when a real root inside (-1, 1) has odd
    multiplicity within tolerance.
    """
    rts = list(roots)
    zeros = [r for r in rts if abs(r) <= tol]
    if len(zeros) % 2:
        raise NotCompletableError(
            "odd multiplicity at x = 0; pair not completable", point=0.0
        )
    rest = [r for r in rts if abs(r) > tol]
    real = sorted((r for r in rest if abs(r.imag) <= tol * max(1.0, abs(r))), key=lambda r: r.real)
    cplx = [r for r in rest if abs(r.imag) > tol * max(1.0, abs(r))]

    pos_real = [r.real for r in real if r.real > 0]
    neg_real = sorted((-r.real for r in real if r.real < 0))
    if len(pos_real) != len(neg_real):
        raise NotCompletableError("real roots not symmetric under negation")
    interior_pairs = []  # s in (0,1): need even multiplicity -> pairs of (s, -s) pairs
    boundary_pairs = []  # s >= 1
    pos_sorted = sorted(pos_real)
    i = 0
    while i < len(pos_sorted):
        s = pos_sorted[i]
        if s < 1.0 - tol:
            if i + 1 < len(pos_sorted) and abs(pos_sorted[i + 1] - s) <= tol * max(1.0, s):
                interior_pairs.append(0.5 * (s + pos_sorted[i + 1]))
                i += 2
            else:
                raise NotCompletableError(
                    f"real root {s:.6g} inside (-1, 1) has odd multiplicity", point=s
                )
        else:
            boundary_pairs.append(max(s, 1.0))
            i += 1

    imag_pairs = []
    quads = []
    upper = [r for r in cplx if r.imag > 0]
    upper_right = sorted((r for r in upper if r.real > tol * max(1.0, abs(r))), key=lambda r: (r.real, r.imag))
    upper_imag = [r for r in upper if abs(r.real) <= tol * max(1.0, abs(r))]
    for r in upper_imag:
        imag_pairs.append(abs(r.imag))
    for r in upper_right:
        quads.append((r.real, r.imag))
    return len(zeros) // 2, interior_pairs, boundary_pairs, imag_pairs, quads


def _rep_multiply(a1, b1, a2, b2):
    """(A1, B1) * (A2, B2) under P -> A^2 + (1 - x^2) B^2 composition."""
    poly = np.polynomial.polynomial
    one_minus_x2 = np.array([1.0, 0.0, -1.0])
    a = poly.polysub(poly.polymul(a1, a2), poly.polymul(one_minus_x2, poly.polymul(b1, b2)))
    b = poly.polyadd(poly.polymul(a1, b2), poly.polymul(a2, b1))
    return np.atleast_1d(a), np.atleast_1d(b)


def complete_real(p_real, q_real, tol: float = 1e-8) -> QspPair:
    """Complete real polynomials to an achievable complex pair.

    Factors P = 1 - p^2 - (1-x^2) q^2 into the irreducible symmetric classes
    (double zeros, interior double pairs, |s| >= 1 pairs, imaginary pairs,
    complex quadruples), each of which carries an explicit A^2 + (1-x^2) B^2
    representation, and multiplies the representations together.
    """
    poly = np.polynomial.polynomial
    p_c = np.asarray(p_real, dtype=float).reshape(-1)
    q_c = np.asarray(q_real, dtype=float).reshape(-1)
    p_c = trim_trailing(p_c)
    q_c = trim_trailing(q_c)
    if q_c.size == 1 and q_c[0] == 0:
        q_c = q_c[:0]
    if p_c.size == 0:
        raise ValidationError("p must not be the zero polynomial")
    n = p_c.size - 1
    p_parity = parity_of(p_c)
    q_parity = parity_of(q_c) if q_c.size else (EVEN if n % 2 else ODD)
    if p_parity == NONE or q_parity == NONE or (q_c.size and p_parity == q_parity):
        raise NotCompletableError("p and q must have definite, opposite parities")
    if q_c.size - 1 > n - 1:
        raise NotCompletableError("deg q must be at most deg p - 1")

    big_p = poly.polysub([1.0], poly.polymul(p_c, p_c))
    if q_c.size:
        qq = poly.polymul(q_c, q_c)
        big_p = poly.polysub(big_p, poly.polysub(qq, poly.polymul([0, 0, 1], qq)))
    big_p = trim_trailing(np.atleast_1d(big_p), 1e-14)

    # condition (c'): nonnegativity on a Chebyshev grid of size 10 * degree
    grid = np.cos(np.pi * (np.arange(10 * max(n, 1)) + 0.5) / (10 * max(n, 1)))
    vals = poly.polyval(grid, big_p).real
    worst = int(np.argmin(vals))
    if vals[worst] < -tol:
        raise NotCompletableError(
            f"1 - p^2 - (1-x^2) q^2 = {vals[worst]:.3e} < 0 at x = {grid[worst]:.6f}",
            point=float(grid[worst]),
        )

    if big_p.size == 1 or np.max(np.abs(big_p)) <= 1e-14:
        const = max(float(big_p[0].real), 0.0) if big_p.size else 0.0
        a_tot = np.array([math.sqrt(const)])
        b_tot = np.zeros(0)
    else:
        roots = np.roots(big_p[::-1])
        n_zero2, interior, boundary, imag_pairs, quads = _cluster_roots(roots, tol)
        a_tot = np.array([1.0])
        b_tot = np.array([0.0])
        lead_prod = 1.0
        for _ in range(n_zero2):
            a_tot, b_tot = _rep_multiply(a_tot, b_tot, np.array([0.0, 1.0]), np.array([0.0]))
        for s in interior:  # (x^2 - s^2)^2, lead +1
            a_tot, b_tot = _rep_multiply(a_tot, b_tot, np.array([-s * s, 0.0, 1.0]), np.array([0.0]))
        for s in boundary:  # s^2 - x^2, lead -1
            lead_prod *= -1.0
            a_tot, b_tot = _rep_multiply(
                a_tot, b_tot, np.array([0.0, math.sqrt(max(s * s - 1.0, 0.0))]), np.array([s])
            )
        for s in imag_pairs:  # x^2 + s^2, lead +1
            a_tot, b_tot = _rep_multiply(
                a_tot, b_tot, np.array([0.0, math.sqrt(s * s + 1.0)]), np.array([s])
            )
        for s, t in quads:
            c = s * s + t * t + math.sqrt(
                2 * (s * s + 1) * t * t + (s * s - 1) ** 2 + t**4
            )
            a_tot, b_tot = _rep_multiply(
                a_tot,
                b_tot,
                np.array([-(s * s + t * t), 0.0, c]),
                np.array([0.0, math.sqrt(c * c - 1.0)]),
            )
        kappa = float(big_p[-1].real) / lead_prod
        if kappa < 0:
            if kappa < -tol:
                raise NotCompletableError("leading coefficient has the wrong sign")
            kappa = 0.0
        a_tot = np.sqrt(kappa) * a_tot
        b_tot = np.sqrt(kappa) * b_tot

    a_tot = trim_trailing(np.asarray(a_tot, dtype=float), 1e-12)
    b_tot = trim_trailing(np.asarray(b_tot, dtype=float), 1e-12)
    need_flip = (np.any(a_tot) and parity_of(a_tot) != p_parity) or (
        np.any(b_tot) and parity_of(b_tot) != q_parity
    )
    if need_flip:
        # multiply by the unit representation (x, 1), which flips both parities
        a_tot, b_tot = _rep_multiply(a_tot, b_tot, np.array([0.0, 1.0]), np.array([1.0]))
        a_tot = trim_trailing(a_tot, 1e-12)
        b_tot = trim_trailing(b_tot, 1e-12)

    def _snap(coeffs, parity):
        out = np.array(coeffs, dtype=float, copy=True)
        if parity == EVEN:
            out[1::2] = 0.0
        elif parity == ODD:
            out[0::2] = 0.0
        return out

    a_tot = _snap(a_tot, p_parity) if np.any(a_tot) else a_tot
    b_tot = _snap(b_tot, q_parity) if np.any(b_tot) else b_tot

    pad = max(p_c.size, a_tot.size)
    p_full = np.zeros(pad, dtype=complex)
    p_full[: p_c.size] += p_c
    p_full[: a_tot.size] += 1j * a_tot
    qad = max(q_c.size, b_tot.size, 1)
    q_full = np.zeros(qad, dtype=complex)
    q_full[: q_c.size] += q_c
    q_full[: b_tot.size] += 1j * b_tot

    pair = QspPair(
        ComplexPolynomial(p_full, p_parity), ComplexPolynomial(q_full, q_parity)
    )
    report = achievable_check(pair)
    if report.residual > 1e-7:
        raise NotCompletableError(
            f"completion failed: constraint residual {report.residual:.3e}"
        )
    return pair
