"""Chebyshev polynomials: evaluation, series construction, truncation degrees.

Series are held in the Chebyshev basis (coefficients of T_0, T_1, ...);
conversion to the monomial basis goes through exact integer recurrences
accumulated at extended precision, since the naive conversion loses
~2^n precision at degree n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np
import scipy.fft
from numpy.polynomial import chebyshev as npcheb

from .errors import DomainError, EvaluationError, ValidationError

EVEN = "even"
ODD = "odd"
NONE = "none"

#: degree above which basis conversions switch to the exact extended-precision path
_EXACT_CONVERSION_MIN_DEGREE = 24


def parity_of(coeffs, tol: float = 1e-12) -> str:
    """Classify coefficient support as even, odd, or mixed ("none")."""
    c = np.asarray(coeffs)
    if c.size == 0:
        return EVEN
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        return EVEN
    has_even = bool(np.any(np.abs(c[0::2]) > tol * scale))
    has_odd = bool(np.any(np.abs(c[1::2]) > tol * scale))
    if has_even and has_odd:
        return NONE
    return ODD if has_odd else EVEN


def enforce_parity(coeffs: np.ndarray, parity: str) -> np.ndarray:
    """Zero the off-parity slots (used to snap rounding dust exactly)."""
    out = np.array(coeffs, copy=True)
    if parity == EVEN:
        out[1::2] = 0
    elif parity == ODD:
        out[0::2] = 0
    return out


def trim_trailing(coeffs: np.ndarray, tol: float = 0.0) -> np.ndarray:
    c = np.asarray(coeffs)
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    k = c.size
    while k > 1 and abs(c[k - 1]) <= tol * scale:
        k -= 1
    if k == 1 and abs(c[0]) == 0.0 and tol == 0.0 and scale == 0.0:
        return c[:1]
    return c[:k]


def _chebyshev_monomial_rows(n: int) -> list[list[int]]:
    """Exact integer monomial coefficients of T_0 .. T_n."""
    rows = [[1]]
    if n >= 1:
        rows.append([0, 1])
    for k in range(2, n + 1):
        prev, prev2 = rows[k - 1], rows[k - 2]
        row = [0] * (k + 1)
        for j, c in enumerate(prev):
            row[j + 1] += 2 * c
        for j, c in enumerate(prev2):
            row[j] -= c
        rows.append(row)
    return rows


def cheb_to_monomial(coeffs) -> np.ndarray:
    """Chebyshev-basis to monomial-basis coefficients (exact for high degree)."""
    c = np.asarray(coeffs, dtype=complex)
    n = c.size - 1
    if n < _EXACT_CONVERSION_MIN_DEGREE:
        return npcheb.cheb2poly(c).astype(complex)
    rows = _chebyshev_monomial_rows(n)
    with gmpy2.context(precision=256 + 2 * n):
        acc = [gmpy2.mpc(0)] * (n + 1)
        for k, ck in enumerate(c):
            if ck == 0:
                continue
            ckg = gmpy2.mpc(ck)
            for j, t in enumerate(rows[k]):
                if t:
                    acc[j] += ckg * t
        return np.array([complex(v) for v in acc])


def monomial_to_cheb(coeffs) -> np.ndarray:
    """Monomial-basis to Chebyshev-basis coefficients (exact for high degree).

    Uses x^j = 2^(1-j) * sum' C(j, m) T_{j-2m} with exact binomials.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = c.size - 1
    if n < _EXACT_CONVERSION_MIN_DEGREE:
        return npcheb.poly2cheb(c).astype(complex)
    with gmpy2.context(precision=256 + 2 * n):
        acc = [gmpy2.mpc(0)] * (n + 1)
        for j, cj in enumerate(c):
            if cj == 0:
                continue
            cjg = gmpy2.mpc(cj)
            scale = gmpy2.mpfr(2) ** (1 - j)
            for m in range(j // 2 + 1):
                k = j - 2 * m
                w = scale * gmpy2.bincoef(j, m)
                if k == 0:
                    w /= 2
                acc[k] += cjg * w
        return np.array([complex(v) for v in acc])


@dataclass(eq=False)
class ChebyshevSeries:
    """Finite Chebyshev series sum a_k T_k with a declared parity."""

    coeffs: np.ndarray
    parity: str = NONE
    exact: tuple = field(default=None, repr=False)  # optional extended-precision coeffs

    def __post_init__(self):
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if self.parity not in (EVEN, ODD, NONE):
            raise ValidationError(f"unknown parity {self.parity!r}")
        if self.parity != NONE and self.coeffs.size and np.max(np.abs(self.coeffs)) > 0:
            detected = parity_of(self.coeffs)
            if detected != self.parity:
                raise ValidationError(
                    f"declared parity {self.parity} does not match support ({detected})"
                )

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return npcheb.chebval(x, self.coeffs)

    def derivative(self) -> "ChebyshevSeries":
        dcoef = npcheb.chebder(self.coeffs)
        if dcoef.size == 0:
            dcoef = np.zeros(1, dtype=complex)
        flip = {EVEN: ODD, ODD: EVEN, NONE: NONE}[self.parity]
        return ChebyshevSeries(dcoef, flip)

    def to_monomial(self) -> np.ndarray:
        return cheb_to_monomial(self.coeffs)

    @classmethod
    def from_monomial(cls, coeffs, parity: str | None = None) -> "ChebyshevSeries":
        cheb = monomial_to_cheb(coeffs)
        return cls(cheb, parity if parity is not None else parity_of(cheb))

    def trimmed(self, tol: float = 1e-14) -> "ChebyshevSeries":
        return ChebyshevSeries(trim_trailing(self.coeffs, tol), self.parity)


def cheb_eval(n: int, z):
    """T_n at real or complex arguments via the closed power form.

    On the real interval the cosine form is used; elsewhere the
    w = z + sqrt(z^2 - 1) branch with |w| >= 1 keeps the powers stable.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    on_interval = (z.imag == 0) & (np.abs(z.real) <= 1.0)
    if np.any(on_interval):
        out[on_interval] = np.cos(n * np.arccos(z[on_interval].real))
    rest = ~on_interval
    if np.any(rest):
        zz = z[rest]
        s = np.sqrt(zz * zz - 1.0)
        w = np.where(np.abs(zz + s) >= 1.0, zz + s, zz - s)
        out[rest] = 0.5 * (w**n + w ** (-n))
    return complex(out[0]) if scalar else out


def chebyshev_lobatto_nodes(n: int) -> np.ndarray:
    """The n+1 extrema cos(j pi / n), j = 0..n (descending from 1 to -1)."""
    if n == 0:
        return np.array([1.0])
    return np.cos(np.pi * np.arange(n + 1) / n)


def series_from_interpolant(f, n: int) -> ChebyshevSeries:
    """Degree-n interpolant through the n+1 nodes cos(j pi / n).

    Coefficients come from a type-I DCT, O(n log n).  ``f`` is called on the
    whole node array when it supports that, otherwise point by point.
    """
    nodes = chebyshev_lobatto_nodes(n)
    try:
        vals = np.asarray(f(nodes), dtype=complex)
        if vals.shape != nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.asarray([f(x) for x in nodes], dtype=complex)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        raise EvaluationError(
            f"function not finite at node index {bad[0]} (x = {nodes[bad[0]]!r})",
            index=int(bad[0]),
        )
    if n == 0:
        return ChebyshevSeries(vals[:1], parity_of(vals[:1]))
    coeffs = scipy.fft.dct(vals, type=1) / n
    coeffs[0] /= 2
    coeffs[-1] /= 2
    return ChebyshevSeries(coeffs, parity_of(coeffs))


def series_from_quadrature(f, n: int, factor: int = 8) -> ChebyshevSeries:
    """Coefficients a_0..a_n by trapezoidal contour quadrature on |z| = 1.

    Uses factor*(n+1) uniform angles; the trapezoid rule on the circle is
    spectrally accurate for the analytic integrand.
    """
    if factor < 2:
        raise DomainError("quadrature factor must be at least 2")
    n_nodes = factor * (n + 1)
    theta = 2 * np.pi * np.arange(n_nodes) / n_nodes
    vals = np.asarray(f(np.cos(theta)), dtype=complex)
    if not np.isfinite(vals).all():
        raise EvaluationError("function not finite on the quadrature circle")
    hat = np.fft.ifft(vals)
    coeffs = 2.0 * hat[: n + 1]
    coeffs[0] /= 2
    return ChebyshevSeries(coeffs, parity_of(coeffs))


def trefethen_degree(m: float, rho: float, eps: float) -> int:
    """Truncation degree making the ellipse tail bound 2 M rho^-n/(rho-1) <= eps."""
    if m <= 0 or eps <= 0:
        raise DomainError("m and eps must be positive")
    if rho <= 1:
        raise DomainError("rho must exceed 1")
    ratio = 2 * m / ((rho - 1) * eps)
    if ratio <= 1:
        return 0
    return max(0, math.ceil(math.log(ratio) / math.log(rho)))


def solve_r(tau: float, eps: float) -> float:
    """The r >= tau with (tau/r)^r = eps, for eps in (0, 1].

    Newton on g(r) = r log(tau/r) - log eps with a bisection fallback; g is
    strictly decreasing on [tau, inf).
    """
    if not 0 < eps <= 1:
        raise DomainError("solve_r needs eps in (0, 1]")
    if tau <= 0:
        raise DomainError("solve_r needs tau > 0")
    target = math.log(eps)
    if target == 0.0:
        return tau

    def g(r):
        return r * math.log(tau / r) - target

    lo = tau
    hi = max(2 * tau, tau + 2.0)
    while g(hi) > 0:
        hi *= 2
    r = min(hi, tau + max(1.0, -target))
    for _ in range(100):
        gr = g(r)
        if abs(gr) < 1e-13 * max(1.0, abs(target)):
            return r
        slope = math.log(tau / r) - 1.0
        step = r - gr / slope
        if not (lo <= step <= hi):
            if gr > 0:
                lo = r
            else:
                hi = r
            step = 0.5 * (lo + hi)
        r = step
    return r


def exp_truncation_degree(t: float, eps: float) -> int:
    """Truncation degree for exp(t x) on [-1, 1] with uniform error <= eps.

    Three branches: eps >= e^|t| needs the zero polynomial; eps <= 1 solves
    (3|t|/r)^r = eps; in between the Gaussian-tail construction with
    delta = (eps - 1)/5 applies.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    t_abs = abs(t)
    if t_abs == 0.0:
        return 0
    if eps >= math.exp(min(t_abs, 700.0)) and t_abs <= 700.0:
        return 0
    if eps <= 1.0:
        return math.ceil(solve_r(3.0 * t_abs, eps))
    delta = (eps - 1.0) / 5.0
    return math.ceil(math.sqrt(100.0 * t_abs * (t_abs + math.log(5.0 / (eps - 1.0)))))


def carlini_log_bound(n: int, t: float) -> float:
    """log of Carlini's upper bound on |I_n(t)| (safe for extreme arguments)."""
    if t == 0:
        raise DomainError("Carlini bound degenerates at t = 0")
    if n < 1:
        raise DomainError("Carlini bound needs n >= 1")
    x = n / abs(t)
    # sqrt(x^2+1) - x computed without cancellation
    log_base = -math.log(math.sqrt(x * x + 1.0) + x)
    return (
        math.hypot(t, n)
        + n * log_base
        - math.log(2.0)
        - 0.25 * math.log(n * n + t * t)
    )


def carlini_bound(n: int, t: float) -> float:
    """Carlini's closed-form upper bound on |I_n(t)|.

    May overflow/underflow double range for extreme (n, t); use
    carlini_log_bound for grid comparisons there.
    """
    log_b = carlini_log_bound(n, t)
    if log_b > 709.0:
        return math.inf
    return math.exp(log_b)


def exp_series(t: float, n: int) -> ChebyshevSeries:
    """Degree-n Chebyshev truncation of exp(t x): a_0 = I_0(t), a_k = 2 I_k(t)."""
    import scipy.special

    vals = scipy.special.ive(np.arange(n + 1), t) * math.exp(min(abs(t), 700.0))
    if not np.isfinite(vals).all():
        raise DomainError("exp series coefficients overflow double range")
    coeffs = 2.0 * vals
    coeffs[0] /= 2
    return ChebyshevSeries(coeffs.astype(complex), parity_of(coeffs))
