"""Degree lower bounds: the derivative inequality for bounded polynomials and
the robust-Lipschitz argument, with the bounded-exp separation as its
headline instance."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as npcheb

from .chebyshev import ChebyshevSeries, monomial_to_cheb
from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class LowerBoundReport:
    """An implied minimum degree with the witnessing sample pair."""

    bound: float
    witness: tuple
    params: dict


def _as_cheb(p) -> np.ndarray:
    if isinstance(p, ChebyshevSeries):
        return p.coeffs
    return monomial_to_cheb(np.asarray(p, dtype=complex).reshape(-1))


def bernstein_check(p, grid_n: int = 4001, affine_map=None) -> float:
    """max over the grid of |p'(x)| sqrt(1-x^2) / deg p.

    Requires ||p|| <= 1 + 1e-10 on [-1, 1] (grid-checked); for any such
    polynomial the returned ratio cannot exceed 1.  Derivatives come from
    exact coefficient differentiation.

    ``affine_map=(a, b)`` evaluates the polynomial as p(x) = series(a x + b),
    the representation certificates use, without re-expanding coefficients.
    """
    coeffs = _as_cheb(p)
    deg = coeffs.size - 1
    xs = np.cos(np.pi * (np.arange(grid_n) + 0.5) / grid_n)
    if affine_map is None:
        a, b = 1.0, 0.0
    else:
        a, b = affine_map
    ts = a * xs + b
    vals = np.abs(npcheb.chebval(ts, coeffs))
    worst = int(np.argmax(vals))
    if vals[worst] > 1.0 + 1e-10:
        raise ValidationError(
            f"|p({xs[worst]:.6f})| = {vals[worst]:.12f} > 1; polynomial not bounded",
            residual=float(vals[worst] - 1.0),
        )
    if deg == 0:
        return 0.0
    dcoeffs = npcheb.chebder(coeffs)
    dvals = np.abs(a) * np.abs(npcheb.chebval(ts, dcoeffs))
    return float(np.max(dvals * np.sqrt(1.0 - xs**2)) / deg)


def robust_lipschitz_bound(f, sample_points, eps: float, delta: float) -> LowerBoundReport:
    """Lower bound sqrt(1 - Delta^2) * max (|f(x)-f(y)| - 2 eps)/|x-y| over pairs.

    Any polynomial that eps-approximates f on the samples and stays bounded by
    1 on [-1, 1] must have at least this degree.
    """
    pts = np.asarray(sample_points, dtype=float).reshape(-1)
    if pts.size < 2:
        raise DomainError("need at least two sample points")
    if not 0 < delta <= 1:
        raise DomainError("Delta must lie in (0, 1]")
    if np.max(np.abs(pts)) > delta + 1e-12:
        raise DomainError("sample points must lie inside [-Delta, Delta]")
    fv = np.asarray([f(x) for x in pts], dtype=float)
    if np.max(np.abs(fv)) > 1.0 + 1e-12:
        raise DomainError("|f| must be bounded by 1 on the samples")
    best = 0.0
    witness = (float(pts[0]), float(pts[1]))
    for i in range(pts.size):
        for j in range(i + 1, pts.size):
            gap = abs(pts[i] - pts[j])
            if gap == 0:
                continue
            val = (abs(fv[i] - fv[j]) - 2.0 * eps) / gap
            if val > best:
                best = val
                witness = (float(pts[i]), float(pts[j]))
    bound = math.sqrt(max(0.0, 1.0 - delta * delta)) * max(0.0, best)
    return LowerBoundReport(bound, witness, {"eps": eps, "Delta": delta, "n_samples": pts.size})


def exp_separation(beta: float, delta: float) -> LowerBoundReport:
    """Minimum degree of a polynomial 0.1-close to exp(beta x) on [-1, 0] that
    stays bounded by 1 on [0, delta].

    Instantiates the robust-Lipschitz bound on the two-point set from the
    separation argument; the closed form is
    (1 - 1/e - 0.2) * beta (1 + delta) / 2 * sqrt(1 - ((1-delta)/(1+delta))^2).
    """
    if beta < 1:
        raise DomainError("beta must be at least 1")
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    big_delta = (1.0 - delta) / (1.0 + delta)
    t_hi = big_delta
    t_lo = (2.0 / (1.0 + delta)) * (-1.0 / beta + (1.0 - delta) / 2.0)

    def f(t):
        x = (1.0 + delta) / 2.0 * t - (1.0 - delta) / 2.0
        return math.exp(beta * x)

    report = robust_lipschitz_bound(f, [t_lo, t_hi], eps=0.1, delta=max(big_delta, abs(t_lo)))
    closed_form = (
        (1.0 - 1.0 / math.e - 0.2)
        * beta
        * (1.0 + delta)
        / 2.0
        * math.sqrt(max(0.0, 1.0 - big_delta * big_delta))
    )
    return LowerBoundReport(
        closed_form,
        report.witness,
        {
            "beta": beta,
            "delta": delta,
            "eps": 0.1,
            "sampled_bound": report.bound,
        },
    )
