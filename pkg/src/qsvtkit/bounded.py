"""Bounded polynomial approximation by thresholded Chebyshev truncation.

The pipeline: truncate the target on the approximation interval, multiply by
an erf-based threshold that crushes everything outside a slightly larger
window, and re-truncate the product on the full bounded range.  The result is
close to f on the inner window, bounded on a slightly inflated window, and
decays to ~0 on the rest of the range - the shape a singular-value transform
needs.  Every certificate records measured sup-norms; nothing is trusted from
the derivation alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import (
    EVEN,
    NONE,
    ODD,
    ChebyshevSeries,
    enforce_parity,
    parity_of,
    series_from_interpolant,
    trefethen_degree,
)
from .config import DEFAULT_CONFIG, Config
from .errors import ConstantTooSmallError, DomainError, ValidationError
from .numerics import erf_complex

#: calibrated growth constant in the off-axis Chebyshev bound
GROWTH_C = 1.5
#: validity half-width in y for the growth bound
GROWTH_Y_WINDOW = 0.5


def bernstein_semi_axes(rho: float) -> tuple[float, float]:
    """Semi-axes (a, b) of the ellipse swept by (rho e^{i t} + 1/(rho e^{i t}))/2."""
    if rho < 1:
        raise DomainError("rho must be >= 1")
    return 0.5 * (rho + 1.0 / rho), 0.5 * (rho - 1.0 / rho)


def containment_radius(delta: float, alpha: float) -> float:
    """sigma with (1 + delta) E_{1+alpha} inside E_sigma: sigma = 1 + 3(alpha + sqrt(delta))."""
    if not 0 <= delta < 1:
        raise DomainError("delta must lie in [0, 1)")
    return 1.0 + 3.0 * (alpha + math.sqrt(delta))


def cheb_growth_bound(n: int, x: float, y: float, big_c: float = GROWTH_C) -> float:
    """Upper bound for |T_n(x + i y)|, |y| small.

    (1 + C sqrt|y|)^n on the interval, (|x| + sqrt(x^2-1) + C sqrt|x y|)^n
    beyond it.
    """
    if abs(y) > GROWTH_Y_WINDOW:
        raise DomainError(f"growth bound calibrated for |y| <= {GROWTH_Y_WINDOW}")
    ax = abs(x)
    if ax <= 1.0:
        base = 1.0 + big_c * math.sqrt(abs(y))
    else:
        base = ax + math.sqrt(ax * ax - 1.0) + big_c * math.sqrt(abs(x * y))
    return base**n


@dataclass(frozen=True)
class ThresholdParams:
    """Parameters of r(z) = (erf(s(mu + z)) + erf(s(mu - z))) / 2."""

    mu: float
    s: float
    c_s: float = DEFAULT_CONFIG.c_s

    def __post_init__(self):
        if not 0 < self.mu < 1:
            raise ValidationError("mu must lie in (0, 1)")
        if self.s <= 0:
            raise ValidationError("s must be positive")


def erf_threshold(params: ThresholdParams, z):
    """The soft window function; ~1 inside [-mu, mu], ~0 outside, width ~1/s."""
    s, mu = params.s, params.mu
    return 0.5 * (erf_complex(s * (mu + np.asarray(z))) + erf_complex(s * (mu - np.asarray(z))))


@dataclass(frozen=True)
class BoundedApproxSpec:
    """Problem data for the thresholded truncation.

    m bounds the target on the Bernstein ellipse of radius 1 + alpha; delta
    sets the inflation of the bounded window and must stay below
    min(1, alpha^2) / ellipse_margin_factor; b > 1 is the half-width of the
    full range.
    """

    m: float
    alpha: float
    delta: float
    eps: float
    b: float

    def validate(self, config: Config) -> None:
        if self.m <= 0 or self.alpha <= 0:
            raise ValidationError("m and alpha must be positive")
        if not 0 < self.eps < 1:
            raise ValidationError("eps must lie in (0, 1)")
        if self.b <= 1:
            raise ValidationError("b must exceed 1")
        cap = min(1.0, self.alpha**2) / config.ellipse_margin_factor
        if not 0 < self.delta < cap:
            raise ValidationError(
                f"delta must lie in (0, {cap:.4g}) for alpha={self.alpha:.4g}"
            )


@dataclass(eq=False)
class BoundedApproxCertificate:
    """A polynomial plus its measured sup-norms on the three windows.

    The polynomial lives in a scaled variable t = map_a * x + map_b with
    t in [-1, 1] covering the widest window, so evaluation anywhere on the
    certified range is numerically stable.
    """

    poly: ChebyshevSeries
    map_a: float
    map_b: float
    degree: int
    sup_inner: float
    sup_bounded: float
    sup_outer: float
    windows: dict
    bound: float
    eps: float
    parity: str = NONE
    params: dict = field(default_factory=dict)

    def evaluate(self, x):
        return self.poly(self.map_a * np.asarray(x) + self.map_b)

    def passes(self, slack: float = 1.1) -> bool:
        """The three displayed inequalities, with measurement slack."""
        return (
            self.sup_inner <= self.eps * slack
            and self.sup_bounded <= self.bound * slack
            and self.sup_outer <= self.eps * slack
        )


def _window_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """Chebyshev-distributed points plus both endpoints."""
    if hi <= lo:
        return np.zeros(0)
    t = np.cos(np.pi * (np.arange(n) + 0.5) / n)[::-1]
    return np.concatenate([[lo], 0.5 * (lo + hi) + 0.5 * (hi - lo) * t, [hi]])


def _sup_on(fn, lo, hi, n) -> float:
    grid = _window_grid(lo, hi, n)
    if grid.size == 0:
        return 0.0
    return float(np.max(np.abs(fn(grid))))


def _validate_cs_constant(c_s: float, delta_eff: float, b_eff: float) -> None:
    """Grid check of the domination inequality that makes the threshold win.

    (C_s^2 / 2 delta^2)(|x| - (1 - delta/2))^2 must dominate
    (1/sqrt(delta))(|x| - 1 + sqrt(x^2-1) + K sqrt(|x| delta)) on [1, b].
    """
    xs = np.linspace(1.0, max(b_eff, 1.0 + delta_eff), 1000)
    lhs = (c_s**2 / (2 * delta_eff**2)) * (xs - (1 - delta_eff / 2)) ** 2
    rhs = (xs - 1 + np.sqrt(xs**2 - 1) + GROWTH_C * np.sqrt(xs * delta_eff)) / math.sqrt(
        delta_eff
    )
    bad = np.flatnonzero(lhs < rhs)
    if bad.size:
        raise ConstantTooSmallError(
            f"threshold constant c_s={c_s} too small: domination fails at "
            f"x={xs[bad[0]]:.6f}; increase c_s in the configuration"
        )


def _ellipse_boundary(rho: float, n: int = 512) -> np.ndarray:
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    z = rho * np.exp(1j * theta)
    return 0.5 * (z + 1.0 / z)


def bounded_truncation(
    f,
    spec: BoundedApproxSpec,
    config: Config | None = None,
    parity: str | None = None,
) -> BoundedApproxCertificate:
    """Construct the three-window bounded approximation of f.

    f must be evaluable on [-b, b] and at complex points near [-1, 1] (the
    threshold and the ellipse samples are complex).  The certificate's
    windows are [-1, 1], [-(1+delta), 1+delta], and the remainder of
    [-b, b]; measured sup-norms are taken on Chebyshev-distributed grids.
    """
    cfg = config or DEFAULT_CONFIG
    spec.validate(cfg)
    m_norm, alpha, delta, eps, b = spec.m, spec.alpha, spec.delta, spec.eps, spec.b
    delta_eff = delta / (1.0 + delta)
    shrink = 1.0 - delta_eff  # = 1/(1+delta)
    b_eff = b * shrink
    if b_eff <= 1.0:
        raise ValidationError("b must exceed 1 + delta for a nonempty range")
    eps_i = eps / 6.0

    def g(y):
        return np.asarray(f(np.asarray(y) / shrink), dtype=complex) / m_norm

    # step 1: inner truncation controlled by the declared ellipse bound
    rho = 1.0 + alpha
    n_inner = max(1, math.ceil(math.log(6.0 / (alpha * eps)) / math.log(rho)))
    inner = series_from_interpolant(g, n_inner)
    for _ in range(3):
        err = _sup_on(lambda y: inner(y) - g(y), -1.0, 1.0, 512)
        if err <= 2 * eps_i:
            break
        n_inner *= 2
        inner = series_from_interpolant(g, n_inner)

    # step 2: erf threshold
    s_sharp = (cfg.c_s / delta_eff) * math.sqrt(math.log(1.0 / (alpha * eps)))
    _validate_cs_constant(cfg.c_s, delta_eff, b_eff)
    thresh = ThresholdParams(mu=1.0 - delta_eff / 2.0, s=s_sharp, c_s=cfg.c_s)

    def soft(z):
        return inner(np.asarray(z)) * erf_threshold(thresh, z)

    # step 3: outer truncation on the scaled range via the measured ellipse bound
    rho_out = 1.0 + delta_eff / b_eff
    boundary = b_eff * _ellipse_boundary(rho_out)
    m_tilde = float(np.max(np.abs(soft(boundary))))
    m_outer = trefethen_degree(max(m_tilde, 1e-300), rho_out, eps_i)
    outer = series_from_interpolant(lambda w: soft(b_eff * w), m_outer)

    detected = parity if parity is not None else _detect_parity(f, b)
    if detected in (EVEN, ODD):
        outer = ChebyshevSeries(enforce_parity(outer.coeffs, detected), detected)

    # final polynomial: q(x) = m_norm * outer((x * shrink) / b_eff) = m_norm * outer(x / b)
    map_a = 1.0 / b
    series = ChebyshevSeries(m_norm * outer.coeffs, outer.parity)

    def q(x):
        return series(map_a * np.asarray(x))

    grid_n = cfg.grid_points
    sup_bounded = _sup_on(q, -(1 + delta), 1 + delta, grid_n)
    scale = max(1.0, sup_bounded / m_norm)
    if scale > 1.0:
        series = ChebyshevSeries(series.coeffs / scale, series.parity)
        sup_bounded /= scale

    def q2(x):
        return series(map_a * np.asarray(x))

    sup_inner = _sup_on(lambda x: q2(x) - np.asarray(f(x), dtype=complex), -1.0, 1.0, grid_n)
    sup_outer = max(
        _sup_on(q2, 1 + delta, b, grid_n // 2),
        _sup_on(q2, -b, -(1 + delta), grid_n // 2),
    )
    return BoundedApproxCertificate(
        poly=series,
        map_a=map_a,
        map_b=0.0,
        degree=series.degree,
        sup_inner=sup_inner,
        sup_bounded=sup_bounded,
        sup_outer=sup_outer,
        windows={
            "inner": (-1.0, 1.0),
            "bounded": (-(1 + delta), 1 + delta),
            "outer": (1 + delta, b),
        },
        bound=m_norm,
        eps=m_norm * eps,
        parity=series.parity,
        params={
            "m": m_norm,
            "alpha": alpha,
            "delta": delta,
            "eps": eps,
            "b": b,
            "n_inner": n_inner,
            "degree_outer": m_outer,
            "s": s_sharp,
            "c_s": cfg.c_s,
            "m_tilde": m_tilde,
        },
    )


def _detect_parity(f, b: float) -> str:
    xs = np.linspace(0.11, min(0.97, b), 13)
    plus = np.asarray(f(xs), dtype=complex)
    minus = np.asarray(f(-xs), dtype=complex)
    scale = max(float(np.max(np.abs(plus))), 1e-30)
    if np.max(np.abs(plus - minus)) <= 1e-10 * scale:
        return EVEN
    if np.max(np.abs(plus + minus)) <= 1e-10 * scale:
        return ODD
    return NONE


def _rewrap(cert: BoundedApproxCertificate, **kwargs) -> BoundedApproxCertificate:
    data = {
        "poly": cert.poly,
        "map_a": cert.map_a,
        "map_b": cert.map_b,
        "degree": cert.degree,
        "sup_inner": cert.sup_inner,
        "sup_bounded": cert.sup_bounded,
        "sup_outer": cert.sup_outer,
        "windows": cert.windows,
        "bound": cert.bound,
        "eps": cert.eps,
        "parity": cert.parity,
        "params": cert.params,
    }
    data.update(kwargs)
    return BoundedApproxCertificate(**data)


# ---------------------------------------------------------------------------
# Application corollaries


def formula_degree(target: str, **kw) -> float:
    """The advertised asymptotic degree for each construction (constant 1)."""
    if target == "exp":
        return kw["beta"] * math.log(kw["beta"] / kw["eps"])
    if target == "arcsin":
        return math.log(1.0 / (kw["delta"] * kw["eps"])) / math.sqrt(kw["delta"])
    if target == "trig-arcsin":
        return math.log(1.0 / kw["eps"])
    if target == "neg-power":
        return max(1.0, kw["c"]) / kw["delta"] * math.log(1.0 / (kw["delta"] * kw["eps"]))
    if target == "sign":
        return math.log(1.0 / (kw["delta"] * kw["eps"])) / kw["delta"]
    raise DomainError(f"unknown target {target!r}")


def _normalize_magnitude(cert: BoundedApproxCertificate, claim: float, f, grid_n: int):
    """Scale the polynomial so its bounded-window sup is <= claim, re-measure."""
    series = cert.poly
    lo, hi = cert.windows["bounded"]

    def q(x):
        return series(cert.map_a * np.asarray(x) + cert.map_b)

    sup_b = _sup_on(q, lo, hi, grid_n)
    factor = max(1.0, sup_b / claim)
    series = ChebyshevSeries(series.coeffs / factor, series.parity)

    def q2(x):
        return series(cert.map_a * np.asarray(x) + cert.map_b)

    ilo, ihi = cert.windows["inner"]
    sup_i = _sup_on(lambda x: q2(x) - np.asarray(f(x), dtype=complex), ilo, ihi, grid_n)
    sup_b = _sup_on(q2, lo, hi, grid_n)
    sup_o = 0.0
    if "outer" in cert.windows and cert.windows["outer"] is not None:
        olo, ohi = cert.windows["outer"]
        sup_o = max(
            _sup_on(q2, olo, ohi, grid_n // 2),
            _sup_on(q2, -ohi, -olo, grid_n // 2) if cert.parity != NONE else 0.0,
        )
    return _rewrap(
        cert,
        poly=series,
        sup_inner=sup_i,
        sup_bounded=sup_b,
        sup_outer=sup_o,
        bound=claim,
    )


def approx_exp_bounded(
    beta: float, eps: float, config: Config | None = None
) -> BoundedApproxCertificate:
    """Bounded approximation of exp(beta x): eps-close on [-1, 0], O(1) on [-1, 1].

    Rescales to g(y) = exp(beta (y-1)/2) with ellipse radius 1 + 1/sqrt(beta),
    range half-width 3, and window inflation delta ~ 1/beta.
    """
    cfg = config or DEFAULT_CONFIG
    if beta < 1:
        raise DomainError("beta must be at least 1")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    alpha = 1.0 / math.sqrt(beta)
    delta = 0.999 * min(1.0, alpha * alpha) / cfg.ellipse_margin_factor
    rho = 1.0 + alpha
    m_decl = float(
        np.max(np.abs(np.exp(beta * ( _ellipse_boundary(rho) - 1.0) / 2.0)))
    ) * (1.0 + 1e-12)

    def g(y):
        return np.exp(beta * (np.asarray(y, dtype=complex) - 1.0) / 2.0)

    spec = BoundedApproxSpec(m=m_decl, alpha=alpha, delta=delta, eps=min(eps / (2 * m_decl), 0.5), b=3.0)
    base = bounded_truncation(g, spec, cfg, parity=NONE)

    # back to x: y = 2x + 1, so t = map_a_base * (2x + 1)
    map_a = base.map_a * 2.0
    map_b = base.map_a * 1.0

    def f(x):
        return np.exp(beta * np.asarray(x, dtype=complex))

    def p(x):
        return base.poly(map_a * np.asarray(x) + map_b)

    grid_n = cfg.grid_points
    windows = {"inner": (-1.0, 0.0), "bounded": (-1.0, 1.0), "outer": None}
    sup_i = _sup_on(lambda x: p(x) - f(x), -1.0, 0.0, grid_n)
    sup_b = _sup_on(p, -1.0, 1.0, grid_n)
    return BoundedApproxCertificate(
        poly=base.poly,
        map_a=map_a,
        map_b=map_b,
        degree=base.degree,
        sup_inner=sup_i,
        sup_bounded=sup_b,
        sup_outer=0.0,
        windows=windows,
        bound=2.0,
        eps=eps,
        parity=NONE,
        params={"beta": beta, "eps": eps, **base.params},
    )


def approx_arcsin(
    delta: float, eps: float, config: Config | None = None
) -> BoundedApproxCertificate:
    """Odd approximation of (2/pi) arcsin: eps-close on [-(1-delta), 1-delta],
    bounded by 1 on [-1, 1]."""
    cfg = config or DEFAULT_CONFIG
    if not 0 < delta < 1 or not 0 < eps < 1:
        raise DomainError("delta and eps must lie in (0, 1)")
    alpha = math.sqrt(2.0 * delta)
    b = 1.0 / (1.0 - delta)
    delta_t = 0.9 * min(1.0, alpha * alpha, b - 1.0 + 0.1 * alpha * alpha) / cfg.ellipse_margin_factor
    delta_t = min(delta_t, 0.9 * min(1.0, alpha * alpha) / cfg.ellipse_margin_factor)

    def g(y):
        return (2.0 / math.pi) * np.arcsin((1.0 - delta) * np.asarray(y, dtype=complex))

    spec = BoundedApproxSpec(m=1.0, alpha=alpha, delta=delta_t, eps=eps / 2.0, b=b)
    base = bounded_truncation(g, spec, cfg, parity=ODD)

    map_a = base.map_a / (1.0 - delta)  # y = x / (1 - delta)

    def f(x):
        return (2.0 / math.pi) * np.arcsin(np.asarray(x, dtype=complex))

    cert = BoundedApproxCertificate(
        poly=base.poly,
        map_a=map_a,
        map_b=0.0,
        degree=base.degree,
        sup_inner=0.0,
        sup_bounded=0.0,
        sup_outer=0.0,
        windows={"inner": (-(1 - delta), 1 - delta), "bounded": (-1.0, 1.0), "outer": None},
        bound=1.0,
        eps=eps,
        parity=ODD,
        params={"delta": delta, "eps": eps, **base.params},
    )
    return _normalize_magnitude(cert, 1.0, f, cfg.grid_points)


def approx_trig_arcsin(t: float, eps: float, config: Config | None = None):
    """Even cos(t arcsin x) and odd sin(t arcsin x) approximations on [-1/2, 1/2],
    both bounded by 1 on [-1, 1].  Returns (even_cert, odd_cert)."""
    cfg = config or DEFAULT_CONFIG
    if not -1 <= t <= 1:
        raise DomainError("t must lie in [-1, 1]")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    alpha = 1.0
    m_decl = math.cosh(math.pi / 2.0) * 1.001
    delta_t = 0.9 / cfg.ellipse_margin_factor
    certs = []
    for kind, parity in (("cos", EVEN), ("sin", ODD)):

        def g(y, kind=kind):
            inner = t * np.arcsin(np.asarray(y, dtype=complex) / 2.0)
            return np.cos(inner) if kind == "cos" else np.sin(inner)

        spec = BoundedApproxSpec(
            m=m_decl, alpha=alpha, delta=delta_t, eps=min(eps / (2 * m_decl), 0.5), b=2.0
        )
        base = bounded_truncation(g, spec, cfg, parity=parity)
        map_a = base.map_a * 2.0  # y = 2x

        def f(x, kind=kind):
            inner = t * np.arcsin(np.asarray(x, dtype=complex))
            return np.cos(inner) if kind == "cos" else np.sin(inner)

        cert = BoundedApproxCertificate(
            poly=base.poly,
            map_a=map_a,
            map_b=0.0,
            degree=base.degree,
            sup_inner=0.0,
            sup_bounded=0.0,
            sup_outer=0.0,
            windows={"inner": (-0.5, 0.5), "bounded": (-1.0, 1.0), "outer": None},
            bound=1.0,
            eps=eps,
            parity=parity,
            params={"t": t, "eps": eps, "kind": kind, **base.params},
        )
        certs.append(_normalize_magnitude(cert, 1.0, f, cfg.grid_points))
    return certs[0], certs[1]


def approx_neg_power(
    c: float, delta: float, eps: float, parity: str, config: Config | None = None
) -> BoundedApproxCertificate:
    """Approximation of |delta / x|^c on [delta, 1], bounded by 3 on [-1, 1],
    symmetrized to the requested parity."""
    cfg = config or DEFAULT_CONFIG
    if c <= 0 or not 0 < delta < 1 or not 0 < eps < 1:
        raise DomainError("need c > 0 and delta, eps in (0, 1)")
    if parity not in (EVEN, ODD):
        raise DomainError("parity must be 'even' or 'odd'")
    cmax = max(1.0, c)
    # the b = 4 range only fits the affine map for delta < 1/5; larger deltas
    # reuse the map of a capped delta while approximating the true target
    delta_map = min(delta, 0.19)
    alpha = math.sqrt(delta_map / (4.0 * cmax))

    def x_of_y(y):
        return (1.0 - delta_map) / 2.0 * np.asarray(y, dtype=complex) + (1.0 + delta_map) / 2.0

    def g(y):
        return delta**c * x_of_y(y) ** (-c)

    rho = 1.0 + alpha
    m_decl = float(np.max(np.abs(g(_ellipse_boundary(rho))))) * 1.000001
    delta_t = 0.9 * min(1.0, alpha * alpha) / cfg.ellipse_margin_factor
    spec = BoundedApproxSpec(
        m=m_decl, alpha=alpha, delta=delta_t, eps=min(eps / (4.0 * m_decl), 0.5), b=4.0
    )
    base = bounded_truncation(g, spec, cfg, parity=NONE)

    def y_of_x(x):
        return (2.0 * np.asarray(x) - (1.0 + delta_map)) / (1.0 - delta_map)

    def q_scaled(x):
        return base.poly(base.map_a * y_of_x(x))

    sign = 1.0 if parity == EVEN else -1.0

    def p(x):
        return q_scaled(x) + sign * q_scaled(-np.asarray(x))

    # the symmetrized polynomial has the same degree; capture it on [-1, 1]
    series = series_from_interpolant(p, base.degree)
    series = ChebyshevSeries(enforce_parity(series.coeffs, parity), parity)

    def f(x):
        return np.abs(delta / np.asarray(x, dtype=complex)) ** c

    cert = BoundedApproxCertificate(
        poly=series,
        map_a=1.0,
        map_b=0.0,
        degree=series.degree,
        sup_inner=0.0,
        sup_bounded=0.0,
        sup_outer=0.0,
        windows={"inner": (delta, 1.0), "bounded": (-1.0, 1.0), "outer": None},
        bound=3.0,
        eps=eps,
        parity=parity,
        params={"c": c, "delta": delta, "eps": eps, "parity": parity, **base.params},
    )
    return _normalize_magnitude(cert, 3.0, f, cfg.grid_points)


def approx_sign(delta: float, eps: float, config: Config | None = None) -> BoundedApproxCertificate:
    """Odd approximation of sgn: eps-close outside (-delta, delta), |p| <= 1.

    Chebyshev truncation of erf(s x) with s chosen from the Gaussian tail
    bound 1 - erf(u) < 2 e^{-u^2}.
    """
    cfg = config or DEFAULT_CONFIG
    if not 0 < delta < 1 or not 0 < eps < 1:
        raise DomainError("delta and eps must lie in (0, 1)")
    s = math.sqrt(math.log(4.0 / eps)) / delta
    rho = 1.0 + 1.0 / s
    boundary = _ellipse_boundary(rho)
    m_decl = float(np.max(np.abs(erf_complex(s * boundary))))
    n = trefethen_degree(m_decl, rho, eps / 4.0)
    series = series_from_interpolant(lambda x: erf_complex(s * x), n)
    series = ChebyshevSeries(enforce_parity(series.coeffs, ODD), ODD)

    def sgn(x):
        return np.sign(np.asarray(x, dtype=float))

    cert = BoundedApproxCertificate(
        poly=series,
        map_a=1.0,
        map_b=0.0,
        degree=series.degree,
        sup_inner=0.0,
        sup_bounded=0.0,
        sup_outer=0.0,
        windows={"inner": (delta, 1.0), "bounded": (-1.0, 1.0), "outer": None},
        bound=1.0,
        eps=eps,
        parity=ODD,
        params={"delta": delta, "eps": eps, "s": s},
    )
    return _normalize_magnitude(cert, 1.0, sgn, cfg.grid_points)


# ---------------------------------------------------------------------------
# Negative controls


def unthresholded_exp_outer_sup(beta: float, eps: float, config: Config | None = None) -> tuple[float, float]:
    """(sup of the bare inner truncation on the outer window, declared M).

    Skipping the threshold step leaves the raw Chebyshev truncation, which
    blows up beyond the approximation interval; this measures by how much.
    """
    cfg = config or DEFAULT_CONFIG
    alpha = 1.0 / math.sqrt(beta)
    rho = 1.0 + alpha
    m_decl = float(np.max(np.abs(np.exp(beta * (_ellipse_boundary(rho) - 1.0) / 2.0))))

    def g(y):
        return np.exp(beta * (np.asarray(y, dtype=complex) - 1.0) / 2.0)

    n_inner = max(1, math.ceil(math.log(6.0 / (alpha * eps)) / math.log(rho)))
    inner = series_from_interpolant(g, n_inner)
    delta = 0.999 * min(1.0, alpha * alpha) / cfg.ellipse_margin_factor
    sup = _sup_on(inner, 1.0 + delta, 3.0, 2000)
    return sup, m_decl


def sign_series_truncation(k_max: int) -> ChebyshevSeries:
    """Truncation of the closed-form sign series (4/pi) sum (-1)^k/(2k+1) T_{2k+1}."""
    coeffs = np.zeros(2 * k_max + 2, dtype=complex)
    for k in range(k_max + 1):
        coeffs[2 * k + 1] = (4.0 / math.pi) * (-1.0) ** k / (2 * k + 1)
    return ChebyshevSeries(coeffs, ODD)
