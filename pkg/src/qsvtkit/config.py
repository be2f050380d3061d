"""Tolerances and run configuration shared across modules."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .errors import ValidationError

#: Environment variable that overrides the configured seed.
SEED_ENV_VAR = "QSVTKIT_SEED"


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerances threaded through every decomposition and check.

    ``sv_cluster_tol`` decides when a singular value of a corner block is
    snapped to 0 or 1; it must stay well below 0.5 so the three classes
    cannot overlap.
    """

    unitarity_tol: float = 1e-10
    residual_tol: float = 1e-10
    sv_cluster_tol: float = 1e-8

    def __post_init__(self):
        if self.unitarity_tol < 0 or self.residual_tol < 0:
            raise ValidationError("tolerances must be nonnegative")
        if not 0 < self.sv_cluster_tol < 0.5:
            raise ValidationError("sv_cluster_tol must lie in (0, 0.5)")


@dataclass(frozen=True)
class Config:
    """Run configuration: tolerances plus the calibrated constants.

    ``c_s`` is the threshold-sharpness constant of the bounded-truncation
    pipeline, validated at runtime against its domination inequality.
    ``ellipse_margin_factor`` is the constant C in the requirement
    delta < min(1, alpha^2) / C.  ``grid_points`` sizes every sup-norm
    measurement grid; ``quadrature_factor`` scales contour-quadrature node
    counts as factor * (n + 1).
    """

    tolerances: Tolerance = field(default_factory=Tolerance)
    c_s: float = 4.0
    ellipse_margin_factor: float = 1.1
    grid_points: int = 10_000
    quadrature_factor: int = 8
    seed: int = 2024

    def __post_init__(self):
        if self.c_s <= 0 or self.ellipse_margin_factor < 1:
            raise ValidationError("c_s must be positive and ellipse_margin_factor >= 1")
        if self.grid_points < 16 or self.quadrature_factor < 2:
            raise ValidationError("grid_points >= 16 and quadrature_factor >= 2 required")

    def effective_seed(self) -> int:
        env = os.environ.get(SEED_ENV_VAR)
        return int(env) if env else self.seed


DEFAULT_CONFIG = Config()

_FLOAT_KEYS = {"unitarity_tol", "residual_tol", "sv_cluster_tol", "c_s", "ellipse_margin_factor"}
_INT_KEYS = {"grid_points", "quadrature_factor", "seed"}


def load_config(path: str) -> Config:
    """Parse a flat ``key = value`` config file; unknown keys are rejected."""
    tol_kwargs, cfg_kwargs = {}, {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in _FLOAT_KEYS and key.endswith("_tol"):
                tol_kwargs[key] = float(value)
            elif key in _FLOAT_KEYS:
                cfg_kwargs[key] = float(value)
            elif key in _INT_KEYS:
                cfg_kwargs[key] = int(value)
            else:
                raise ValidationError(f"{path}:{lineno}: unknown config key {key!r}")
    return Config(tolerances=Tolerance(**tol_kwargs), **cfg_kwargs)


def with_overrides(config: Config, **kwargs) -> Config:
    """Return a copy of ``config`` with the given fields replaced."""
    tol_kwargs = {k: v for k, v in kwargs.items() if k in _FLOAT_KEYS and k.endswith("_tol")}
    cfg_kwargs = {k: v for k, v in kwargs.items() if k not in tol_kwargs}
    if tol_kwargs:
        cfg_kwargs["tolerances"] = replace(config.tolerances, **tol_kwargs)
    return replace(config, **cfg_kwargs)
