"""Cavity data model: boundary geometry plus transmission coefficients.

A cavity carries, at every boundary sample, the exterior and interior
densities, the relative boundary density ``tau`` and the fiber
coefficients of the two dual metrics.  In two dimensions the boundary is
a curve and ``|xi'|_g^2 = g_fiber * xi^2`` with ``xi`` the momentum dual to
exterior arclength.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import NonPositiveIndex

DELTA_JUMP = 1e-6
DEFAULT_SAMPLES = 64


@dataclass(frozen=True)
class Disk:
    """Ball of the given radius (a disk when d = 2)."""

    radius: float = 1.0
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    @property
    def params(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.samples) / self.samples

    @property
    def curvature(self) -> np.ndarray:
        return np.full(self.samples, 1.0 / self.radius)

    @property
    def arclength_weights(self) -> np.ndarray:
        return np.full(self.samples, 2 * np.pi * self.radius / self.samples)

    def length(self) -> float:
        return 2 * np.pi * self.radius


@dataclass(frozen=True)
class Curve:
    """Closed smooth curve given by samples at uniformly spaced parameters.

    ``points``, ``tangents`` (unit) and ``curvature`` are sampled at
    ``t_k = 2 pi k / N``; ``speed`` is ``|dx/dt|`` so that arclength
    quadrature is ``sum(speed) * 2 pi / N`` (spectrally accurate for
    periodic integrands).
    """

    points: np.ndarray
    tangents: np.ndarray
    curvature: np.ndarray
    speed: np.ndarray

    @classmethod
    def from_parametrization(cls, x: Callable, samples: int = 256, h: float = 1e-4) -> "Curve":
        """Sample ``x(t) -> (N, 2)`` on ``[0, 2 pi)`` using central differences."""
        t = 2 * np.pi * np.arange(samples) / samples
        p = np.asarray(x(t), dtype=float).reshape(samples, 2)
        d1 = (np.asarray(x(t + h)) - np.asarray(x(t - h))).reshape(samples, 2) / (2 * h)
        d2 = (np.asarray(x(t + h)) - 2 * p + np.asarray(x(t - h))).reshape(samples, 2) / h**2
        speed = np.hypot(d1[:, 0], d1[:, 1])
        kappa = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speed**3
        return cls(p, d1 / speed[:, None], kappa, speed)

    @classmethod
    def circle(cls, radius: float = 1.0, samples: int = 256) -> "Curve":
        t = 2 * np.pi * np.arange(samples) / samples
        pts = radius * np.column_stack([np.cos(t), np.sin(t)])
        tan = np.column_stack([-np.sin(t), np.cos(t)])
        return cls(pts, tan, np.full(samples, 1.0 / radius), np.full(samples, float(radius)))

    @classmethod
    def ellipse(cls, a: float, b: float, samples: int = 256) -> "Curve":
        t = 2 * np.pi * np.arange(samples) / samples
        pts = np.column_stack([a * np.cos(t), b * np.sin(t)])
        d1 = np.column_stack([-a * np.sin(t), b * np.cos(t)])
        speed = np.hypot(d1[:, 0], d1[:, 1])
        kappa = a * b / speed**3
        return cls(pts, d1 / speed[:, None], kappa, speed)

    @property
    def samples(self) -> int:
        return len(self.speed)

    @property
    def params(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.samples) / self.samples

    @property
    def arclength_weights(self) -> np.ndarray:
        return self.speed * (2 * np.pi / self.samples)

    def length(self) -> float:
        return float(np.sum(self.arclength_weights))


BoundaryGeom = Union[Disk, Curve]


class Regime(str, enum.Enum):
    PLASMONIC = "plasmonic"
    NON_PLASMONIC = "non_plasmonic"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    jump: np.ndarray = field(repr=False)
    threshold: float

    @property
    def jump_min(self) -> float:
        return float(np.min(self.jump))

    @property
    def jump_max(self) -> float:
        return float(np.max(self.jump))

    def as_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "jump_min": self.jump_min,
            "jump_max": self.jump_max,
            "threshold": self.threshold,
        }


@dataclass(frozen=True, eq=False)
class CavityModel:
    dimension: int
    boundary: BoundaryGeom
    rho_out: np.ndarray
    rho_in: np.ndarray
    tau: np.ndarray
    gO_fiber: np.ndarray
    gI_fiber: np.ndarray
    index_n: np.ndarray | None = None

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        for name in ("rho_out", "rho_in", "tau", "gO_fiber", "gI_fiber"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.ndim == 0:
                arr = np.full(self.boundary.samples, float(arr))
            if arr.shape != (self.boundary.samples,):
                raise ValueError(f"{name} must have one value per boundary sample")
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                raise ValueError(f"{name} must be finite and strictly positive")
            if isinstance(self.boundary, Disk) and np.ptp(arr) > 0:
                raise ValueError("disk cavities require constant coefficients")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def is_disk(self) -> bool:
        return isinstance(self.boundary, Disk)

    @property
    def constant(self) -> bool:
        return all(
            np.ptp(getattr(self, f)) == 0
            for f in ("rho_out", "rho_in", "tau", "gO_fiber", "gI_fiber")
        )

    def jump(self) -> np.ndarray:
        """``rho_O^2 gO - tau^2 rho_I^2 gI`` at every boundary sample."""
        return self.rho_out**2 * self.gO_fiber - self.tau**2 * self.rho_in**2 * self.gI_fiber

    def coefficient_scale(self) -> float:
        return float(max(np.max(self.rho_out**2 * self.gO_fiber),
                         np.max(self.tau**2 * self.rho_in**2 * self.gI_fiber)))


IndexLike = Union[float, np.ndarray, Callable[[np.ndarray], np.ndarray]]


def from_index(n: IndexLike, boundary: BoundaryGeom, d: int = 2) -> CavityModel:
    """Build the coefficient tuple of the scalar index problem.

    ``g_O = delta``, ``g_I = n^{-1} delta``, ``rho_O = 1``,
    ``rho_I = n^{-d/2}`` and ``tau = n^{(d-1)/2}``.  A callable ``n`` is
    sampled at the boundary parameters.
    """
    if callable(n):
        values = np.asarray(n(boundary.params), dtype=float)
    else:
        values = np.broadcast_to(np.asarray(n, dtype=float), (boundary.samples,)).copy()
    if values.shape != (boundary.samples,):
        raise ValueError("index must be scalar or sampled at every boundary node")
    if np.any(~(values > 0)):
        raise NonPositiveIndex(f"index must be positive, got min {np.min(values)}")
    return CavityModel(
        dimension=d,
        boundary=boundary,
        rho_out=np.ones_like(values),
        rho_in=values ** (-d / 2),
        tau=values ** ((d - 1) / 2),
        gO_fiber=np.ones_like(values),
        gI_fiber=1.0 / values,
        index_n=values,
    )


def validate_jump(c: CavityModel, delta: float | None = None) -> RegimeReport:
    """Classify the cavity by the sign of the jump at every boundary sample."""
    if delta is None:
        delta = DELTA_JUMP * max(1.0, c.coefficient_scale())
    D = c.jump()
    if np.all(D > delta):
        regime = Regime.PLASMONIC
    elif np.all(D < -delta):
        regime = Regime.NON_PLASMONIC
    else:
        regime = Regime.DEGENERATE
    return RegimeReport(regime, D, float(delta))


def boundary_measure(boundary: BoundaryGeom, d: int) -> float:
    """Euclidean measure of the boundary; for a ball the sphere area."""
    if d == 2:
        return boundary.length()
    if not isinstance(boundary, Disk):
        raise ValueError("only balls are supported for d >= 3")
    # area of S^{d-1} of radius a: 2 pi^{d/2} a^{d-1} / Gamma(d/2)
    return 2 * math.pi ** (d / 2) * boundary.radius ** (d - 1) / math.gamma(d / 2)
