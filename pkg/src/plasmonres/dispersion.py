"""Principal surface symbols and the plasmon dispersion relation.

Fiber momenta ``xi`` are dual to Euclidean arclength of the boundary, so
``|xi'|_g^2 = g_fiber * xi^2``.  For a disk mode ``e^{i m theta}`` at
frequency ``lambda`` the semiclassical momentum is ``xi = m / (a lambda)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cavity import CavityModel, Regime, validate_jump
from .errors import BranchPoint, NoSolution


@dataclass(frozen=True)
class CotangentPoint:
    index: int
    xi: float


@dataclass(frozen=True)
class SemiclassicalPoint:
    z: complex
    h: float

    @property
    def lam(self) -> complex:
        return self.z / self.h


def _csqrt(x):
    # principal branch; force +0 imaginary parts so that sqrt(-1) = +i
    x = np.asarray(x, dtype=complex)
    x = np.where(x.imag == 0, x.real + 0j, x)
    return np.sqrt(x)


def _coeffs(c: CavityModel, i: int):
    return (float(c.rho_out[i]), float(c.rho_in[i]), float(c.tau[i]),
            float(c.gO_fiber[i]), float(c.gI_fiber[i]))


def surface_symbol(c: CavityModel, p: CotangentPoint, z: complex):
    """``rho_O sqrt(gO xi^2 - z^2) - tau rho_I sqrt(gI xi^2 + z^2)``."""
    rO, rI, tau, gO, gI = _coeffs(c, p.index)
    z = complex(z)
    outer = gO * p.xi**2 - z * z
    if z.imag == 0 and outer == 0:
        raise BranchPoint("exterior radical vanishes (glancing point)")
    s = rO * _csqrt(outer) - tau * rI * _csqrt(gI * p.xi**2 + z * z)
    return complex(s)


def band_hamiltonian(c: CavityModel, p: CotangentPoint) -> float:
    """``(rho_O^2 |xi|^2_O - rho_I^2 tau^2 |xi|^2_I) / (rho_O^2 + rho_I^2 tau^2)``."""
    rO, rI, tau, gO, gI = _coeffs(c, p.index)
    num = rO**2 * gO * p.xi**2 - rI**2 * tau**2 * gI * p.xi**2
    return num / (rO**2 + rI**2 * tau**2)


def dispersion_momentum(c: CavityModel) -> np.ndarray:
    """Positive root ``xi*`` of the principal dispersion at ``z = 1``, per sample.

    ``xi*^2 = (rho_O^2 + tau^2 rho_I^2) / (rho_O^2 gO - tau^2 rho_I^2 gI)``;
    NaN where the denominator is not positive.
    """
    D = c.jump()
    num = c.rho_out**2 + c.tau**2 * c.rho_in**2
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(D > 0, np.sqrt(num / np.where(D > 0, D, 1.0)), np.nan)


def principal_quasi_eigenvalue(c: CavityModel, m: int) -> float:
    """Frequency at which mode m meets the principal dispersion zero.

    Solves ``s(xi = m/(a lambda); z = 1) = 0``; for the index problem this
    is ``lambda_m = m sqrt((n-1)/n) / a``.
    """
    if not c.constant:
        raise ValueError("requires constant coefficients along the boundary")
    if validate_jump(c).regime is not Regime.PLASMONIC:
        raise NoSolution("no real dispersion zero outside the plasmonic regime")
    a = _radius(c)
    xi_star = float(dispersion_momentum(c)[0])
    return abs(m) / (a * xi_star)


def camo_quasi_eigenvalue(n: float, boundary_length: float, j: int) -> float:
    """Closed-form comparison ladder ``2 pi j (n-1) / (n |boundary|)``."""
    if not n > 1:
        raise ValueError("formula stated for n > 1")
    return 2 * math.pi * j * (n - 1) / (n * boundary_length)


def has_real_zero(c: CavityModel, i: int, xi_max: float = 100.0, samples: int = 20001) -> bool:
    """Whether ``xi -> s(xi; 1)`` changes sign on ``gO xi^2 > 1`` at sample i."""
    rO, rI, tau, gO, gI = _coeffs(c, i)
    lo = 1.0 / math.sqrt(gO) * (1 + 1e-9)
    xs = np.linspace(lo, xi_max, samples)
    s = rO * np.sqrt(gO * xs**2 - 1) - tau * rI * np.sqrt(gI * xs**2 + 1)
    return bool(np.any(np.sign(s[:-1]) != np.sign(s[1:])))


def _radius(c: CavityModel) -> float:
    b = c.boundary
    if hasattr(b, "radius"):
        return float(b.radius)
    # circle sampled as a curve
    k = np.asarray(b.curvature)
    if np.ptp(k) > 1e-9 * abs(k[0]):
        raise ValueError("rotationally symmetric boundary required")
    return 1.0 / float(k[0])
