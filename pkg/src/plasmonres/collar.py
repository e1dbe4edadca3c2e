"""Symbol-level factorization of the Helmholtz operator in a boundary collar.

In Fermi normal coordinates ``(x1, x')`` (``x1`` = distance into the side's
domain, measured in that side's metric) the operator reads

    (hD_1)^2 + h a hD_1 - R(x1, x', hD'),   sigma(R) = omega_0 - |xi'|^2_g(x1),

and is factored as ``(hD_1 + h a~ - iE)(hD_1 + iE)`` with
``E = Op(e1) + h Op(e0) + ...``.  Expanding with the standard composition
rule and ``hD_1 (iE) = iE hD_1 + h d_1 E`` gives

    order h^0:  e1^2 = |xi'|^2 - omega_0
    order h^1:  2 e1 e0 + f1 = 0,
                f1 = -i d_xi e1 d_x' e1 + d_1 e1 + i a~ e1 + r1,

where ``r1`` is the subprincipal symbol of R (zero for rotationally
symmetric collars).  Since ``e1^2 = q - omega_0`` with ``q = |xi'|^2_g``,
every derivative of ``e1`` is ``d q / (2 e1)``, independent of branch.

Geometry enters through the signed curvature: on a side whose domain lies
on the convex side of the boundary (exterior of a disk) the collar volume
grows, ``d_1 log sqrt(g) = kappa`` and ``d_1 q = -2 kappa q``; on the
concave side both signs flip.  ``a = -i d_1 log(sqrt(g) rho)``.

``E/h`` is the normal log-derivative of the decaying solution, so the
per-mode DtN value follows from ``e1 + h e0``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .cavity import CavityModel, Regime, validate_jump
from .dispersion import CotangentPoint, _radius, principal_quasi_eigenvalue
from .errors import DivisionNearZero, NoBracket

E1_FLOOR = 1e-8


class Side(str, enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class CollarData:
    """Boundary jet of the collar operator at one boundary point.

    ``g_fiber`` gives ``q = g_fiber xi^2``; ``curvature`` is measured in the
    side's own metric; ``dq_dx`` is the tangential derivative coefficient
    (``d_x' q = dq_dx * xi^2``); ``a_tilde`` defaults to the pure geometric
    value ``-i sigma kappa`` (sigma = +1 exterior, -1 interior).
    """

    side: Side
    omega0: float
    g_fiber: float
    curvature: float
    a_tilde: complex | None = None
    dq_dx: float = 0.0
    r1: complex = 0.0

    @property
    def sigma(self) -> int:
        return 1 if self.side is Side.EXTERIOR else -1

    @property
    def a(self) -> complex:
        if self.a_tilde is not None:
            return complex(self.a_tilde)
        return -1j * self.sigma * self.curvature

    def q(self, xi: float) -> float:
        return self.g_fiber * xi * xi

    def r0(self, xi: float) -> float:
        return self.omega0 - self.q(xi)

    def dq_dx1(self, xi: float) -> float:
        return -2.0 * self.sigma * self.curvature * self.q(xi)

    @classmethod
    def flat(cls, side: Side, omega0: float, g_fiber: float = 1.0) -> "CollarData":
        return cls(side, omega0, g_fiber, 0.0, a_tilde=0.0)


@dataclass(frozen=True)
class SymbolJet:
    e1: complex
    e0: complex = 0.0
    order: int = 1


def principal_factor(cd: CollarData, p: CotangentPoint, branch: int = -1) -> complex:
    """``e1 = +-i sqrt(omega0 - q)`` (hyperbolic) or ``-sqrt(q - omega0)`` (elliptic).

    On the elliptic side the ``-`` branch is the decaying one; ``branch=+1``
    returns its negative.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    q = cd.q(p.xi)
    if q < cd.omega0:
        return branch * 1j * math.sqrt(cd.omega0 - q)
    root = -math.sqrt(q - cd.omega0)
    return complex(root if branch == -1 else -root)


def next_order(cd: CollarData, p: CotangentPoint, jet: SymbolJet) -> SymbolJet:
    """Return the order-2 jet ``(e1, e0)`` with ``e0 = -f1 / (2 e1)``."""
    e1 = complex(jet.e1)
    if abs(e1) < E1_FLOOR:
        raise DivisionNearZero("principal factor vanishes (glancing set)")
    xi = p.xi
    d1_e1 = cd.dq_dx1(xi) / (2 * e1)
    dxi_e1 = 2 * cd.g_fiber * xi / (2 * e1)
    dx_e1 = cd.dq_dx * xi * xi / (2 * e1)
    f1 = -1j * dxi_e1 * dx_e1 + d1_e1 + 1j * cd.a * e1 + cd.r1
    return SymbolJet(e1=e1, e0=-f1 / (2 * e1), order=2)


def jet(cd: CollarData, p: CotangentPoint, branch: int = -1) -> SymbolJet:
    return next_order(cd, p, SymbolJet(principal_factor(cd, p, branch)))


def disk_collars(c: CavityModel) -> tuple[CollarData, CollarData]:
    """Exterior (omega0 = 1) and interior (omega0 = -1) collar data of a disk."""
    if not c.constant:
        raise ValueError("disk collars need constant coefficients")
    a = _radius(c)
    gO = float(c.gO_fiber[0])
    gI = float(c.gI_fiber[0])
    # a metric g^{ij} = g delta has curvature sqrt(g)/a on the circle r = a
    ext = CollarData(Side.EXTERIOR, 1.0, gO, math.sqrt(gO) / a)
    inn = CollarData(Side.INTERIOR, -1.0, gI, math.sqrt(gI) / a)
    return ext, inn


def corrected_dispersion(c: CavityModel, m: int, lam: float, order: int = 2) -> float:
    """``rho_O (e1 + h e0)_ext - tau rho_I (e1 + h e0)_int`` at ``xi = m/(a lam)``.

    With ``order=1`` only the principal factors are used (this is
    ``-s(xi; 1)``).
    """
    a = _radius(c)
    h = 1.0 / lam
    xi = abs(m) / (a * lam)
    p = CotangentPoint(0, xi)
    ext, inn = disk_collars(c)
    je, ji = jet(ext, p), jet(inn, p)
    ee = je.e1 + (h * je.e0 if order >= 2 else 0.0)
    ei = ji.e1 + (h * ji.e0 if order >= 2 else 0.0)
    val = float(c.rho_out[0]) * ee - float(c.tau[0] * c.rho_in[0]) * ei
    return float(np.real(val))


def corrected_quasi_eigenvalue(c: CavityModel, m: int) -> float:
    """Root in lambda of the first-order corrected dispersion for mode m.

    The bracket is ``[0.5, 1.5] * principal``, clipped below the glancing
    frequency ``m sqrt(gO) / a`` where the exterior factor degenerates.
    """
    if validate_jump(c).regime is not Regime.PLASMONIC:
        raise NoBracket("corrected dispersion needs the plasmonic regime")
    lam0 = principal_quasi_eigenvalue(c, m)
    a = _radius(c)
    glancing = abs(m) * math.sqrt(float(c.gO_fiber[0])) / a
    lo = 0.5 * lam0
    hi = min(1.5 * lam0, glancing * (1 - 1e-9))
    g = lambda x: corrected_dispersion(c, m, x)
    glo, ghi = g(lo), g(hi)
    if not (np.isfinite(glo) and np.isfinite(ghi)) or glo * ghi > 0:
        raise NoBracket(f"no sign change of the corrected dispersion on [{lo}, {hi}]")
    return optimize.brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
