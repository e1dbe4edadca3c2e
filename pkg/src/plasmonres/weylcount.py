"""Phase-space volume of the plasmon region and resonance counting.

The region is ``V = {(x', xi') : rho_O^2|xi'|^2_O - rho_I^2 tau^2 |xi'|^2_I
<= rho_O^2 + rho_I^2 tau^2}``; its fiber over each boundary point is the
ball of radius ``xi_max(x')``.  The count of plasmon resonances with
``0 < Re lambda <= L`` is predicted as ``(L / 2 pi)^{d-1} vol(V)``.

In two dimensions ``xi`` is dual to Euclidean arclength ``s``; since
``ds dxi`` is the canonical symplectic measure, ``vol(V) = sum 2 xi_max ds``
independent of the parametrization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cavity import CavityModel, Disk, boundary_measure
from .errors import EmptyFiber, IncompleteScan
from .rootfind import DEFAULT_TOL, Rect, Resonance, ScanReport, scan_modes

DEFAULT_STRIP_DEPTH = 0.5
DEFAULT_MARGIN = 8
SCAN_RE_MIN = 0.05
SCAN_IM_MAX = -1e-9


@dataclass(frozen=True)
class PhaseSpaceRegion:
    xi_max: np.ndarray
    volume: float
    dimension: int


def fiber_radius(c: CavityModel, index: int | None = None):
    """``sqrt((rho_O^2 + tau^2 rho_I^2) / (rho_O^2 gO - tau^2 rho_I^2 gI))``.

    With ``index=None`` returns the array over all boundary samples.
    """
    D = c.jump() if index is None else c.jump()[index]
    if np.any(np.asarray(D) <= 0):
        raise EmptyFiber("plasmon region is empty where the jump is non-positive")
    num = c.rho_out**2 + c.tau**2 * c.rho_in**2
    if index is not None:
        return float(math.sqrt(num[index] / D))
    return np.sqrt(num / D)


def unit_ball_volume(k: int) -> float:
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def region_volume(c: CavityModel) -> PhaseSpaceRegion:
    xi = fiber_radius(c)
    d = c.dimension
    if d == 2:
        # periodic trapezoid rule in the curve parameter
        vol = float(np.sum(2.0 * xi * c.boundary.arclength_weights))
    else:
        if not (isinstance(c.boundary, Disk) and c.constant):
            raise ValueError("d >= 3 volumes are available for constant coefficients on a ball")
        vol = boundary_measure(c.boundary, d) * unit_ball_volume(d - 1) * float(xi[0]) ** (d - 1)
    return PhaseSpaceRegion(xi, vol, d)


def predicted_count(c: CavityModel, lam: float) -> float:
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    region = region_volume(c)
    return (lam / (2 * math.pi)) ** (c.dimension - 1) * region.volume


def mode_cutoff(c: CavityModel, lam: float) -> int:
    """``ceil(lam * a * max xi_max)``: the largest mode that can sit below lam."""
    a = c.boundary.radius if isinstance(c.boundary, Disk) else 1.0
    return int(math.ceil(lam * a * float(np.max(fiber_radius(c)))))


def exact_count(resonances: list[Resonance], lam: float, strip_depth: float = DEFAULT_STRIP_DEPTH,
                m_cutoff: int | None = None) -> int:
    """Number of listed roots with ``0 < Re <= lam`` and ``Im >= -strip_depth``.

    Each root of mode m != 0 counts twice (modes m and -m), unless the list
    already contains negative modes.  Roots beyond ``m_cutoff`` inside the
    window mean the scan did not reach far enough in m.
    """
    mirrored = any(r.m < 0 for r in resonances)
    total = 0
    for r in resonances:
        if not (0 < r.lam.real <= lam and r.lam.imag >= -strip_depth):
            continue
        if m_cutoff is not None and abs(r.m) > m_cutoff:
            raise IncompleteScan(f"mode {r.m} has a root at {r.lam} below lambda={lam}")
        total += r.multiplicity * (1 if mirrored else r.degeneracy)
    return total


@dataclass(frozen=True)
class CountResult:
    exact: int
    predicted: float
    scan: ScanReport

    @property
    def ratio(self) -> float | None:
        return None if self.predicted == 0 else self.exact / self.predicted


def count_disk(c: CavityModel, lam: float, strip_depth: float = DEFAULT_STRIP_DEPTH,
               margin: int = DEFAULT_MARGIN, workers: int = 1, tol: float = DEFAULT_TOL,
               interior_exponent: float = 0.5) -> CountResult:
    """Scan modes ``0..cutoff+margin`` of an index disk and count its roots."""
    if not (isinstance(c.boundary, Disk) and c.index_n is not None and c.constant):
        raise ValueError("exact counting needs a constant-index disk")
    predicted = predicted_count(c, lam)
    cutoff = mode_cutoff(c, lam)
    if lam <= SCAN_RE_MIN:
        return CountResult(0, predicted, ScanReport([], {}))
    rect = Rect(SCAN_RE_MIN, lam, -strip_depth, SCAN_IM_MAX)
    report = scan_modes(float(c.index_n[0]), c.boundary.radius, range(0, cutoff + margin + 1), rect,
                        tol=tol, workers=workers, interior_exponent=interior_exponent)
    exact = exact_count(report.resonances, lam, strip_depth, m_cutoff=cutoff)
    return CountResult(exact, predicted, report)
