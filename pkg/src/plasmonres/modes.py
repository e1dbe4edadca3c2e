"""Resonant-state fields of the index disk and their boundary localization.

The mode ``e^{i m theta}`` at a root ``lambda`` of ``F_m`` is

    u(r) = I_m(k r) / I_m(k a)              r <= a,   k = n^p lambda
    u(r) = H_m(lambda r) / H_m(lambda a)    r >= a,

normalised to a unit boundary trace.  Radial profiles are carried as
log-magnitude and unit phase so that deep interior values underflow
gracefully instead of overflowing the Bessel functions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import specfun
from .cavity import CavityModel
from .dispersion import _radius
from .errors import GridTooCoarse
from .rootfind import Resonance

COLLAR_WIDTHS = 3.0
MIN_COLLAR_SAMPLES = 10
FIT_WINDOW = 0.2


@dataclass(frozen=True)
class GridSpec:
    """Piecewise-uniform radial lattice with a refined boundary collar.

    Segments ``[0, a-w]``, ``[a-w, a]``, ``[a, a+w]`` and ``[a+w, r_max]``
    with ``w = collar_widths / Re lambda`` carry the given numbers of
    intervals (rounded up to even counts for Simpson's rule).
    """

    r_max: float | None = None
    n_core: int = 80
    n_collar: int = 60
    n_outer: int = 80
    n_theta: int = 128
    collar_widths: float = COLLAR_WIDTHS

    def refined(self, factor: int) -> "GridSpec":
        return GridSpec(self.r_max, self.n_core * factor, self.n_collar * factor,
                        self.n_outer * factor, self.n_theta, self.collar_widths)


def _even(k: int) -> int:
    k = max(2, int(k))
    return k + (k % 2)


@dataclass(frozen=True)
class ModeField:
    """Samples of a resonant state on a polar lattice.

    ``r`` holds the interior nodes followed by the exterior nodes; the
    boundary ``r = a`` appears once in each part so that ``inner_trace``
    and ``outer_trace`` can be compared.  ``log_mag`` and ``phase`` describe
    the radial profile; the full field is ``profile(r) * e^{i m theta}``.
    """

    r_in: np.ndarray
    r_out: np.ndarray
    theta: np.ndarray
    log_mag_in: np.ndarray
    phase_in: np.ndarray
    log_mag_out: np.ndarray
    phase_out: np.ndarray
    lam: complex
    m: int
    n: float
    a: float
    collar: float
    interior_exponent: float = 0.5

    @property
    def r(self) -> np.ndarray:
        return np.concatenate([self.r_in, self.r_out[1:]])

    @property
    def log_mag(self) -> np.ndarray:
        return np.concatenate([self.log_mag_in, self.log_mag_out[1:]])

    @property
    def phase(self) -> np.ndarray:
        return np.concatenate([self.phase_in, self.phase_out[1:]])

    @property
    def profile(self) -> np.ndarray:
        return np.exp(self.log_mag) * self.phase

    @property
    def samples(self) -> np.ndarray:
        """Complex field of shape ``(len(r), len(theta))``."""
        return self.profile[:, None] * np.exp(1j * self.m * self.theta)[None, :]

    @property
    def inner_trace(self) -> complex:
        return complex(np.exp(self.log_mag_in[-1]) * self.phase_in[-1])

    @property
    def outer_trace(self) -> complex:
        return complex(np.exp(self.log_mag_out[0]) * self.phase_out[0])

    def radial(self, r) -> np.ndarray:
        """Evaluate the radial profile at arbitrary radii in ``[0, inf)``."""
        return radial_profile(self.m, self.n, self.lam, self.a, r, self.interior_exponent)

    def plot_values(self, clip: float | None = None) -> np.ndarray:
        """``Re u`` on the lattice, optionally clamped to ``[-clip, clip]``."""
        re = self.samples.real
        return re if clip is None else np.clip(re, -clip, clip)

    def rows(self):
        """``(r, theta, re_u, im_u, log_abs_u)`` for every lattice node."""
        r, lm, ph = self.r, self.log_mag, self.phase
        for i in range(len(r)):
            rot = np.exp(1j * self.m * self.theta)
            u = np.exp(lm[i]) * ph[i] * rot
            for j, t in enumerate(self.theta):
                yield r[i], t, u[j].real, u[j].imag, lm[i]


def _split_profile(m, n, lam, a, r, p):
    k = n**p * lam
    r = np.asarray(r, dtype=float)
    inside = r <= a
    lm = np.empty(r.shape)
    ph = np.empty(r.shape, dtype=complex)
    if np.any(inside):
        lm[inside], ph[inside] = specfun.scaled_ratio_I(m, k * r[inside], k * a)
    if np.any(~inside):
        lm[~inside], ph[~inside] = specfun.scaled_ratio_H1(m, lam * r[~inside], lam * a)
    return lm, ph


def radial_profile(m: int, n: float, lam: complex, a: float, r, interior_exponent: float = 0.5):
    r = np.atleast_1d(np.asarray(r, dtype=float))
    lm, ph = _split_profile(m, n, complex(lam), a, r, interior_exponent)
    return np.exp(lm) * ph


def radial_grid(a: float, lam: complex, spec: GridSpec):
    r_max = 2 * a if spec.r_max is None else spec.r_max
    w = min(spec.collar_widths / lam.real, 0.5 * a, 0.5 * (r_max - a))
    r_in = np.concatenate([
        np.linspace(0.0, a - w, _even(spec.n_core) + 1),
        np.linspace(a - w, a, _even(spec.n_collar) + 1)[1:],
    ])
    r_out = np.concatenate([
        np.linspace(a, a + w, _even(spec.n_collar) + 1),
        np.linspace(a + w, r_max, _even(spec.n_outer) + 1)[1:],
    ])
    return r_in, r_out, w


def synthesize(c: CavityModel, res: Resonance, grid: GridSpec | None = None,
               interior_exponent: float = 0.5) -> ModeField:
    """Sample the resonant state of ``res`` on a polar lattice."""
    if c.index_n is None or not c.constant:
        raise ValueError("field synthesis needs a constant-index disk")
    grid = grid or GridSpec()
    n = float(c.index_n[0])
    a = _radius(c)
    lam = complex(res.lam)
    if grid.r_max is not None and grid.r_max <= a:
        raise ValueError("r_max must exceed the radius")
    r_in, r_out, w = radial_grid(a, lam, grid)
    k = n**interior_exponent * lam
    lm_in, ph_in = specfun.scaled_ratio_I(res.m, k * r_in, k * a)
    lm_out, ph_out = specfun.scaled_ratio_H1(res.m, lam * r_out, lam * a)
    theta = 2 * np.pi * np.arange(grid.n_theta) / grid.n_theta
    return ModeField(r_in, r_out, theta, lm_in, ph_in, lm_out, ph_out, lam, int(res.m), n, a, w,
                     interior_exponent)


def _simpson_r(r, dens):
    return float(integrate.simpson(dens * r, x=r))


def _segments(f: ModeField):
    """Simpson-compatible pieces of the radial lattice with ``|u|^2``."""
    dens_in = np.exp(2 * f.log_mag_in)
    dens_out = np.exp(2 * f.log_mag_out)
    return (f.r_in, dens_in), (f.r_out, dens_out)


def _check_collar(f: ModeField):
    a, w = f.a, f.collar
    inner = np.count_nonzero((f.r_in >= a - w - 1e-14) & (f.r_in <= a))
    outer = np.count_nonzero((f.r_out >= a) & (f.r_out <= a + w + 1e-14))
    if min(inner, outer) < MIN_COLLAR_SAMPLES:
        raise GridTooCoarse(f"collar of width {w:.3g} holds {min(inner, outer)} samples "
                            f"(need {MIN_COLLAR_SAMPLES})")


def _fit_slope(x, y):
    if len(x) < 5:
        raise GridTooCoarse("fewer than 5 samples in the decay fit window")
    return float(np.polyfit(x, y, 1)[0])


def localization_report(f: ModeField) -> dict:
    """Shell mass fraction and near-boundary exponential decay rates.

    Rates are least-squares slopes of ``log|u|`` against the distance from
    the boundary inside ``|r - a| <= 0.2 a``; a localised state has both
    negative.  The ``*_boundary_rate`` entries are the one-sided derivatives
    of ``log|u|`` at ``r = a`` itself.
    """
    _check_collar(f)
    a, w = f.a, f.collar
    (ri, di), (ro, do) = _segments(f)
    shell_in = ri >= a - w - 1e-14
    shell_out = ro <= a + w + 1e-14
    shell = _simpson_r(ri[shell_in], di[shell_in]) + _simpson_r(ro[shell_out], do[shell_out])
    total = _simpson_r(ri, di) + _simpson_r(ro, do)
    win_in = ri >= a - FIT_WINDOW * a
    win_out = ro <= a + FIT_WINDOW * a
    rate_in = _fit_slope(a - ri[win_in], f.log_mag_in[win_in])
    rate_out = _fit_slope(ro[win_out] - a, f.log_mag_out[win_out])
    return {
        "shell_mass_fraction": shell / total,
        "interior_decay_rate": rate_in,
        "exterior_decay_rate": rate_out,
        "interior_boundary_rate": _one_sided(a - ri[::-1], f.log_mag_in[::-1]),
        "exterior_boundary_rate": _one_sided(ro - a, f.log_mag_out),
    }


def _one_sided(x, y):
    # second-order difference at x[0] on a locally uniform lattice
    h = x[1] - x[0]
    return float((-3 * y[0] + 4 * y[1] - y[2]) / (2 * h))


def trace_ratio(f: ModeField, delta: float, samples: int | None = None) -> float:
    """``||u||_{L2(dist >= delta)} / ||u||_{L2(boundary)}`` on the lattice.

    The region is ``r <= a - delta`` together with ``a + delta <= r <= r_max``.
    The lattice nodes in each piece are completed by the endpoint
    ``a -+ delta``, evaluated directly.
    """
    a = f.a
    if not 0 < delta <= 0.5 * a:
        raise ValueError("delta must lie in (0, a/2]")
    _check_collar(f)
    r_max = f.r_out[-1]
    if a + delta >= r_max:
        raise GridTooCoarse("exterior part of the region lies beyond r_max")
    ri = np.union1d(f.r_in[f.r_in < a - delta], [a - delta])
    ro = np.union1d([a + delta], f.r_out[f.r_out > a + delta])
    if len(ri) < 3 or len(ro) < 3:
        raise GridTooCoarse("too few lattice nodes away from the boundary")
    ui = np.abs(f.radial(ri)) ** 2
    uo = np.abs(f.radial(ro)) ** 2
    # the theta integral of |e^{i m theta}|^2 is 2 pi on both sides
    mass = 2 * np.pi * (_simpson_r(ri, ui) + _simpson_r(ro, uo))
    boundary = 2 * np.pi * a * abs(f.inner_trace) ** 2
    return float(np.sqrt(mass / boundary))
