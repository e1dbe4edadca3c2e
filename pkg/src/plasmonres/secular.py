"""Per-mode transmission determinant for the disk.

For the index problem on the disk of radius ``a``

    div(n^{-1} grad u) = lambda^2 u     (r < a)
    (-Delta - lambda^2) u = 0           (r > a),  outgoing
    u continuous,  d_r u_out = -n^{-1} d_r u_in   at r = a,

the mode ``e^{i m theta}`` has interior solution ``I_m(sqrt(n) lambda r)``
(since ``Delta u = n lambda^2 u``) and exterior solution
``H_m^{(1)}(lambda r)``.  Normalising both to 1 at ``r = a`` the flux
condition becomes

    F_m(lambda) = L_H(m, a lambda) + n^{-1/2} L_I(m, a sqrt(n) lambda) = 0,

with ``L_H``, ``L_I`` the logarithmic derivatives.  ``F_m`` has poles at
zeros of ``H_m`` and ``I_m``; winding counts therefore use

    Fhat_m = I_m(v) H_m(w) F_m(lambda) e^{-v} e^{-i w},  v = a sqrt(n) lambda, w = a lambda,

which is analytic in the cut plane and carries the same zeros.

``interior_exponent`` generalises the interior wavenumber to
``n**p * lambda`` with flux weight ``n**(p-1)``; ``p = 1/2`` is the index
problem above and the default everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import NearPole, PoleProximity

MIN_INDEX_GAP = 1e-6


@dataclass(frozen=True)
class SecularContext:
    m: int
    n: float
    a: float = 1.0
    interior_exponent: float = 0.5

    def __post_init__(self):
        if not self.n > 0:
            raise ValueError("index must be positive")
        if abs(self.n - 1.0) < MIN_INDEX_GAP:
            raise ValueError("n = 1 violates the jump condition")
        if not self.a > 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "m", int(self.m))

    @property
    def order(self) -> int:
        return abs(self.m)

    @property
    def interior_scale(self) -> float:
        """Interior wavenumber per unit lambda (``n**p``)."""
        return self.n ** self.interior_exponent

    @property
    def flux_weight(self) -> float:
        """Coefficient of ``L_I`` in ``F_m`` (``n**(p-1)``)."""
        return self.n ** (self.interior_exponent - 1.0)

    def args(self, lam):
        lam = np.asarray(lam, dtype=complex)
        return self.a * self.interior_scale * lam, self.a * lam


def _out(x):
    x = np.asarray(x)
    return complex(x) if x.ndim == 0 else x


def _components(ctx: SecularContext, lam):
    v, w = ctx.args(lam)
    try:
        LH = np.asarray(specfun.log_deriv_H1(ctx.order, w))
    except NearPole as exc:
        raise PoleProximity(str(exc)) from exc
    LI = np.asarray(specfun.log_deriv_I(ctx.order, v))
    return v, w, LI, LH


def eval_F(ctx: SecularContext, lam):
    """``F_m(lambda) = L_H(m, a lambda) + n^{p-1} L_I(m, a n^p lambda)``."""
    _, _, LI, LH = _components(ctx, lam)
    return _out(LH + ctx.flux_weight * LI)


def log_Fhat(ctx: SecularContext, lam):
    """Complex logarithm of the pole-free, exponentially scaled ``Fhat_m``."""
    v, w, LI, LH = _components(ctx, lam)
    F = LH + ctx.flux_weight * LI
    try:
        logH = np.asarray(specfun.log_H1(ctx.order, w))
    except NearPole as exc:
        raise PoleProximity(str(exc)) from exc
    logI = np.asarray(specfun.log_I(ctx.order, v))
    with np.errstate(divide="ignore"):
        out = logI + logH + np.log(F) - v - 1j * w
    return _out(out)


def eval_logF_deriv(ctx: SecularContext, lam):
    """``d/dlambda log Fhat_m`` assembled from the Riccati equations.

    ``L_I' = -L_I/v - L_I^2 + 1 + m^2/v^2`` and
    ``L_H' = -L_H/w - L_H^2 - 1 + m^2/w^2``.
    """
    v, w, LI, LH = _components(ctx, lam)
    m2 = float(ctx.order) ** 2
    dv = ctx.a * ctx.interior_scale
    dw = ctx.a
    c = ctx.flux_weight
    dLI = -LI / v - LI**2 + 1.0 + m2 / v**2
    dLH = -LH / w - LH**2 - 1.0 + m2 / w**2
    F = LH + c * LI
    dF = dw * dLH + c * dv * dLI
    return _out(dv * LI + dw * LH + dF / F - dv - 1j * dw)


def dtn_eigenvalues(ctx: SecularContext, lam):
    """Mode-``m`` eigenvalues of the weighted interior and exterior DtN maps.

    interior = ``n^{-1} d_r log u_in`` at ``r = a`` (outward normal of the
    cavity); exterior = ``-d_r log u_out`` (outward normal of the exterior
    points to ``-r``).  By construction ``exterior - interior = -lambda F_m``.
    """
    lam = np.asarray(lam, dtype=complex)
    _, _, LI, LH = _components(ctx, lam)
    interior = ctx.flux_weight * lam * LI
    exterior = -lam * LH
    return _out(interior), _out(exterior)
