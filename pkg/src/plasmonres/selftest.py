"""Small invariant suite behind ``plasmonres selftest`` (runs in seconds)."""
from __future__ import annotations

import math

from scipy import special

from . import specfun
from .cavity import Disk, Regime, from_index, validate_jump
from .collar import CollarData, Side, jet
from .dispersion import CotangentPoint
from .modes import synthesize
from .rootfind import Rect, mode_winding_counts, scan_modes
from .secular import SecularContext, eval_F
from .weylcount import region_volume


def _riccati():
    m, w = 7, 4.0 + 1.5j
    h = 1e-5
    L = lambda z: specfun.log_deriv_I(m, z)  # noqa: E731
    dL = (L(w + h) - L(w - h)) / (2 * h)
    res = abs(dL + L(w) / w + L(w) ** 2 - 1 - m**2 / w**2)
    return res < 1e-6, f"residual {res:.2e}"


def _bessel_seed():
    m, w = 5, 3.0 + 1.0j
    ref = special.ivp(m, w) / special.iv(m, w)
    err = abs(specfun.log_deriv_I(m, w) - ref) / abs(ref)
    return err < 1e-12, f"rel err {err:.2e}"


def _regimes():
    got = [validate_jump(from_index(n, Disk())).regime for n in (3.0, 0.5, 1.0)]
    ok = got == [Regime.PLASMONIC, Regime.NON_PLASMONIC, Regime.DEGENERATE]
    return ok, ",".join(g.value for g in got)


def _no_roots_non_plasmonic():
    counts = mode_winding_counts(0.5, 1.0, [5, 20], Rect(5.0, 20.0, -0.5, -1e-6))
    return all(v == 0 for v in counts.values()), str(counts)


def _root_and_field():
    rep = scan_modes(3.0, 1.0, [16], Rect(10.0, 15.0, -0.5, -1e-9))
    if len(rep.resonances) != 1:
        return False, f"{len(rep.resonances)} roots"
    r = rep.resonances[0]
    F = abs(eval_F(SecularContext(16, 3.0), r.lam))
    f = synthesize(from_index(3.0, Disk()), r)
    jump = abs(f.inner_trace - f.outer_trace)
    return F < 1e-8 and jump < 1e-8, f"lambda {r.lam:.6f}, |F| {F:.1e}, trace jump {jump:.1e}"


def _volume():
    vol = region_volume(from_index(3.0, Disk())).volume
    ref = 4 * math.pi * math.sqrt(1.5)
    return abs(vol - ref) < 1e-12 * ref, f"{vol:.12g}"


def _flat_jet():
    p = CotangentPoint(0, 1.7)
    e0 = [jet(CollarData.flat(s, w), p).e0 for s, w in ((Side.EXTERIOR, 1.0), (Side.INTERIOR, -1.0))]
    return all(v == 0 for v in e0), str(e0)


CHECKS = [
    ("riccati_I", _riccati),
    ("log_deriv_I_vs_scipy", _bessel_seed),
    ("regimes", _regimes),
    ("non_plasmonic_winding", _no_roots_non_plasmonic),
    ("root_and_field_continuity", _root_and_field),
    ("phase_space_volume", _volume),
    ("flat_jet", _flat_jet),
]


def run_checks():
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # report, do not abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out


__all__ = ["run_checks", "CHECKS"]
