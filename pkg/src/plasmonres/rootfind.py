"""Zero counting and localization in complex rectangles.

Functions are supplied as *log evaluators*: callables mapping an array of
points to complex logarithms ``log|f| + i arg f`` (any branch).  The
winding number is the accumulated change of ``arg f`` around the
rectangle, tracked with adaptive refinement so that no sampled phase jump
exceeds pi/2 and ``log f`` is locally linear between samples.
"""
from __future__ import annotations

import concurrent.futures as cf
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import AmbiguousWinding, BoundaryZero, NewtonDiverged, PlasmonError

log = logging.getLogger(__name__)

LogEvaluator = Callable[[np.ndarray], np.ndarray]

PHASE_STEP_MAX = np.pi / 2
EDGE_FLOOR = 1e-12
ROUNDING_GAP = 0.25
MIDPOINT_TOL = 0.25
NEWTON_MAX_ITER = 50
DEFAULT_TOL = 1e-10
# candidate split fractions tried in order when an edge hits a zero
_SPLITS = (0.5, 0.4637, 0.5371, 0.4129, 0.5813)


@dataclass(frozen=True)
class Rect:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (self.re_min - pad <= z.real <= self.re_max + pad
                and self.im_min - pad <= z.imag <= self.im_max + pad)

    def corners(self):
        return (complex(self.re_min, self.im_min), complex(self.re_max, self.im_min),
                complex(self.re_max, self.im_max), complex(self.re_min, self.im_max))

    @classmethod
    def around(cls, z: complex, half: float) -> "Rect":
        return cls(z.real - half, z.real + half, z.imag - half, z.imag + half)


@dataclass(frozen=True, order=True)
class Resonance:
    """A zero of a mode's secular function.

    ``residual`` is the size of the final Newton correction ``|f/f'|`` at
    ``lam``; ``degeneracy`` is 2 for m != 0 (modes m and -m share the root).
    """

    sort_key: tuple = field(init=False, repr=False, compare=True)
    lam: complex = field(compare=False)
    m: int = field(compare=False)
    multiplicity: int = field(default=1, compare=False)
    residual: float = field(default=0.0, compare=False)
    newton_iters: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sort_key", (round(self.lam.real, 12), self.m, round(self.lam.imag, 12)))

    @property
    def degeneracy(self) -> int:
        return 1 if self.m == 0 else 2


def _wrap(d: np.ndarray) -> np.ndarray:
    return (d + np.pi) % (2 * np.pi) - np.pi


def _edge_phase(f: LogEvaluator, z0: complex, z1: complex, n0: int) -> float:
    """Accumulated phase change of f along the segment z0 -> z1.

    Every interval must turn the phase by less than ``PHASE_STEP_MAX`` and
    pass a midpoint test: ``log f`` at the midpoint must agree with the
    linear interpolation of the endpoint values to ``MIDPOINT_TOL``.  The
    second test catches a zero of order k close to the edge, which turns
    the phase by up to k*pi inside one step and can alias below the bound.
    """
    t = np.linspace(0.0, 1.0, n0 + 1)
    vals = _edge_values(f, z0, z1, t)
    pending = np.ones(n0, dtype=bool)
    while True:
        d = _wrap(np.diff(vals.imag))
        bad = np.abs(d) >= PHASE_STEP_MAX
        todo = bad | pending
        if not todo.any():
            return float(np.sum(d))
        if np.min(np.diff(t)[todo]) < EDGE_FLOOR:
            raise BoundaryZero(f"phase refinement hit the floor on {z0}->{z1}")
        tm = 0.5 * (t[:-1][todo] + t[1:][todo])
        vm = _edge_values(f, z0, z1, tm)
        va = vals[:-1][todo]
        vb = vals[1:][todo]
        dev = (np.abs(vm.real - 0.5 * (va.real + vb.real))
               + np.abs(_wrap(vm.imag - va.imag) - 0.5 * d[todo]))
        split_again = bad[todo] | (dev >= MIDPOINT_TOL)
        # interleave the new midpoints; halves of failed intervals stay pending
        n_int = len(t) - 1
        new_t = [t[:1]]
        new_v = [vals[:1]]
        new_pending = []
        k = 0
        for i in range(n_int):
            if todo[i]:
                new_t.append([tm[k], t[i + 1]])
                new_v.append([vm[k], vals[i + 1]])
                new_pending.extend([split_again[k], split_again[k]])
                k += 1
            else:
                new_t.append(t[i + 1:i + 2])
                new_v.append(vals[i + 1:i + 2])
                new_pending.append(False)
        t = np.concatenate(new_t)
        vals = np.concatenate(new_v)
        pending = np.array(new_pending, dtype=bool)


def _edge_values(f: LogEvaluator, z0: complex, z1: complex, t: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(z0 + t * (z1 - z0)), dtype=complex)
    if np.any(vals.real == -np.inf):
        raise BoundaryZero(f"f vanishes on the edge {z0}->{z1}")
    if np.any(~np.isfinite(vals)):
        raise BoundaryZero(f"non-finite value on the edge {z0}->{z1}")
    return vals


def _samples(length: float, scale: float) -> int:
    return int(min(4096, max(16, math.ceil(length / scale))))


def winding_phase(f: LogEvaluator, rect: Rect, sample_scale: float | None = None) -> float:
    """Total phase change of f around the rectangle (counterclockwise)."""
    if sample_scale is None:
        sample_scale = max(rect.width, rect.height) / 32
    c = rect.corners()
    total = 0.0
    for z0, z1 in zip(c, c[1:] + c[:1]):
        total += _edge_phase(f, z0, z1, _samples(abs(z1 - z0), sample_scale))
    return total


def winding_count(f: LogEvaluator, rect: Rect, sample_scale: float | None = None) -> int:
    """Number of zeros of f inside ``rect``, counted with multiplicity."""
    turns = winding_phase(f, rect, sample_scale) / (2 * np.pi)
    k = round(turns)
    if abs(turns - k) > ROUNDING_GAP:
        raise AmbiguousWinding(f"winding {turns:.4f} is not near an integer on {rect}")
    return int(k)


def newton(f_logderiv: Callable, z0: complex, tol: float = DEFAULT_TOL,
           max_iter: int = NEWTON_MAX_ITER, bounds: Rect | None = None):
    """Newton iteration ``z <- z - 1/(log f)'(z)``.

    Returns ``(z, iterations, last_step)``.  Raises NewtonDiverged when the
    iterate leaves ``bounds`` or the iteration cap is reached.
    """
    z = complex(z0)
    step = np.inf
    for it in range(1, max_iter + 1):
        try:
            d = complex(np.asarray(f_logderiv(np.array([z])))[0])
        except PlasmonError as exc:
            raise NewtonDiverged(f"evaluation failed at {z}: {exc}") from exc
        if not np.isfinite(d):
            # (log f)' blows up only at a zero of f: the iterate landed on it
            return z, it, 0.0
        if d == 0:
            raise NewtonDiverged(f"log-derivative degenerate at {z}")
        step = 1.0 / d
        z = z - step
        if bounds is not None and not bounds.contains(z):
            raise NewtonDiverged(f"iterate left {bounds}")
        if abs(step) <= tol:
            return z, it, abs(step)
    raise NewtonDiverged(f"no convergence after {max_iter} iterations")


def _split(rect: Rect, fr: float, fi: float) -> list[Rect]:
    """Quadrisect, or bisect along the long side of elongated rectangles."""
    xm = rect.re_min + fr * rect.width
    ym = rect.im_min + fi * rect.height
    if rect.width >= 2 * rect.height:
        return [Rect(rect.re_min, xm, rect.im_min, rect.im_max),
                Rect(xm, rect.re_max, rect.im_min, rect.im_max)]
    if rect.height >= 2 * rect.width:
        return [Rect(rect.re_min, rect.re_max, rect.im_min, ym),
                Rect(rect.re_min, rect.re_max, ym, rect.im_max)]
    return [Rect(rect.re_min, xm, rect.im_min, ym), Rect(xm, rect.re_max, rect.im_min, ym),
            Rect(rect.re_min, xm, ym, rect.im_max), Rect(xm, rect.re_max, ym, rect.im_max)]


def _subdivide(f: LogEvaluator, rect: Rect, count: int, sample_scale):
    last = None
    for k, fr in enumerate(_SPLITS):
        fi = _SPLITS[(k + 2) % len(_SPLITS)]
        parts = _split(rect, fr, fi)
        try:
            counts = [winding_count(f, p, sample_scale) for p in parts]
        except (BoundaryZero, AmbiguousWinding) as exc:
            last = exc
            continue
        if sum(counts) != count:
            last = AmbiguousWinding(f"split counts {counts} do not add up to {count}")
            continue
        return list(zip(parts, counts))
    raise last


def localize(f: LogEvaluator, f_logderiv: Callable, rect: Rect, tol: float = DEFAULT_TOL,
             m: int = 0, count: int | None = None, sample_scale: float | None = None,
             verify: bool = True) -> list[Resonance]:
    """All zeros of f inside ``rect`` refined to ``|step| <= tol``."""
    if count is None:
        count = winding_count(f, rect, sample_scale)
    found: list[Resonance] = []
    stack = [(rect, count)]
    min_size = 10 * tol
    while stack:
        r, k = stack.pop()
        if k == 0:
            continue
        small = max(r.width, r.height) <= min_size
        if k == 1 or small:
            try:
                pad = 0.5 * max(r.width, r.height)
                bounds = Rect(r.re_min - pad, r.re_max + pad, r.im_min - pad, r.im_max + pad)
                z, iters, step = newton(f_logderiv, r.center, tol, bounds=bounds)
                if k == 1 and not r.contains(z, pad=tol):
                    raise NewtonDiverged("converged outside the cell")
                found.append(Resonance(lam=z, m=m, multiplicity=k, residual=step, newton_iters=iters))
                continue
            except NewtonDiverged:
                if small:
                    log.warning("Newton failed in minimal cell %s; reporting center", r)
                    found.append(Resonance(lam=r.center, m=m, multiplicity=k,
                                           residual=max(r.width, r.height), newton_iters=0))
                    continue
        stack.extend(_subdivide(f, r, k, sample_scale))
    found = _merge(found, tol)
    if verify:
        for res in found:
            check = winding_count(f, Rect.around(res.lam, max(5 * tol, 1e-9 * abs(res.lam))))
            if check < 1:
                raise NewtonDiverged(f"root {res.lam} failed winding verification")
    return sorted(found)


def _merge(roots: list[Resonance], tol: float) -> list[Resonance]:
    out: list[Resonance] = []
    for r in sorted(roots):
        for i, q in enumerate(out):
            if abs(q.lam - r.lam) <= 10 * tol:
                out[i] = Resonance(lam=q.lam, m=q.m, multiplicity=q.multiplicity + r.multiplicity,
                                   residual=max(q.residual, r.residual),
                                   newton_iters=max(q.newton_iters, r.newton_iters))
                break
        else:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# mode scans for the disk

@dataclass
class ScanReport:
    resonances: list[Resonance]
    failures: dict[int, str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _scan_one(args):
    from .secular import SecularContext, eval_logF_deriv, log_Fhat

    m, n, a, p, rect, tol = args
    ctx = SecularContext(m, n, a, interior_exponent=p)
    try:
        roots = localize(lambda z: log_Fhat(ctx, z), lambda z: eval_logF_deriv(ctx, z),
                         rect, tol=tol, m=m)
        return m, roots, None
    except PlasmonError as exc:
        return m, [], f"{type(exc).__name__}: {exc}"


def scan_modes(n: float, a: float, m_range: Iterable[int], rect: Rect, tol: float = DEFAULT_TOL,
               workers: int = 1, interior_exponent: float = 0.5,
               mirror: bool = False) -> ScanReport:
    """Localize the zeros of every mode in ``m_range`` inside ``rect``.

    Results are sorted by ``(Re lambda, m)`` and do not depend on
    ``workers``.  With ``mirror`` each root of mode m != 0 is also listed
    under -m.
    """
    jobs = [(int(m), n, a, interior_exponent, rect, tol) for m in sorted(set(m_range))]
    if workers > 1 and len(jobs) > 1:
        with cf.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_one, jobs))
    else:
        results = [_scan_one(j) for j in jobs]
    roots: list[Resonance] = []
    failures: dict[int, str] = {}
    for m, found, err in results:
        if err is not None:
            failures[m] = err
        roots.extend(found)
        if mirror and m != 0:
            roots.extend(Resonance(lam=r.lam, m=-m, multiplicity=r.multiplicity, residual=r.residual,
                                   newton_iters=r.newton_iters) for r in found)
    return ScanReport(sorted(roots), failures)


def mode_winding_counts(n: float, a: float, m_range: Sequence[int], rect: Rect,
                        interior_exponent: float = 0.5) -> dict[int, int]:
    """Winding count of ``Fhat_m`` on ``rect`` for each mode (no localization)."""
    from .secular import SecularContext, log_Fhat

    out = {}
    for m in m_range:
        ctx = SecularContext(m, n, a, interior_exponent=interior_exponent)
        out[int(m)] = winding_count(lambda z: log_Fhat(ctx, z), rect)
    return out
