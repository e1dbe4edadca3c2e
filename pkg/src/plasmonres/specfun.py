"""Overflow-free Bessel machinery for complex arguments.

Everything here works with logarithmic derivatives, neighbouring-order
ratios and complex logarithms (``log|f| + i arg f``), so that large orders
at small arguments never overflow.

* ``I_{m+1}/I_m`` comes from the continued fraction, evaluated with the
  modified Lentz algorithm.
* ``H_m^{(1)}`` is seeded at orders 0 and 1 (AMOS via ``scipy.special``)
  and carried upward as ratios ``H_k/H_{k-1}``; upward recurrence is the
  stable direction for the Hankel function.

All functions accept scalars or numpy arrays for ``w`` and return arrays
of matching shape (0-d arrays become Python complex).
"""
from __future__ import annotations

import numpy as np
from scipy import special

from .errors import DomainError, NearPole, NoConvergence

CF_TOL = 1e-14
CF_MAX_ITER = 10_000
TINY = 1e-300
W_IM_MAX = 5.0

# 10-point Gauss-Legendre on [0, 1]
_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def _out(x):
    x = np.asarray(x)
    return complex(x) if x.ndim == 0 else x


def _as_complex(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if np.any(w == 0):
        raise DomainError("argument must be nonzero")
    return w


def ratio_I(m: int, w, tol: float = CF_TOL) -> np.ndarray:
    """``I_{m+1}(w) / I_m(w)`` via the continued fraction

    ``1 / (2(m+1)/w + 1 / (2(m+2)/w + ...))`` (modified Lentz).
    """
    m = abs(int(m))
    w = _as_complex(w)
    f = np.full(w.shape, TINY, dtype=complex)
    C = f.copy()
    D = np.zeros_like(f)
    active = np.ones(w.shape, dtype=bool)
    for k in range(1, CF_MAX_ITER + 1):
        b = 2.0 * (m + k) / w
        D = b + D
        D = np.where(np.abs(D) < TINY, TINY, D)
        C = b + 1.0 / C
        C = np.where(np.abs(C) < TINY, TINY, C)
        D = 1.0 / D
        delta = C * D
        f = np.where(active, f * delta, f)
        active &= np.abs(delta - 1.0) > tol
        if not active.any():
            return f
    raise NoConvergence(f"I ratio continued fraction did not converge (m={m})")


def log_deriv_I(m: int, w, tol: float = CF_TOL):
    """``I_m'(w) / I_m(w) = I_{m+1}/I_m + m/w``."""
    m = abs(int(m))
    w = _as_complex(w)
    return _out(ratio_I(m, w, tol) + m / w)


def log_I(m: int, w, tol: float = CF_TOL):
    """Complex logarithm of ``I_m(w)`` (some branch of the phase).

    ``log I_0`` is taken from the exponentially scaled ``ive``; the
    ladder ``I_{k+1}/I_k`` is obtained by backward recurrence from the
    continued-fraction value at the top order.
    """
    m = abs(int(m))
    w = _as_complex(w)
    if np.any(w.real <= 0):
        raise DomainError("log_I requires Re w > 0")
    out = np.log(special.ive(0, w)) + np.abs(w.real)
    if m == 0:
        return _out(out)
    R = ratio_I(m - 1, w, tol)  # I_m / I_{m-1}
    acc = np.log(R)
    for k in range(m - 1, 0, -1):
        # I_k / I_{k-1} = 1 / (2k/w + I_{k+1}/I_k)
        R = 1.0 / (2.0 * k / w + R)
        acc = acc + np.log(R)
    return _out(out + acc)


def _hankel_ladder(m: int, w: np.ndarray):
    """Return ``(log H_0, r_m)`` with ``r_m = H_m / H_{m-1}`` (``r_0`` unused)
    and the accumulated ``sum_{k<=m} log r_k``."""
    if np.any(w.imag < -W_IM_MAX):
        raise DomainError(f"Im w below -{W_IM_MAX} is outside the supported half-plane")
    h0 = special.hankel1e(0, w)
    h1 = special.hankel1e(1, w)
    if np.any(~np.isfinite(h0)) or np.any(~np.isfinite(h1)) or np.any(h0 == 0):
        raise NearPole("Hankel seed evaluation failed")
    log_h0 = np.log(h0) + 1j * w
    r = h1 / h0
    acc = np.log(r)
    for k in range(1, m):
        r = 2.0 * k / w - 1.0 / r
        if np.any(np.abs(r) < TINY) or np.any(~np.isfinite(r)):
            raise NearPole(f"H_{k + 1} vanishes to working precision")
        acc = acc + np.log(r)
    return log_h0, r, acc


def log_deriv_H1(m: int, w, tol: float = CF_TOL):
    """``H_m^{(1)'}(w) / H_m^{(1)}(w)``.

    Uses ``H_0' = -H_1`` and ``H_m' = H_{m-1} - (m/w) H_m`` for m >= 1.
    ``tol`` is accepted for signature symmetry; the recurrence is exact up
    to rounding.
    """
    m = abs(int(m))
    w = _as_complex(w)
    _, r, _ = _hankel_ladder(max(m, 1), w)
    if m == 0:
        return _out(-r)
    return _out(1.0 / r - m / w)


def log_H1(m: int, w):
    """Complex logarithm of ``H_m^{(1)}(w)`` (some branch of the phase)."""
    m = abs(int(m))
    w = _as_complex(w)
    log_h0, _, acc = _hankel_ladder(max(m, 1), w)
    if m == 0:
        return _out(log_h0)
    return _out(log_h0 + acc)


def _integrate_log_deriv(L, w1, w2, max_step_log=0.5):
    """``log f(w1) - log f(w2)`` by integrating ``L = f'/f`` on the segment.

    Targets collinear with the segment through ``w2`` along a common
    direction are handled in one cumulative sweep.  Step lengths obey
    ``|L| * |dw| <= max_step_log`` (using the value at the current node) and
    each step uses 10-point Gauss-Legendre.
    """
    w1 = np.atleast_1d(np.asarray(w1, dtype=complex))
    out = np.zeros(w1.shape, dtype=complex)
    for i, target in enumerate(w1):
        out[i] = _segment_integral(L, complex(target), complex(w2), max_step_log)
    return out


def _segment_integral(L, target, start, max_step_log):
    if target == start:
        return 0j
    seg = target - start
    length = abs(seg)
    t = 0.0
    total = 0j
    while t < 1.0:
        here = start + t * seg
        mag = abs(complex(L(np.array([here]))[0])) if here != 0 else np.inf
        dt = min(1.0 - t, max_step_log / max(mag * length, 1e-300), 0.25)
        # shrink until the far end also respects the bound
        while True:
            there = start + (t + dt) * seg
            if there == 0:
                dt *= 0.5
                continue
            mag_far = abs(complex(L(np.array([there]))[0]))
            if mag_far * dt * length <= max_step_log or dt < 1e-14:
                break
            dt *= 0.5
        nodes = start + (t + dt * _GL_X) * seg
        total += np.sum(_GL_W * L(nodes)) * dt * seg
        t += dt
    return total


def _log_ratio_along_ray(L, w1, w2, max_step_log=0.5):
    """Cumulative version for targets ``w1 = s * w2`` with real ``s > 0``."""
    w1 = np.asarray(w1, dtype=complex)
    s = (w1 / w2).real
    order = np.argsort(s)
    out = np.zeros(w1.shape, dtype=complex)
    # sweep outward and inward from s = 1
    below = [i for i in order if s[i] < 1.0][::-1]
    above = [i for i in order if s[i] >= 1.0]
    for idx in (below, above):
        prev, acc = complex(w2), 0j
        for i in idx:
            acc += _segment_integral(L, complex(w1[i]), prev, max_step_log)
            prev = complex(w1[i])
            out[i] = acc
    return out


def _scaled_ratio(L, m, w1, w2, zero_value):
    w1_arr = np.asarray(w1, dtype=complex)
    w2 = complex(w2)
    if w2 == 0:
        raise DomainError("reference argument must be nonzero")
    flat = w1_arr.ravel()
    logs = np.zeros(flat.shape, dtype=complex)
    zero = flat == 0
    ok = ~zero
    if np.any(ok):
        q = flat[ok] / w2
        if np.allclose(q.imag, 0.0, atol=1e-13) and np.all(q.real > 0):
            logs[ok] = _log_ratio_along_ray(L, flat[ok], w2)
        else:
            logs[ok] = _integrate_log_deriv(L, flat[ok], w2)
    if np.any(zero):
        logs[zero] = zero_value(m, w2)
    log_mag = logs.real.reshape(w1_arr.shape)
    phase = np.exp(1j * logs.imag).reshape(w1_arr.shape)
    if w1_arr.ndim == 0:
        return float(log_mag), complex(phase)
    return log_mag, phase


def scaled_ratio_I(m: int, w1, w2, tol: float = CF_TOL):
    """``I_m(w1) / I_m(w2)`` as ``(log_mag, unit_phase)``.

    ``w1 = 0`` is allowed: ``I_m(0) = 0`` for m > 0 (log_mag = -inf).
    """
    m = abs(int(m))

    def L(w):
        return ratio_I(m, w, tol) + m / w

    def at_zero(m, w2):
        if m > 0:
            return complex(-np.inf, 0.0)
        return -complex(log_I(0, w2))

    return _scaled_ratio(L, m, w1, w2, at_zero)


def scaled_ratio_H1(m: int, w1, w2):
    """``H_m^{(1)}(w1) / H_m^{(1)}(w2)`` as ``(log_mag, unit_phase)``."""
    m = abs(int(m))

    def L(w):
        return np.asarray(log_deriv_H1(m, w))

    def at_zero(m, w2):
        raise DomainError("H_m is singular at 0")

    return _scaled_ratio(L, m, w1, w2, at_zero)
