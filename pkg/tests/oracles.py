"""Independent reference values: mpmath power series at 50 digits.

Nothing here calls the package or scipy.  The series are summed until the
terms fall below the working precision, which is ample for |w| <= 30.
"""
from __future__ import annotations

import mpmath as mp

mp.mp.dps = 50


def _series(m, w, sign):
    # sum_k (sign w^2/4)^k / (k! (k+m)!) * (w/2)^m
    w = mp.mpc(w)
    q = sign * (w / 2) ** 2
    term = (w / 2) ** m / mp.factorial(m)
    total = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + m))
        total += term
        if abs(term) < mp.mpf(10) ** (-mp.mp.dps) * max(abs(total), 1) and k > 5:
            return total


def I(m, w):
    return _series(abs(m), w, 1)


def J(m, w):
    return _series(abs(m), w, -1)


def Y(m, w):
    """Integer-order Y_m from the logarithmic series (principal branch)."""
    m = abs(int(m))
    w = mp.mpc(w)
    half = w / 2
    out = 2 / mp.pi * J(m, w) * mp.log(half)
    s1 = mp.mpf(0)
    for k in range(m):
        s1 += mp.factorial(m - k - 1) / mp.factorial(k) * half ** (2 * k - m)
    out -= s1 / mp.pi
    q = -(half**2)
    term = half**m / mp.factorial(m)
    s2 = (mp.digamma(1) + mp.digamma(m + 1)) * term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + m))
        add = (mp.digamma(k + 1) + mp.digamma(m + k + 1)) * term
        s2 += add
        if abs(add) < mp.mpf(10) ** (-mp.mp.dps) * max(abs(s2), 1) and k > 5:
            break
    return out - s2 / mp.pi


def H1(m, w):
    return J(m, w) + 1j * Y(m, w)


def dI(m, w):
    # I_m' = I_{m+1} + (m/w) I_m
    return I(m + 1, w) + m / mp.mpc(w) * I(m, w)


def dH1(m, w):
    # H_m' = H_{m-1} - (m/w) H_m, with H_{-1} = -H_1
    prev = -H1(1, w) if m == 0 else H1(m - 1, w)
    return prev - m / mp.mpc(w) * H1(m, w)


def log_deriv_I(m, w) -> complex:
    return complex(dI(m, w) / I(m, w))


def log_deriv_H1(m, w) -> complex:
    return complex(dH1(m, w) / H1(m, w))


def ratio(f, m, w1, w2) -> complex:
    return complex(f(m, w1) / f(m, w2))
