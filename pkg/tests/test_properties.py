"""Randomised invariants (hypothesis)."""
import math

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from plasmonres import specfun
from plasmonres.cavity import Curve, Disk, from_index
from plasmonres.dispersion import CotangentPoint, principal_quasi_eigenvalue, surface_symbol
from plasmonres.rootfind import Rect, Resonance, localize, scan_modes, winding_count
from plasmonres.secular import SecularContext, dtn_eigenvalues, eval_F
from plasmonres.weylcount import exact_count, region_volume

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
SLOW = settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])

modes = st.integers(0, 40)
args = st.builds(complex, st.floats(1.0, 30.0), st.floats(-1.0, 1.0))


def _riccati(L, m, w, sign):
    h = 1e-5 * abs(w)
    dL = (L(m, w + h) - L(m, w - h)) / (2 * h)
    v = L(m, w)
    return abs(dL + v / w + v * v - sign * (1 + sign * m * m / (w * w)))


@FAST
@given(modes, args)
def test_riccati_I(m, w):
    L = lambda m, z: complex(specfun.log_deriv_I(m, z))  # noqa: E731
    assert _riccati(L, m, w, 1) <= 1e-8 * max(1.0, abs(L(m, w)) ** 2)


@FAST
@given(modes, st.builds(complex, st.floats(1.0, 30.0), st.floats(-1.0, 0.0)))
def test_riccati_H(m, w):
    L = lambda m, z: complex(specfun.log_deriv_H1(m, z))  # noqa: E731
    assert _riccati(L, m, w, -1) <= 1e-8 * max(1.0, abs(L(m, w)) ** 2)


@FAST
@given(modes, st.floats(1.1, 10.0), st.builds(complex, st.floats(5, 30), st.floats(-0.3, 0.3)))
def test_mode_symmetry_and_dtn_identity(m, n, lam):
    ctx = SecularContext(m, n)
    assert abs(eval_F(ctx, lam) - eval_F(SecularContext(-m, n), lam)) <= 1e-12 * (1 + abs(eval_F(ctx, lam)))
    inner, outer = dtn_eigenvalues(ctx, lam)
    assert abs((outer - inner) + lam * eval_F(ctx, lam)) <= 1e-10 * (abs(outer) + abs(inner))


@FAST
@given(st.integers(0, 40), st.floats(5, 30), st.floats(1e-3, 1e-1), st.booleans())
def test_interior_dtn_sign(m, re, im, upper):
    lam = complex(re, im if upper else -im)
    inner, _ = dtn_eigenvalues(SecularContext(m, 3.0), lam)
    assert np.sign((lam * lam).imag) * inner.imag > 0


@FAST
@given(st.floats(1.05, 20.0), st.floats(0.2, 3.0))
def test_symbol_zero_on_dispersion_set(n, z):
    c = from_index(n, Disk())
    xi = z * math.sqrt(n / (n - 1))
    assert abs(surface_symbol(c, CotangentPoint(0, xi), z)) <= 1e-12 * max(1.0, xi)


@FAST
@given(st.floats(1.05, 20.0), st.integers(1, 200), st.floats(0.2, 5.0))
def test_principal_homogeneity(n, m, a):
    c1, ca = from_index(n, Disk()), from_index(n, Disk(a))
    v = principal_quasi_eigenvalue(c1, m)
    assert math.isclose(principal_quasi_eigenvalue(ca, m), v / a, rel_tol=1e-12)
    assert math.isclose(principal_quasi_eigenvalue(c1, 2 * m), 2 * v, rel_tol=1e-12)


@FAST
@given(st.lists(st.builds(complex, st.floats(-1.9, 1.9), st.floats(-1.9, 1.9)), min_size=1, max_size=5))
def test_winding_counts_polynomial_zeros(roots):
    rect = Rect(-1.0, 1.0, -1.0, 1.0)
    # keep the edges clear of zeros
    roots = [r for r in roots if min(abs(abs(r.real) - 1), abs(abs(r.imag) - 1)) > 0.05]

    def f(z):
        z = np.asarray(z, dtype=complex)
        return sum(np.log(z - r) for r in roots) if roots else np.zeros_like(z)

    inside = sum(1 for r in roots if rect.contains(r))
    assert winding_count(f, rect) == inside


@FAST
@given(st.lists(st.builds(complex, st.floats(0.1, 2.9), st.floats(0.1, 1.9)), min_size=1, max_size=4,
                unique_by=lambda z: (round(z.real, 1), round(z.imag, 1))))
def test_localize_independent_of_rect_split(roots):
    assume(all(min(abs(r.real - x) for x in (0, 1.5, 3)) > 0.05 and min(r.imag, 2 - r.imag) > 0.05
               for r in roots))

    def f(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return sum(np.log(z - r) for r in roots)

    def df(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return sum(1 / (z - r) for r in roots)

    whole = sorted(localize(f, df, Rect(0, 3, 0, 2)), key=lambda r: (r.lam.real, r.lam.imag))
    halves = localize(f, df, Rect(0, 1.5, 0, 2)) + localize(f, df, Rect(1.5, 3, 0, 2))
    halves = sorted(halves, key=lambda r: (r.lam.real, r.lam.imag))
    assert sum(r.multiplicity for r in whole) == len(roots)
    assert len(whole) == len(halves)
    assert all(abs(a.lam - b.lam) <= 1e-8 for a, b in zip(whole, halves))


@SLOW
@given(st.sampled_from([8, 12, 16]), st.floats(0.5, 3.0))
def test_root_radius_scaling(m, a):
    r1 = scan_modes(3.0, 1.0, [m], Rect(5, 14, -0.5, -1e-9)).resonances
    ra = scan_modes(3.0, a, [m], Rect(5 / a, 14 / a, -0.5 / a, -1e-9)).resonances
    assert len(r1) == len(ra) == 1
    assert abs(ra[0].lam * a - r1[0].lam) <= 1e-8 * abs(r1[0].lam)


@FAST
@given(st.lists(st.tuples(st.integers(-10, 30), st.floats(0, 40), st.floats(0, 1)), max_size=30),
       st.floats(0, 40), st.floats(0, 40), st.floats(0.01, 1.0))
def test_exact_count_monotone(data, l1, l2, depth):
    rs = [Resonance(complex(x, -y), abs(m), 1, 0.0, 0) for m, x, y in data]
    lo, hi = sorted((l1, l2))
    assert exact_count(rs, lo, depth) <= exact_count(rs, hi, depth)
    assert exact_count(rs, hi, depth) <= exact_count(rs, hi, depth + 0.5)


@FAST
@given(st.floats(1.2, 5.0), st.floats(0.0, 0.9), st.integers(64, 200))
def test_volume_converged_in_samples(base, amp, samples):
    n = lambda t: base + amp * (base - 1) * np.cos(t)  # noqa: E731
    v1 = region_volume(from_index(n, Curve.circle(samples=samples))).volume
    v2 = region_volume(from_index(n, Curve.circle(samples=2 * samples))).volume
    assert abs(v1 - v2) <= 1e-8 * v2
