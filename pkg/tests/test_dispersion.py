import math

import numpy as np
import pytest

from plasmonres.cavity import CavityModel, Disk, Regime, from_index, validate_jump
from plasmonres.dispersion import (CotangentPoint, SemiclassicalPoint, band_hamiltonian,
                                   camo_quasi_eigenvalue, dispersion_momentum, has_real_zero,
                                   principal_quasi_eigenvalue, surface_symbol)
from plasmonres.errors import BranchPoint, NoSolution


def test_symbol_vanishes_at_dispersion_momentum():
    c = from_index(3.0, Disk())
    s = surface_symbol(c, CotangentPoint(0, math.sqrt(1.5)), 1.0)
    assert abs(s) < 1e-15


def test_symbol_at_zero_momentum():
    c = from_index(3.0, Disk())
    s = surface_symbol(c, CotangentPoint(0, 0.0), 1.0)
    assert s == pytest.approx(1j - 3 ** -0.5 * 1.0)
    assert s.imag > 0


def test_symbol_elliptic_when_non_plasmonic():
    c = from_index(0.5, Disk())
    xs = np.linspace(1.001, 100, 2000)
    vals = [abs(surface_symbol(c, CotangentPoint(0, x), 1.0)) for x in xs]
    assert min(vals) > 0.03


def test_branch_point():
    c = from_index(3.0, Disk())
    with pytest.raises(BranchPoint):
        surface_symbol(c, CotangentPoint(0, 1.0), 1.0)


@pytest.mark.parametrize("n", np.linspace(1.1, 10, 20))
def test_zero_set_closed_form(n):
    c = from_index(float(n), Disk())
    xi = math.sqrt(n / (n - 1))
    assert abs(surface_symbol(c, CotangentPoint(0, xi), 1.0)) < 1e-12
    assert dispersion_momentum(c)[0] == pytest.approx(xi, rel=1e-12)


def test_zero_set_lies_on_band_level():
    # {s(., ., z) = 0} is contained in {b = z^2} for real z
    for n in (1.5, 2.0, 3.0, 7.0):
        c = from_index(n, Disk())
        for z in (0.5, 1.0, 2.0):
            xi = z * math.sqrt(n / (n - 1))
            p = CotangentPoint(0, xi)
            assert abs(surface_symbol(c, p, z)) < 1e-12
            assert band_hamiltonian(c, p) == pytest.approx(z * z, rel=1e-12)


def test_band_hamiltonian_n3_value():
    c = from_index(3.0, Disk())
    assert band_hamiltonian(c, CotangentPoint(0, math.sqrt(1.5))) == pytest.approx(1.0)
    assert band_hamiltonian(c, CotangentPoint(0, 0.0)) == 0.0


def test_band_hamiltonian_balanced_coefficients():
    c = CavityModel(2, Disk(samples=8), rho_out=2.0, rho_in=1.0, tau=2.0, gO_fiber=1.3, gI_fiber=1.3)
    for xi in (0.3, 1.0, 4.0):
        assert band_hamiltonian(c, CotangentPoint(0, xi)) == 0.0


def test_principal_quasi_eigenvalues():
    assert principal_quasi_eigenvalue(from_index(3.0, Disk()), 16) == pytest.approx(13.0639, abs=1e-4)
    assert principal_quasi_eigenvalue(from_index(3.0, Disk()), 10) == pytest.approx(8.1650, abs=1e-4)
    assert principal_quasi_eigenvalue(from_index(2.0, Disk()), 10) == pytest.approx(7.0711, abs=1e-4)


def test_principal_linear_in_m_and_inverse_in_radius():
    c1 = from_index(3.0, Disk(1.0))
    c2 = from_index(3.0, Disk(2.5))
    assert principal_quasi_eigenvalue(c1, 14) == pytest.approx(2 * principal_quasi_eigenvalue(c1, 7))
    assert principal_quasi_eigenvalue(c2, 9) == pytest.approx(principal_quasi_eigenvalue(c1, 9) / 2.5)


def test_principal_requires_plasmonic():
    with pytest.raises(NoSolution):
        principal_quasi_eigenvalue(from_index(0.5, Disk()), 5)


def test_principal_near_exact(exact_roots):
    c = from_index(3.0, Disk())
    assert abs(principal_quasi_eigenvalue(c, 10) - exact_roots[10].real) < 0.6


def test_camo_formula():
    assert camo_quasi_eigenvalue(3.0, 2 * math.pi, 16) == pytest.approx(32 / 3)
    assert camo_quasi_eigenvalue(3.0, 2 * math.pi, 0) == 0.0
    with pytest.raises(ValueError):
        camo_quasi_eigenvalue(0.5, 2 * math.pi, 3)


def test_exact_roots_side_with_principal_slope(exact_roots):
    c = from_index(3.0, Disk())
    for m in (16, 24, 30):
        exact = exact_roots[m].real
        principal = principal_quasi_eigenvalue(c, m)
        camo = camo_quasi_eigenvalue(3.0, 2 * math.pi, m)
        assert abs(exact - principal) < abs(exact - camo)


def test_principal_error_decreasing(exact_roots):
    c = from_index(3.0, Disk())
    errs = [abs(exact_roots[m].real - principal_quasi_eigenvalue(c, m)) / exact_roots[m].real
            for m in (8, 12, 16, 20, 24, 30)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("n", [0.3, 0.5, 0.9, 1.2, 2.0, 3.0, 8.0])
def test_real_zero_iff_plasmonic(n):
    c = from_index(n, Disk())
    assert has_real_zero(c, 0) == (validate_jump(c).regime is Regime.PLASMONIC)


def test_semiclassical_point():
    assert SemiclassicalPoint(1 - 0.01j, 0.1).lam == pytest.approx(10 - 0.1j)
