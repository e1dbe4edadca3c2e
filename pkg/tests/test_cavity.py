import math

import numpy as np
import pytest

from plasmonres.cavity import (CavityModel, Curve, Disk, Regime, boundary_measure, from_index,
                               validate_jump)
from plasmonres.errors import NonPositiveIndex


def test_from_index_n3_disk():
    c = from_index(3.0, Disk())
    assert np.allclose(c.tau * c.rho_in, 3 ** -0.5)
    assert np.allclose(c.gI_fiber, 1 / 3)
    assert np.allclose(c.rho_out, 1) and np.allclose(c.gO_fiber, 1)
    assert np.all(c.index_n == 3.0)


def test_from_index_d3_coefficients():
    c = from_index(2.0, Disk(), d=3)
    assert c.rho_in[0] == pytest.approx(2 ** -1.5)
    assert c.tau[0] == pytest.approx(2.0)


@pytest.mark.parametrize("n", [0.7, 2.0, 5.5])
def test_index_identities(n):
    c = from_index(n, Disk())
    assert np.allclose(c.tau**2 * c.rho_in**2 * c.gI_fiber, n**-2)


def test_n1_is_degenerate():
    c = from_index(1.0, Disk())
    assert validate_jump(c).regime is Regime.DEGENERATE


def test_regimes_for_constant_index():
    r3 = validate_jump(from_index(3.0, Disk()))
    assert r3.regime is Regime.PLASMONIC
    assert r3.jump_min == pytest.approx(8 / 9)
    rh = validate_jump(from_index(0.5, Disk()))
    assert rh.regime is Regime.NON_PLASMONIC
    assert rh.jump_max == pytest.approx(-3.0)


def test_sign_changing_index_is_degenerate():
    # odd sampling avoids the node at pi where the index touches zero
    c = from_index(lambda t: 2 + 2 * np.cos(t), Curve.ellipse(1.2, 1.0, 127))
    assert validate_jump(c).regime is Regime.DEGENERATE


def test_non_positive_index_rejected():
    with pytest.raises(NonPositiveIndex):
        from_index(0.0, Disk())
    with pytest.raises(NonPositiveIndex):
        from_index(lambda t: np.cos(t), Curve.circle())


def test_disk_requires_constant_coefficients():
    with pytest.raises(ValueError):
        CavityModel(2, Disk(samples=4), [1, 1, 1, 2], 1, 1, 1, 1)


def test_coefficients_must_be_positive():
    with pytest.raises(ValueError):
        CavityModel(2, Disk(samples=4), 1, -1, 1, 1, 1)


@pytest.mark.parametrize("samples", [32, 64, 256])
def test_regime_stable_under_refinement(samples):
    n = lambda t: 2 + 0.5 * np.cos(t)  # noqa: E731
    assert validate_jump(from_index(n, Curve.ellipse(1.5, 1.0, samples))).regime is Regime.PLASMONIC


def test_regime_threshold_respects_delta():
    c = from_index(1.0 + 1e-4, Disk())
    assert validate_jump(c).regime is Regime.PLASMONIC
    assert validate_jump(c, delta=1e-2).regime is Regime.DEGENERATE


def test_curve_length_and_curvature():
    e = Curve.ellipse(2.0, 1.0, 512)
    # Ramanujan's approximation is accurate to ~1e-5 relative at this eccentricity
    h = (2 - 1) ** 2 / (2 + 1) ** 2
    ram = math.pi * 3 * (1 + 3 * h / (10 + math.sqrt(4 - 3 * h)))
    assert e.length() == pytest.approx(ram, rel=1e-5)
    circ = Curve.from_parametrization(lambda t: np.column_stack([2 * np.cos(t), 2 * np.sin(t)]), 64)
    assert np.allclose(circ.curvature, 0.5, atol=1e-6)
    assert circ.length() == pytest.approx(4 * math.pi, rel=1e-8)


def test_boundary_measure():
    assert boundary_measure(Disk(2.0), 2) == pytest.approx(4 * math.pi)
    assert boundary_measure(Disk(1.0), 3) == pytest.approx(4 * math.pi)


def test_regime_report_dict():
    d = validate_jump(from_index(3.0, Disk())).as_dict()
    assert set(d) == {"regime", "jump_min", "jump_max", "threshold"}
    assert d["regime"] == "plasmonic"
