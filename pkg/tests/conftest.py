import json
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))


def cplx(pair):
    return complex(pair[0], pair[1])


@pytest.fixture(scope="session")
def fixtures():
    return json.loads((HERE / "fixtures" / "oracles.json").read_text())


@pytest.fixture(scope="session")
def exact_roots(fixtures):
    """Frozen mpmath roots of the index disk, n = 3, keyed by mode."""
    return {r["m"]: cplx(r["value"]) for r in fixtures["roots_n3"] if r["interior_exponent"] == 0.5}


@pytest.fixture(scope="session")
def n3_resonances():
    from plasmonres.rootfind import Rect, scan_modes

    rep = scan_modes(3.0, 1.0, [8, 10, 12, 16, 20, 24], Rect(5.0, 40.0, -0.5, -1e-9))
    assert rep.ok
    return {r.m: r for r in rep.resonances}
