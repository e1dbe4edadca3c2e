"""Surface-plasmon scattering resonances of negative-index transmission cavities."""

__version__ = "0.1.0"

from .cavity import CavityModel, Curve, Disk, Regime, from_index, validate_jump  # noqa: E402
from .rootfind import Rect, Resonance, scan_modes  # noqa: E402
from .secular import SecularContext, eval_F  # noqa: E402

__all__ = [
    "CavityModel", "Curve", "Disk", "Regime", "from_index", "validate_jump",
    "Rect", "Resonance", "scan_modes", "SecularContext", "eval_F", "__version__",
]
