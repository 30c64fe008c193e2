"""Two-photon edge diffraction: amplitudes, patterns, counts and fits."""

from ._core import *  # noqa: F401,F403
from ._core import Error, Method, SetupGeometry, SourceModel

__all__ = [name for name in dir() if not name.startswith("_")]


def reference_setup():
    """Geometry and source with d1=50 cm, d2=28 cm, d3=22 cm, y1=0.15 mm,
    y2=1.52 mm, 810 nm and sigma=0.85 mm."""
    return (
        SetupGeometry(0.50, 0.28, 0.22, 0.15e-3, 1.52e-3),
        SourceModel(810e-9, 0.85e-3),
    )
