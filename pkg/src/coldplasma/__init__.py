"""Toolkit for plane electron oscillations in a cold plasma.

Subpackages and modules:

- :mod:`coldplasma.numerics` -- adaptive RK 5(4) integration, singular quadrature
- :mod:`coldplasma.nonrel` -- nonrelativistic model and its breaking criterion
- :mod:`coldplasma.rel` -- relativistic model, coupled-data and first-period criteria
- :mod:`coldplasma.hill` -- Hill/Floquet classification, small-amplitude asymptotics
- :mod:`coldplasma.twave` -- traveling-wave profiles, critical speeds, periods
- :mod:`coldplasma.eulerian` -- grid solver with compiled/NumPy stepping kernels
- :mod:`coldplasma.cli` -- command-line front end
"""
from . import eulerian, hill, nonrel, numerics, profiles, rel, twave, verdict

__version__ = "0.1.0"

__all__ = [
    "numerics",
    "nonrel",
    "rel",
    "hill",
    "twave",
    "eulerian",
    "profiles",
    "verdict",
    "__version__",
]
