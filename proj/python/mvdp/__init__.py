"""Modified van der Pol oscillator toolkit.

Classification of equilibria, invariant-manifold shooting, saddle-connection
detection by parameter bisection, and Z2 connection/transition-matrix
certificates.
"""

from ._mvdp import *  # noqa: F401,F403
from ._mvdp import __version__  # noqa: F401
