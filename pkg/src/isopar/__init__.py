"""isopar: isoparametric hypersurface polynomial families, verified exactly.

The package builds every classical Cartan-Muenzner polynomial family
(linear, sphere products, the four Cartan cubics, Clifford quartics of
Ferus-Karcher-Muenzner type, Nomizu's quartic), proves the defining
differential identities by exact symbolic algebra over Q(sqrt 3), and
measures principal curvature spectra, Muenzner angle spacing and focal
rank collapse numerically on sampled sphere level sets.
"""

__version__ = "0.1.0"

from .polyalg import Poly, ScalarQ3  # noqa: F401
