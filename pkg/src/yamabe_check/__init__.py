"""Verification toolkit for the explicit expansion of the boundary Yamabe problem.

Profiles and their Laplacians are handled exactly over the rationals, moments
are reduced to the I_m^alpha symbols, and every exact value is cross-checked
by an independent double-exponential quadrature.
"""

__version__ = "0.1.0"
