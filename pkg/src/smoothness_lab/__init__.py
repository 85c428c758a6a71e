"""Moduli of smoothness and approximation processes on the torus.

Subpackages
-----------
signal
    Grids, coefficient tables, norms and fractional derivatives.
multipliers
    Summability means, smooth cutoffs, dyadic blocks, interpolation.
smoothness
    Moduli of smoothness, realizations, Besov seminorms.
best_approx
    Best trigonometric and spline approximation, p-variation.
harness
    Two-sided inequality reports and sharpness experiments.
cli
    Batch front-end.
"""

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
