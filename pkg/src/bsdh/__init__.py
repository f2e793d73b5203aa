"""Cohomology of the tangent bundle of Bott-Samelson-Demazure-Hansen varieties in type C_n."""

from . import bmod, cartan, coh, ledger, linalg, weyl

__version__ = "0.1.0"

__all__ = ["bmod", "cartan", "coh", "ledger", "linalg", "weyl", "__version__"]
