"""Exact Clifford algebra, charge conjugations and spinor connections with torsion.

Submodules: ``clifford``, ``conjugation``, ``fierz``, ``connection``,
``geometry``, ``superjacobi`` and the ``cli`` driver.
"""
from ._backend import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
