"""Orthogonality preservers on block matrix algebras.

Thin re-export of the compiled core: elements of direct sums of full matrix
algebras, their triple product structure, superoperator property checks, the
h/r/S decomposition of orthogonality preservers, and one-parameter semigroup
scans.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
