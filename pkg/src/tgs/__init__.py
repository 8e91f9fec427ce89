"""Combinatorial screening toolkit for rational modules of simple
algebraic groups: root system combinatorics, Weyl orbit bookkeeping,
dimension-counting exclusion bounds, and the triple classifier behind the
``tgs`` command line tool.
"""

__version__ = "0.1.0"

from .rootsys import build_root_system, classify_subsystem  # noqa: F401
from .weights import Triple, INFINITY  # noqa: F401
