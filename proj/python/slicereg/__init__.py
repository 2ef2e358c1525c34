"""Slice regular operator calculus over quaternions and Clifford algebras.

Thin package wrapper around the compiled extension module. Everything public
lives in ``slicereg._slicereg``; this module re-exports it.
"""

from ._slicereg import *  # noqa: F401,F403
from ._slicereg import __doc__, __version__  # noqa: F401
