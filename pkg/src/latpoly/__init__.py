"""Exact lattice geometry: unimodular sequences, legal loops and lattice multi-polygons."""

from .errors import ConsistencyError, GenerationError, LatticeError, ValidationError
from .lattice_core import Vec
from .legal_loop import LegalLoop, dual, twelve_point_report
from .multi_polygon import MultiPolygon, Triple, count_sharp, ehrhart, simplify
from .unimodular import UnimodularSequence, rotation_by_reduction, rotation_formula

__version__ = "0.1.0"
