"""Exact evaluation of the (g2, V) invariant of framed links and closed 3-nets."""
from .coeffs import build_table
from .net import Diagram, parse, to_net
from .reduce import Evaluator, invariant
from .ring import FieldValue, LaurentPoly

__version__ = "0.1.0"

__all__ = ["Diagram", "Evaluator", "FieldValue", "LaurentPoly", "build_table", "invariant",
           "parse", "to_net", "__version__"]
