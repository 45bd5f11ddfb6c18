"""Khovanov homology over Z, wall-crossing cones for singular knots, and finiteness checks."""

__version__ = "0.1.0"

from .algebra import AbelianGroup, ContractViolation, IntMatrix, LaurentPolynomial
from .complex import (BigradedComplex, ChainMap, HomologyTable, cone, homology, same_homology,
                      shift, tensor)
from .diagram import PDParseError, PlanarDiagram, get_knot, load_table, mirror, parse_pd
from .invariants import jones_oracle, jones_polynomial, skein_check, tor2
from .khovanov import khovanov_complex, khovanov_homology, reduced_complex
from .singular import (SingularDiagram, model_complex, prop3_check, prop4_check,
                       singular_homology, wall_crossing)

__all__ = [
    "AbelianGroup", "BigradedComplex", "ChainMap", "ContractViolation", "HomologyTable",
    "IntMatrix", "LaurentPolynomial", "PDParseError", "PlanarDiagram", "SingularDiagram",
    "cone", "get_knot", "homology", "jones_oracle", "jones_polynomial", "khovanov_complex",
    "khovanov_homology", "load_table", "mirror", "model_complex", "parse_pd", "prop3_check",
    "prop4_check", "reduced_complex", "same_homology", "shift", "singular_homology",
    "skein_check", "tensor", "tor2", "wall_crossing",
]
