"""Free products of fusion rings, polygonal coherence and Fuss-Catalan diagram algebras."""

from .fusion import FusionRing, FusionSum, LabelError, RingError, SU2Ring, TableRing, load_ring, resolve_ring, su2_ring
from .free_product import UNIT, Concat, FormalSum, FormulaProfile, FreeProductRing, Letter, Word, WordError
from .laurent import (
    Genericity,
    LaurentPoly,
    NumericParam,
    RationalAngle,
    Verdict,
    is_generic,
    parse_param,
    quantum_int,
)
from .polygon import (
    CoherenceReport,
    LabeledPolygon,
    Polygon,
    Triangulation,
    coherence_check,
    enumerate_triangulations,
    fan_triangulation,
    flip,
    flips,
    length,
    polygon_dim,
    shortcut,
)
from .fusscatalan import (
    AlgebraElement,
    FCAlgebra,
    PlanarDiagram,
    boundary_word,
    dim_formula,
    enumerate_basis,
    enumerate_module_basis,
    markov_trace,
    multiply,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
