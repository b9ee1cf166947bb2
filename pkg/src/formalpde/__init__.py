"""Exact-arithmetic analysis of linear constant-coefficient PDE systems.

Formal integrability and completion, Spencer delta-cohomology and Cartan
characters, Hilbert series, Macaulay inverse systems, and purity through
relative localization, all over exact rational (or rational-function)
arithmetic.
"""

from .completion import (
    CharacteristicMatrix,
    IntegrabilityReport,
    characteristic_matrix,
    codimension,
    complete,
    projection_surjective,
)
from .hilbert import PowerSeries, compare, hilbert_function, principal_class_series
from .inverse import (
    ModularEquation,
    Section,
    generating_sections,
    section_basis,
    socle,
    spencer_apply,
    top_generators,
)
from .jetspace import JetCoordinate, class_of, class_count, monomial_count, multi_indices
from .parser import ParseError, SystemDocument, parse, render
from .pdesystem import (
    CoordinateChange,
    Equation,
    JetSpaceSlice,
    LinearSystem,
    change_coordinates,
    first_order_companion,
    projected_system,
    prolong,
    slice_at,
    stable_dimension,
)
from .purity import (
    LocalizedSystem,
    PurityReport,
    is_pure,
    localize,
    localized_dimension,
    torsion_generators,
)
from .ratlinalg import ExactMatrix, ParamScalar, Poly, Scalar, kernel_basis, rank, rref
from .spencer import (
    DeltaReport,
    JanetTableau,
    SymbolSpace,
    cohomology,
    delta_matrix,
    is_involutive_symbol,
    janet_tableau,
    symbol,
)

__version__ = "0.1.0"
