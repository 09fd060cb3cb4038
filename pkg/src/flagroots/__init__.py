"""Exact-arithmetic engine for exceptional root systems, painted Dynkin
diagrams with six isotropy summands, and structural equigeodesic
subspaces."""

from .rootsys import (
    CartanMatrix,
    DimensionMismatchError,
    FlagrootsError,
    InvalidCartanError,
    LieType,
    Root,
    RootSystem,
    UndefinedStringError,
    cartan_matrix,
    generate_positive_roots,
    root_system,
    root_system_from_json,
)
from .chevalley import (
    AlgebraElement,
    MixedSystemError,
    StructureConstantTable,
    bracket,
    build_constants,
    project_m,
)
from .flag import (
    G2Kind,
    G2TypeClassification,
    IsotropyModule,
    NotComplementaryRootError,
    NotG2TypeError,
    PaintedDiagram,
    TRoot,
    bracket_inclusion_table,
    g2_type_paintings,
    paint,
)
from .equigeo import (
    CompatibilityGraph,
    EnumerationResult,
    MetricVector,
    StructuralFamily,
    SupportError,
    TangentVector,
    compatibility_graph,
    enumerate_maximal_families,
    equigeodesic_residual,
    is_equigeodesic_all_metrics,
    is_structural_family,
    pair_compatible,
)
from .fixtures import FixtureError, FixtureSet, load_fixture, parse_space, space_diagram

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CartanMatrix",
    "CompatibilityGraph",
    "DimensionMismatchError",
    "EnumerationResult",
    "FixtureError",
    "FixtureSet",
    "FlagrootsError",
    "G2Kind",
    "G2TypeClassification",
    "InvalidCartanError",
    "IsotropyModule",
    "LieType",
    "MetricVector",
    "MixedSystemError",
    "NotComplementaryRootError",
    "NotG2TypeError",
    "PaintedDiagram",
    "Root",
    "RootSystem",
    "StructuralFamily",
    "StructureConstantTable",
    "SupportError",
    "TRoot",
    "TangentVector",
    "UndefinedStringError",
    "bracket",
    "bracket_inclusion_table",
    "build_constants",
    "cartan_matrix",
    "compatibility_graph",
    "enumerate_maximal_families",
    "equigeodesic_residual",
    "g2_type_paintings",
    "generate_positive_roots",
    "is_equigeodesic_all_metrics",
    "is_structural_family",
    "load_fixture",
    "paint",
    "pair_compatible",
    "parse_space",
    "project_m",
    "root_system",
    "root_system_from_json",
    "space_diagram",
]
