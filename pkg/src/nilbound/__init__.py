"""Exact computations with lower central series quotients of free groups.

Commutator collection in free nilpotent quotients, bounded rewriting over
generating sets whose abelian image has finite diameter, simple closed curve
generating sets on punctured surfaces, and breadth-first diameter estimates.
"""

from .diameter import TruncationSpec, bfs_coverage, distance_profile, truncated_generators
from .errors import BudgetExceeded, NilboundError, NotInLattice, SectionMiss
from .hall import BasicCommutator, HallBasis, QuotientSpec, build_hall_basis, witt_number
from .nilpotent import (
    NormalForm,
    collect,
    equal_mod,
    graded_image,
    nf_multiply,
    verify_power_shift,
    weight_filtration_level,
)
from .rewriter import (
    BoundedRewriter,
    GeneratingSet,
    RewriteCertificate,
    StandardSection,
    SurfaceSection,
    length_bound,
    rewrite,
    verify_certificate,
)
from .surface import SurfaceSpec, christoffel, handle_embed, homology, scc_section
from .symplectic import decompose, is_symplectic
from .words import FreeWord, abelianize, commutator, generalized_commutator, invert, multiply, reduce

__version__ = "0.1.0"

__all__ = [
    "abelianize",
    "BasicCommutator",
    "bfs_coverage",
    "BoundedRewriter",
    "BudgetExceeded",
    "build_hall_basis",
    "christoffel",
    "collect",
    "commutator",
    "decompose",
    "distance_profile",
    "equal_mod",
    "FreeWord",
    "generalized_commutator",
    "GeneratingSet",
    "graded_image",
    "HallBasis",
    "handle_embed",
    "homology",
    "invert",
    "is_symplectic",
    "length_bound",
    "multiply",
    "nf_multiply",
    "NilboundError",
    "NormalForm",
    "NotInLattice",
    "QuotientSpec",
    "reduce",
    "rewrite",
    "RewriteCertificate",
    "scc_section",
    "SectionMiss",
    "StandardSection",
    "SurfaceSection",
    "SurfaceSpec",
    "truncated_generators",
    "TruncationSpec",
    "verify_certificate",
    "verify_power_shift",
    "weight_filtration_level",
    "witt_number",
]
