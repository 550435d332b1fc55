"""Trace-free SU(2) representation varieties of braid-closure links.

The package computes the variety as the fixed-point set of a braid word
acting on a product of 2-spheres, estimates its component census and
dimensions numerically, computes exact knot invariants (reduced Burau /
Alexander / determinant) for cross-validation, and verifies the symplectic
structure on the ambient space: invariance of the 2-form under the action,
vanishing on the mirror-image Lagrangian, the two reference sphere pairings,
the monotonicity ratio, the fixed-point Hessian / Pfaffian identities, and
the contour-winding computation of the sphere-class pairing.
"""

__version__ = "0.1.0"

from .braid import (
    BraidWord,
    Configuration,
    TangentFrame,
    act,
    check_braid_relations,
    closure_components,
    differential,
    knot_by_name,
    load_knot_table,
    parse_braid,
    product_r,
)
from .su2 import AlgebraVector, SpherePoint, UnitQuaternion, ad, conjugate_by, inner, tau_form

__all__ = [
    "AlgebraVector",
    "BraidWord",
    "Configuration",
    "SpherePoint",
    "TangentFrame",
    "UnitQuaternion",
    "act",
    "ad",
    "check_braid_relations",
    "closure_components",
    "conjugate_by",
    "differential",
    "inner",
    "knot_by_name",
    "load_knot_table",
    "parse_braid",
    "product_r",
    "tau_form",
    "__version__",
]
