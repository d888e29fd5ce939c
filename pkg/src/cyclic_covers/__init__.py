"""Point counts on cyclic covers y^m = f(x) over finite fields.

Exact arithmetic over GF(p^e), power-free polynomial families, limit
distributions of affine point counts and restricted zeta sums.
"""
from .field import GF, FieldElement, PowerClassifier, make_classifier, make_field
from .poly import (
    NotPowerFree,
    Polynomial,
    PowerFreeDecomposition,
    is_squarefree,
    powerfree_decompose,
    squarefree_decompose,
    weighted_degree,
)
from .families import (
    FamilySpec,
    ValueConstraint,
    count_constrained,
    count_family,
    count_powerfree,
    enumerate_family,
    predicted_constrained_count,
    sample_family,
)
from .curves import count_points, genus, genus_weight, make_curve
from .distributions import convolve, empirical_distribution, limit_rv, total_variation
from .zeta import ZetaQuery, restricted_sqfree_closed, restricted_sqfree_partial, tail_bound, zeta_closed

__version__ = "0.1.0"
