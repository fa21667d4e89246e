"""Exact computation with local maps of Denef type.

Point counts over finite fields, cyclotomic rational functions in
``X, Y_1..Y_m``, their extension to negative field degrees, topological
zeta functions, and grid checks of the identities relating them.
"""

from .errors import *  # noqa: F401,F403
from .ffield import FqElem, FqField, enumerate_field, field_arithmetic, make_field
from .geom import AffineSystem, ConstructibleSet, affine, count_points, parse_constructible, point, torus
from .localmap import (
    LocalMapFormula,
    evaluate,
    evaluate_star,
    make_formula,
    numeric_hat_eval,
    topological,
    uniformize,
)
from .mring import binom_poly, check_membership, numerator_series, red
from .oracles import (
    AlgebraPresentation,
    MonomialIdealSet,
    catalog,
    igusa_principal_exact,
    igusa_truncated,
    subzeta_coeffs,
)
from .ratfun import CycloFactor, CycloRational, equal, invert_vars, parse_cyclo, substitute_pf
from .verify import Grid, Report, equiv_check, funeq_check, uniform_check
from .weil import WeilModel, euler_characteristic, extend_count, fit_recurrence, polynomial_count

__version__ = "0.1.0"
