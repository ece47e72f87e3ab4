"""Exact computations for the type II theta correspondence in coordinates.

Submodules
----------
scalars, fields, linalg, laurent
    Exact arithmetic: Q[v, 1/v] with v a formal square root of q, finite
    fields and their quadratic extensions, Q(v), matrices, Berkowitz
    characteristic polynomials, Laurent polynomials.
rallis
    The Rallis map on symmetric Laurent invariants and its dual on points.
supports
    Theta on supercuspidal supports, duality, inductive relations, mod-ell
    comparisons.
tame
    Tame parameters (F, sigma), the block-matrix transfer and word invariants.
strata
    Rank strata of n x m matrices over F_q.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .fields import GF, QQ, QV, Specialization, specialize
from .laurent import LaurentPoly, elementary, monomial_symmetric, symmetrize
from .linalg import Matrix, charpoly, divide_exact
from .rallis import ParameterPoint, RallisMap, apply_rallis, build_rallis, invariant_preimage, point_image
from .scalars import ONE, V, BaseScalar, RingContext, vpow
from .strata import StrataReport, enumerate_strata, orbit_transitivity_check, stabilizer_order
from .supports import (
    UNRAMIFIED,
    CuspidalSymbol,
    Support,
    UnramifiedTwist,
    support_equal,
    theta_inductive_check,
    theta_support,
    trivial_rep_support,
    twist_support,
)
from .tame import (
    InvariantVector,
    Letter,
    TameParam,
    Word,
    check_tame,
    l_theta,
    pullback_coefficients,
    satake_crosscheck,
    word_invariants,
)
