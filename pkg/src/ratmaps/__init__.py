"""Exact symbolic computation with rational maps of transcendence degree <= 2.

The library provides sparse multivariate polynomial and rational-function
arithmetic over the rationals and prime fields, the homogenization
correspondence between univariate and bivariate tuples, gcd-under-
substitution, GL2 equivalence of field generators, integrality decisions on
the projective line, and a complete checker for the generalized
quasi-translation condition JH.H = tr JH.H.
"""

from .errors import (
    InternalCheckError,
    ParseError,
    PreconditionError,
    RatmapError,
)
from .expressions import elaborate, elaborate_map, elaborate_poly, parse
from .fields import Fp, PrimeField, QQ, Rationals, field_arith, roots_in_K
from .gordan_noether import (
    GNWitness,
    bivariate_core_check,
    classical_gn_condition,
    constant_span_bound,
    flem_conclude,
    gn_classify,
    gquasi_invariance,
    nilpotent_jacobian,
    qt_condition,
    translation_invariance,
)
from .homog import (
    HomogTuple,
    UniTuple,
    dehomogenize,
    degree_formula,
    divisor_transport,
    divisor_transport_inverse,
    hfc_decompose,
    homogenize,
)
from .integrality import (
    IntegralityResult,
    ProjPoint,
    ReducedPair,
    integral_over_KG,
    integral_over_Kg,
    pqtrans,
    regenerate_integral,
    valuation,
    valuation_fraction,
    valuation_laws_check,
)
from .polyring import (
    DegreePair,
    Poly,
    PolyRing,
    RatFunc,
    RatMap,
    degrees,
    gcd_many,
    is_primitive,
    jacobian,
    poly_arith,
    primitive_part,
    print_canonical,
    subst,
)
from .subfield import (
    EnotherChain,
    LurothWitness,
    Mobius,
    enother_chain,
    gcd_subst_homog,
    gcd_subst_uni,
    hmgrk2_verify,
    luroth_generator_1var,
    member_Kp,
    member_Kpq,
    mobius_equiv,
    trdeg_bounded_dependence,
    trdeg_rank,
    unit_combination,
)

__version__ = "0.1.0"
