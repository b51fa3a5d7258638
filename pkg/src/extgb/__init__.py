"""Exterior-algebra Gröbner bases, term-order coherence, and noncoherent initial ideals."""

from .coherence import (
    CancellationWitness,
    CoherenceVerdict,
    FarkasCertificate,
    expand_certificate,
    is_coherent,
    verify_witness,
)
from .exterior import (
    ExteriorPolynomial,
    Monomial,
    Term,
    add,
    format_poly,
    merge_sign,
    mul_monomial_poly,
    mul_monomials,
    parse_monomial,
    parse_poly,
    scale,
)
from .groebner import (
    GroebnerBasis,
    IdealSpec,
    InitialIdeal,
    complete,
    divides,
    initial_ideal,
    initial_monomial,
    lcm,
    lead_term,
    member,
    quotient,
    reduce,
    s_polynomial,
    t_polynomial,
)
from .orders import (
    AxiomReport,
    Cmp,
    TermOrder,
    WeightVector,
    binary_order,
    complete_self_dual,
    covering_differences,
    from_weights,
    validate_axioms,
)
from .search import search_qualifying_order
from .theorem import build_ideal, certify, check_hypotheses, compare_with_coherent

__version__ = "0.1.0"
