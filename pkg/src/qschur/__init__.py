"""Exact symbolic computation in the quantum Schur algebra S_v(2,d)."""

from .algebra import (
    EKF,
    FKE,
    Context,
    ContextMismatch,
    Element,
    IndexOutOfRange,
    Monomial,
    change_from_kbinom_basis,
    change_to_kbinom_basis,
    commute_power_past_idempotent,
    convert_orientation,
    divided_power_element,
    generator_element,
    identity_element,
    idempotent_element,
    idempotent_mul,
    k_element,
    monomial_element,
    multiply,
    reduce_monomial,
    reduction_defect,
    zero_element,
)
from .laurent import (
    DivisionByZero,
    EvalAtZero,
    LaurentPoly,
    NotDivisible,
    RationalScalar,
    gauss_binomial,
    parse_laurent,
    quantum_factorial,
    quantum_int,
)
from .oracle import (
    CoproductCheckFailed,
    DimensionLimit,
    LaurentMatrix,
    OracleRep,
    build_rep,
    matrix_of_divided_power,
    matrix_of_element,
    oracle_equal,
    span_rank,
    verify_defining_relations,
    verify_lusztig_identities,
)
from .suites import run_suite, run_suites, schur_dimension
from .textio import ParseError, element_from_json, element_to_json, format_element, parse_element

__version__ = "0.1.0"

__all__ = [
    "EKF",
    "FKE",
    "Context",
    "ContextMismatch",
    "CoproductCheckFailed",
    "DimensionLimit",
    "DivisionByZero",
    "Element",
    "EvalAtZero",
    "IndexOutOfRange",
    "LaurentMatrix",
    "LaurentPoly",
    "Monomial",
    "NotDivisible",
    "OracleRep",
    "ParseError",
    "RationalScalar",
    "build_rep",
    "change_from_kbinom_basis",
    "change_to_kbinom_basis",
    "commute_power_past_idempotent",
    "convert_orientation",
    "divided_power_element",
    "element_from_json",
    "element_to_json",
    "format_element",
    "gauss_binomial",
    "generator_element",
    "identity_element",
    "idempotent_element",
    "idempotent_mul",
    "k_element",
    "matrix_of_divided_power",
    "matrix_of_element",
    "monomial_element",
    "multiply",
    "oracle_equal",
    "parse_element",
    "parse_laurent",
    "quantum_factorial",
    "quantum_int",
    "reduce_monomial",
    "reduction_defect",
    "run_suite",
    "run_suites",
    "schur_dimension",
    "span_rank",
    "verify_defining_relations",
    "verify_lusztig_identities",
    "zero_element",
]
