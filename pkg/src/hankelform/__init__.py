"""Exact generalized Hankel transforms d_n^(k) = det H_n^(k).

Covers sequences with a_{n+1} = (alpha + beta/(n+gamma)) a_n through product
formulas, checked against two independent exact determinant algorithms, plus
a prime-factorization heuristic for sequences outside that family.
"""

from .arith import (
    BigRational,
    Factorization,
    FactorTimeout,
    ZeroDenominator,
    factor,
    format_rational,
    generalized_binomial,
    is_probable_prime,
    normalize,
    parse_rational,
)
from .catalog import CatalogEntry, InvalidParams, UnknownEntry, entry, eval_simplified, verify_entry
from .closedform import (
    EvalOutcome,
    MnParams,
    SingularDenominator,
    d_lemma,
    d_principal,
    d_reciprocal,
    det_M,
    det_M_recurrence_step,
    ratio_in_k,
    ratio_in_n,
)
from .detector import DetectorVerdict, FactorizationReport, analyze, default_bound, detect, transform_sequence
from .hankel import (
    HankelMatrix,
    InsufficientTerms,
    TransformValue,
    build_matrix,
    det_bareiss,
    det_condensation,
)
from .recurrence import (
    InvalidGamma,
    RecurrenceSpec,
    SequenceWindow,
    ZeroAlpha,
    ZeroTerm,
    make_spec,
    reciprocal_spec,
    term,
    window,
)

__version__ = "0.1.0"
