"""Finite commutative monoids acted on by finite abelian groups.

Order-ideals, quotients, isomorphism theorems and composition series,
with a small-instance corpus for exhaustive checks.
"""
__version__ = "0.1.0"

from .errors import (
    GammaMonoidError,
    ParseError,
    PreconditionViolated,
    SizeLimit,
    ValidationError,
    WellDefinednessFailure,
)
from .monoid import (
    Monoid,
    Verdict,
    is_cancellative,
    is_conical,
    is_refinement,
    leq,
    minimal_elements,
    refinement_witness,
    validate_monoid,
)
from .action import (
    GammaStructure,
    Group,
    automorphism_group,
    cyclic_action,
    orbit,
    orbits,
    trivial_action,
    validate_action,
    validate_group,
)
from .ideals import (
    IdealLattice,
    IdealSet,
    all_order_ideals,
    generated_ideal,
    ideal_intersect,
    ideal_sum,
    is_normal,
    is_order_ideal,
)
from .iso import canonical_form, find_gamma_isomorphism
from .quotients import (
    check_butterfly,
    check_lemma_sum_quotient,
    check_zassenhaus,
    first_iso_check,
    quotient,
    third_iso_check,
)
from .series import (
    Series,
    all_composition_series,
    chain_condition_report,
    classify_simple,
    minimal_ideal_series,
    schreier_refinement,
    series_equivalent,
    split_and_reassemble,
)
from .corpus import builtin, corpus_instances, enumerate_monoids
from .fileformat import format_instance, load_instance, parse_instance
