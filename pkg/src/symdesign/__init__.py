"""Automorphism constraints for symmetric (v, k, lambda) designs.

Verification of designs, the fixed-structure lemmas evaluated on concrete
automorphisms, an exact fixed-point case analyzer, and small constructive
searches (difference sets, prescribed automorphism groups, Aut(D)).
"""

from .analyzer import (
    INVOLUTION_FACT_81,
    KnownFact,
    PrimeReport,
    TheoremReport,
    analyze_prime,
    analyze_prime_power_element,
    commuting_pair,
    default_facts,
    feasible_block_fixed_counts,
    feasible_fixed_counts,
    full_report,
    pgroup_integrality,
    replay_trace,
)
from .errors import *  # noqa: F401,F403
from .incidence import Design, DesignParams, complement, make_design, parse_design, serialize_design
from .lemmas import (
    FixedData,
    LemmaReport,
    PrimeVerdict,
    fixed_bound_max,
    fixed_structure,
    is_automorphism,
    lemma_suite,
    prime_admissible,
)
from .permgroup import (
    BurnsideResult,
    GroupSpec,
    Perm,
    burnside,
    burnside_from_counts,
    compose,
    format_cycles,
    group_closure,
    orbits,
    parse_cycles,
    perm_order,
    power,
)
from .search import (
    AutGroupResult,
    SearchLimits,
    automorphism_group,
    cyclic_shift,
    develop,
    is_difference_set,
    run_invariant_search,
    search_difference_sets,
    search_invariant_designs,
)

__version__ = "0.1.0"
