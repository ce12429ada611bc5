"""permsol: soluble-connection checks, soluble graphs and radical machinery
for finite permutation groups, plus the arithmetic layer for classical
simple groups."""

from permsol.budgets import (
    Budgets,
    BudgetExceededError,
    DEFAULT_BUDGETS,
    DegreeMismatchError,
    NotSConnectedError,
    TheoremViolationError,
)
from permsol.permcore import (
    ClassReps,
    PermGroup,
    Permutation,
    build_group,
    conjugacy_class_reps,
    conjugate_subgroup,
    contains,
    element_order,
    group_order,
    is_p_element,
)
from permsol.structure import (
    DerivedSeries,
    all_two_generated_soluble,
    commutator_of_subgroups,
    core_of_subgroup,
    derived_series,
    is_p_closed,
    is_soluble,
    non_mersenne_prime_in_range,
    normal_closure,
    soluble_radical,
)
from permsol.connection import (
    ConnectionReport,
    FactorizedGroup,
    check_condition,
    check_condition3,
    make_factorized,
    radical_intersection_check,
    verify_conjugation_lemma,
    verify_main_theorem,
)
from permsol.graphs import (
    PrimeGraph,
    are_independent,
    export_graph,
    prime_graph,
    soluble_graph,
)
from permsol.liearith import (
    AckCertificate,
    FamilyPrimes,
    LieSpec,
    PPartBound,
    ack_certificate,
    family_primes,
    independence_sets_exclude,
    l1_bound,
    simple_group_order,
    zsigmondy,
    zsigmondy_exists,
)
from permsol.groupio import (
    GeneratorFile,
    SubgroupCatalog,
    builtin,
    builtin_corpus,
    catalog_to_json,
    direct_product,
    enumerate_factorizations,
    enumerate_subgroups,
    parse_generators,
    read_generator_file,
    render_generators,
    render_permutation,
    subgroup_intersection,
)

__version__ = "0.1.0"
