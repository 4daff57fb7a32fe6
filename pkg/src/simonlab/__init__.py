"""simonlab: oracles, simulation, and exact query-complexity bounds for
Simon's problem over (Z/2Z)^n."""

from .gf2 import (
    Subspace,
    coset_representative,
    count_containing,
    count_subgroups,
    enumerate_subspaces,
    full_space,
    member,
    orthogonal_complement,
    random_subspace,
    rref,
    trivial_subspace,
)
from .hiding import (
    HidingFunction,
    LazyHidingFunction,
    PartialAssignment,
    QueryCountingOracle,
    all_hiding_functions,
    count_extensions,
    extends,
    hidden_subgroup_of,
    hides,
    random_hiding_function,
    simon_instance,
)
from .polymethod import (
    AcceptanceCurve,
    CurvePoint,
    DegreeReport,
    RationalPolynomial,
    SyntheticAlgorithm,
    acceptance_probability,
    avoidance_probability,
    degree_check,
    estimate_acceptance,
    extension_prob,
    extension_prob_bruteforce,
    extension_prob_constant,
    extension_prob_injective,
    interpolate,
    simon_curve,
    simon_exact_acceptance,
    synthetic_curve,
)
from .polybound import (
    BoundReport,
    ExtremalResult,
    check_degree_bound,
    degree_bound,
    extremal_search,
    frontier_sweep,
    projection_ratio_property,
    query_lower_bound,
)
from .qsim import (
    DecisionOutcome,
    StateVector,
    apply_hadamard_layer,
    apply_oracle,
    classical_decide,
    collision_detection_probability,
    hsp_solve,
    simon_decide,
    simon_round_distribution,
)

__version__ = "0.1.0"
