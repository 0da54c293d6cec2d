"""Double-threshold digraphs: representability, lambda, and lambda-bounded optimization."""

from .approx import ApproxResult, clique_cover_approx, coloring_approx, independent_set_approx
from .clique import (
    enumerate_k_cliques,
    max_clique_approx,
    max_clique_exact,
    max_clique_with_ordering,
    max_weight_clique_with_ordering,
)
from .dag import (
    Dag,
    DegeneracyClass,
    Hop,
    build_dag,
    classify_degenerate,
    hops,
    is_transitive,
    topological_sort,
)
from .errors import DtdError
from .feasibility import (
    ForcingCycle,
    Thresholds,
    UtilityAssignment,
    check_feasible,
    relax_edges,
    relax_hops,
    verify_assignment,
    verify_forcing_cycle,
)
from .lambda_solver import LambdaCertificate, certify_lambda, compute_lambda, min_cycle_mean

__version__ = "0.1.0"
