"""Combinatorics of contextuality and nonlocality on hypergraph scenarios.

Scenarios are hypergraphs of outcomes and measurements; models are exact
rational vertex weightings normalized on every edge.  The library decides
membership in the classical / level-n relaxed / exclusivity-consistent /
general model sets, with exact-rational polytope decisions and
tolerance-certified semidefinite decisions, and computes the weighted graph
invariants that characterize them.
"""

__version__ = "0.1.0"

from .catalog import (
    CatalogEntry,
    antiprism,
    bell_boxes,
    catalog_get,
    catalog_list,
    circular,
    csw_transfer,
    cycle_scenario,
    dual_scenario,
    j_scenario,
    ks_18,
    matching_scenario,
    pr_box,
    special_scenarios,
    tsirelson_box,
    yan_extension,
)
from .equivalence import EquivClassTable, completion_check, saturate_equivalences
from .graphs import (
    WeightedGraph,
    alpha,
    alpha_star,
    blow_up,
    capacity_bounds,
    disjoint_union,
    find_odd_hole,
    lovasz_theta,
    strong_product,
)
from .hierarchy import (
    MomentProblem,
    build_moment_problem,
    ce_infinity,
    ce_level,
    ece_membership,
    perfection_report,
    q1_membership_theta,
    q1_optimize,
    q_membership,
)
from .models import (
    ProbModel,
    enumerate_deterministic,
    no_signaling_check,
    tensor_models,
    validate_model,
)
from .polytope import (
    Certificate,
    ExtremalModel,
    allows_classical,
    allows_general,
    check_certificate,
    extremal_models,
    g_dimension,
    is_classical,
    maximize_over_classical,
    maximize_over_general,
)
from .products import (
    ProductKind,
    bell_scenario,
    direct_product,
    fr_product,
    max_product,
    min_product,
)
from .scenario import (
    Scenario,
    induced_subscenario,
    new_scenario,
    non_orthogonality_graph,
)
from .solvers import LinearProgram, SdpProblem, SolveReport, lp_solve, sdp_solve

__all__ = [name for name in dir() if not name.startswith("_")]
