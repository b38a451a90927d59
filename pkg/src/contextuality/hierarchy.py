"""Moment-matrix relaxations and exclusivity principles.

The level-n relaxation asks for a PSD matrix indexed by vertex strings of
length at most n with normalization, edge-sum and orthogonality-zero
structure, pinned to a candidate model on the single-letter row.  Level 1
has an equivalent fast path through the weighted Lovász number of the
non-orthogonality graph, and that number also certifies consistency with
exclusivity at all parallel-copy levels; the exact per-level check is a
weighted independence number on a strong power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import DimensionCap
from .graphs import alpha, find_odd_hole, lovasz_theta, strong_power
from .models import ProbModel
from .polytope import Certificate
from .scenario import Scenario, non_orthogonality_graph
from .solvers import SDP_DIM_CAP, SdpProblem, sdp_solve

__all__ = [
    "MomentProblem",
    "canonical_index",
    "build_moment_problem",
    "q_membership",
    "q1_membership_theta",
    "q1_optimize",
    "ce_level",
    "ce_infinity",
    "ece_membership",
    "perfection_report",
]


def canonical_index(s: Scenario, letters) -> tuple | None:
    """Canonical form of a vertex string: erase repeats, zero out orthogonals.

    Adjacent equal letters collapse to one; adjacent orthogonal letters
    (sharing an edge) make the whole index vanish, reported as ``None``.
    The map is idempotent.
    """
    out = []
    for v in letters:
        if out and out[-1] == v:
            continue
        if out and s.orthogonal(out[-1], v):
            return None
        out.append(v)
    return tuple(out)


def _index_set(s: Scenario, n: int):
    """All canonical indices of length <= n, in (length, lexicographic) order."""
    levels = [[()]]
    for _ in range(n):
        nxt = []
        seen = set()
        for prefix in levels[-1]:
            for v in s.vertices:
                if prefix and prefix[-1] == v:
                    continue
                if prefix and s.orthogonal(prefix[-1], v):
                    continue
                word = prefix + (v,)
                if word not in seen:
                    seen.add(word)
                    nxt.append(word)
        levels.append(sorted(nxt))
    out = []
    for level in levels:
        out.extend(level)
    return out


@dataclass
class MomentProblem:
    """A moment-matrix feasibility/optimization problem over a scenario."""

    scenario: Scenario
    level: int
    indices: tuple
    sdp: SdpProblem


def _entry(coeffs: dict, i: int, j: int, c: float):
    """Accumulate c * X_ij (counting the ij entry once) into a coeff dict."""
    if i == j:
        coeffs[(i, i)] = coeffs.get((i, i), 0.0) + c
    else:
        key = (i, j) if i < j else (j, i)
        coeffs[key] = coeffs.get(key, 0.0) + c / 2.0


def build_moment_problem(
    s: Scenario,
    p: ProbModel | None,
    n: int,
    objective: dict | None = None,
    classical_symmetry: bool = False,
) -> MomentProblem:
    """Assemble the level-n moment SDP for scenario ``s``.

    With a model ``p`` the single-letter column is pinned to its weights
    (membership testing); with ``objective`` (a rational vertex functional)
    the problem instead maximizes the functional on that column.

    ``classical_symmetry`` additionally identifies entries whose row index
    is a permutation of another's, which turns the level-n problem into a
    relaxation of the classical set; experimental beyond feasibility sanity.
    """
    if n < 1:
        raise ValueError("hierarchy level must be >= 1")
    indices = _index_set(s, n)
    d = len(indices)
    if d > SDP_DIM_CAP:
        raise DimensionCap(f"moment matrix order {d} exceeds cap {SDP_DIM_CAP}")
    pos = {w: i for i, w in enumerate(indices)}

    constraints = []
    seen_rows = set()

    def push(coeffs: dict, rhs: float):
        frozen = (tuple(sorted((k, round(v, 12)) for k, v in coeffs.items())), round(rhs, 12))
        if frozen in seen_rows or not coeffs:
            return
        seen_rows.add(frozen)
        constraints.append((coeffs, rhs))

    # normalization of the empty word
    push({(0, 0): 1.0}, 1.0)

    # edge sums: sum_x M[vx, w] = M[v, w] for every edge and all columns
    short = [w for w in indices if len(w) < n]
    for v in short:
        iv = pos[v]
        for e in s.edges:
            for w in indices:
                iw = pos[w]
                coeffs: dict = {}
                for x in e:
                    word = canonical_index(s, v + (x,))
                    if word is None:
                        continue
                    _entry(coeffs, pos[word], iw, 1.0)
                _entry(coeffs, iv, iw, -1.0)
                coeffs = {k: c for k, c in coeffs.items() if abs(c) > 1e-15}
                push(coeffs, 0.0)

    # orthogonality zeros: last letters sharing an edge kill the entry
    for a in range(1, d):
        for b in range(a, d):
            u, w = indices[a], indices[b]
            if s.orthogonal(u[-1], w[-1]):
                coeffs = {}
                _entry(coeffs, a, b, 1.0)
                push(coeffs, 0.0)

    # pins to the tested model
    if p is not None:
        for v in s.vertices:
            coeffs = {}
            _entry(coeffs, 0, pos[(v,)], 1.0)
            push(coeffs, float(p.weights[v]))

    if classical_symmetry:
        for w in indices:
            if len(w) < 2:
                continue
            for perm in permutations(w):
                word = canonical_index(s, perm)
                if word is None or word == w or word not in pos:
                    continue
                for col in indices:
                    coeffs = {}
                    _entry(coeffs, pos[w], pos[col], 1.0)
                    _entry(coeffs, pos[word], pos[col], -1.0)
                    coeffs = {k: c for k, c in coeffs.items() if abs(c) > 1e-15}
                    push(coeffs, 0.0)

    obj = None
    if objective is not None:
        obj = {}
        for v, c in objective.items():
            _entry(obj, 0, pos[(v,)], float(Fraction(c)))
    sdp = SdpProblem(
        dim=d, constraints=constraints, objective=obj, trace_bound=float(d)
    )
    return MomentProblem(scenario=s, level=n, indices=tuple(indices), sdp=sdp)


def q_membership(s: Scenario, p: ProbModel, n: int, tol: float = 1e-7):
    """Level-n moment-matrix membership: ``in``/``out``/``inconclusive``."""
    problem = build_moment_problem(s, p, n)
    report = sdp_solve(problem.sdp, tol=tol)
    verdict = {
        "feasible": "in",
        "optimal": "in",
        "infeasible": "out",
        "inconclusive": "inconclusive",
    }[report.status]
    return verdict, report


def q1_membership_theta(s: Scenario, p: ProbModel, tol: float = 1e-5):
    """Level-1 membership through the weighted Lovász number.

    ``in`` iff theta(NO(s), p) <= 1 + tol; the number is always >= 1 for a
    valid model (asserted up to solver tolerance).
    """
    graph = non_orthogonality_graph(s).with_weights(p.weights)
    report = lovasz_theta(graph)
    value = report.value
    assert value >= 1 - 100 * tol, f"theta of a valid model fell below 1: {value}"
    if report.status in ("optimal", "feasible"):
        verdict = "in" if value <= 1 + tol else "out"
    else:
        verdict = "inconclusive"
    return verdict, value, report


def q1_optimize(s: Scenario, objective: dict, tol: float = 1e-7) -> float:
    """Maximum of a rational vertex functional over the level-1 relaxation."""
    problem = build_moment_problem(s, None, 1, objective=objective)
    report = sdp_solve(problem.sdp, tol=tol)
    return report.value


def ce_level(s: Scenario, p: ProbModel, n: int, alpha_node_cap: int | None = None):
    """Consistency with exclusivity at n parallel copies; exact.

    True iff the weighted independence number of the n-th strong power of
    the non-orthogonality graph under the product weights is at most 1.
    A failure returns the violating independent set as a certificate.
    """
    graph = non_orthogonality_graph(s).with_weights(p.weights)
    support = [v for v in graph.vertices if graph.weights[v] > 0]
    pruned = graph.subgraph(support)
    power = strong_power(pruned, n) if n > 1 else pruned
    kwargs = {} if alpha_node_cap is None else {"node_cap": alpha_node_cap}
    value, witness = alpha(power, **kwargs)
    cert = Certificate(
        "independent_set",
        {"scenario": s.name, "power": n, "vertices": list(witness), "weight": value},
    )
    return value <= 1, cert


def ce_infinity(s: Scenario, p: ProbModel, max_power: int = 2, tol: float = 1e-5):
    """Three-valued exclusivity-at-all-levels verdict.

    ``in`` when theta certifies level-1 quantum-relaxation membership (which
    implies every level); ``out`` when some power up to ``max_power`` has an
    exact violation; ``unknown`` otherwise, carrying both bounds.
    """
    verdict, value, report = q1_membership_theta(s, p, tol=tol)
    if verdict == "in":
        return "in", Certificate(
            "sdp_report",
            {"scenario": s.name, "theta": value, "residuals": report.residuals},
        )
    for n in range(1, max_power + 1):
        ok, cert = ce_level(s, p, n)
        if not ok:
            return "out", cert
    return "unknown", Certificate(
        "sdp_report",
        {
            "scenario": s.name,
            "theta": value,
            "residuals": report.residuals,
            "alpha_checked_to": max_power,
        },
    )


def ece_membership(s: Scenario, p: ProbModel, tol: float = 1e-5):
    """Extended-exclusivity decision: identical to the level-1 theta test.

    The principle closes exclusivity under tensoring with arbitrary quantum
    partners, and that closure is exactly the level-1 relaxation.
    """
    return q1_membership_theta(s, p, tol=tol)


def perfection_report(s: Scenario, cycle_cap: int | None = None, cross_check: bool = True):
    """Search the non-orthogonality graph and its complement for odd holes.

    ``perfect`` (exhaustive) means classical = exclusivity-consistent models
    for this scenario; that implication is cross-checked on the extreme
    points when the scenario is small.  With a cap below the vertex count
    the negative answer degrades to ``no hole found up to cap``.
    """
    graph = non_orthogonality_graph(s)
    nvert = len(graph.vertices)
    cap = cycle_cap if cycle_cap is not None else nvert
    hole = find_odd_hole(graph, max_len=cap)
    cohole = find_odd_hole(graph.complement(), max_len=cap) if hole is None else None
    if hole is not None or cohole is not None:
        report = {
            "no_graph_perfect": "not_perfect",
            "hole": list(hole) if hole else None,
            "complement_hole": list(cohole) if cohole else None,
            "implication": "no conclusion: perfection fails",
        }
        return report
    if cap < nvert:
        return {
            "no_graph_perfect": f"no hole found up to cap {cap}",
            "hole": None,
            "complement_hole": None,
            "implication": "inconclusive below the exhaustive cap",
        }
    report = {
        "no_graph_perfect": "perfect",
        "hole": None,
        "complement_hole": None,
        "implication": "classical models coincide with exclusivity-consistent models",
    }
    if cross_check and nvert <= 24:
        from .polytope import extremal_models, is_classical

        agree = True
        for em in extremal_models(s)[:8]:
            classical, _ = is_classical(em.model)
            exclusive, _ = ce_level(s, em.model, 1)
            if classical != exclusive:
                agree = False
                break
        report["cross_check"] = "agree" if agree else "DISAGREE"
    return report
