"""The general and classical model polytopes, with certified decisions.

Everything here is decided in exact rational arithmetic: feasibility and
membership questions return machine-checkable certificates (a witness
model, an exact transversal, a Farkas refutation, a convex decomposition,
or a separating inequality), and :func:`check_certificate` re-verifies them
from scratch trusting nothing but the payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, EmptyPolytope
from .models import ProbModel, enumerate_deterministic, validate_model
from .rational import format_rational, parse_rational
from .scenario import Scenario, induced_subscenario
from .solvers import EQ, LinearProgram, check_farkas, exact_rank, lp_solve

__all__ = [
    "Certificate",
    "ExtremalModel",
    "allows_general",
    "allows_classical",
    "is_classical",
    "g_dimension",
    "extremal_models",
    "maximize_over_general",
    "maximize_over_classical",
    "check_certificate",
    "normalization_lp",
]

SUPPORT_CAP = 100_000


@dataclass
class Certificate:
    """Typed machine-checkable witness attached to every decision."""

    kind: str  # model | transversal | farkas | convex_decomposition |
    #            separating_inequality | exhausted_search | independent_set |
    #            sdp_report
    payload: dict

    def to_jsonable(self):
        def conv(x):
            if isinstance(x, Fraction):
                return format_rational(x)
            if isinstance(x, dict):
                return {str(k): conv(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [conv(v) for v in x]
            return x

        return {"kind": self.kind, "payload": conv(self.payload)}


def normalization_lp(s: Scenario, objective=None) -> LinearProgram:
    """The defining LP of the general-model polytope: edge sums = 1, p >= 0.

    Rows follow the canonical edge order of ``s`` so certificates indexed by
    row are reproducible.
    """
    idx = {v: i for i, v in enumerate(s.vertices)}
    lp = LinearProgram(num_vars=len(s.vertices), objective=objective)
    for e in s.edges:
        lp.add_row({idx[v]: Fraction(1) for v in e}, EQ, Fraction(1))
    return lp


def _model_from_vector(s: Scenario, x, name="") -> ProbModel:
    return validate_model(s, {v: x[i] for i, v in enumerate(s.vertices)}, name=name)


def allows_general(s: Scenario):
    """Does the scenario admit any probabilistic model at all?

    Returns ``(True, model certificate)`` or ``(False, farkas certificate)``;
    the Farkas multipliers are indexed by the canonical edge order.
    """
    report = lp_solve(normalization_lp(s))
    if report.status == "infeasible":
        y = report.certificate["y"]
        return False, Certificate("farkas", {"scenario": s.name, "y": y})
    model = _model_from_vector(s, report.witness, name="witness")
    return True, Certificate("model", {"scenario": s.name, "weights": model.weights})


def allows_classical(s: Scenario, node_cap: int = 1_000_000):
    """Does the scenario admit a deterministic model (exact transversal)?"""
    stats = {}
    found = enumerate_deterministic(s, node_cap=node_cap, limit=1, stats=stats)
    if found:
        return True, Certificate(
            "transversal", {"scenario": s.name, "vertices": list(found[0].support())}
        )
    return False, Certificate(
        "exhausted_search", {"scenario": s.name, "nodes": stats.get("nodes", 0)}
    )


def is_classical(p: ProbModel):
    """Is the model a convex combination of deterministic models?

    Decided by an exact LP over the full deterministic set.  Positive
    answers carry the decomposition; negative answers carry a separating
    inequality obtained from LP duality, satisfied by every deterministic
    model but violated by ``p``.
    """
    s = p.scenario
    dets = enumerate_deterministic(s)
    if not dets:
        cert = Certificate(
            "separating_inequality",
            {
                "scenario": s.name,
                "functional": {v: Fraction(0) for v in s.vertices},
                "bound": Fraction(-1),
                "note": "no deterministic models exist",
            },
        )
        return False, cert
    lp = LinearProgram(num_vars=len(dets))
    lp.add_row({i: Fraction(1) for i in range(len(dets))}, EQ, Fraction(1))
    for v in s.vertices:
        lp.add_row(
            {i: d.weights[v] for i, d in enumerate(dets) if d.weights[v] != 0},
            EQ,
            p.weights[v],
        )
    report = lp_solve(lp)
    if report.status == "infeasible":
        y = report.certificate["y"]
        functional = {v: y[1 + i] for i, v in enumerate(s.vertices)}
        bound = -y[0]
        return False, Certificate(
            "separating_inequality",
            {"scenario": s.name, "functional": functional, "bound": bound},
        )
    lam = report.witness
    terms = [
        {"coefficient": lam[i], "support": list(d.support())}
        for i, d in enumerate(dets)
        if lam[i] != 0
    ]
    return True, Certificate(
        "convex_decomposition", {"scenario": s.name, "terms": terms}
    )


def maximize_over_general(s: Scenario, objective: dict):
    """Exact maximum of a rational vertex functional over all models of s."""
    idx = {v: i for i, v in enumerate(s.vertices)}
    obj = [Fraction(0)] * len(s.vertices)
    for v, c in objective.items():
        obj[idx[v]] = parse_rational(c)
    report = lp_solve(normalization_lp(s, objective=obj))
    if report.status == "infeasible":
        raise EmptyPolytope(f"{s.name} admits no probabilistic model")
    return report.value, _model_from_vector(s, report.witness, name="argmax")


def maximize_over_classical(s: Scenario, objective: dict):
    """Exact maximum of a rational vertex functional over classical models.

    The maximum over a polytope is attained at a vertex, so this is a scan
    over the deterministic models.
    """
    dets = enumerate_deterministic(s)
    if not dets:
        raise EmptyPolytope(f"{s.name} admits no classical model")
    objective = {v: parse_rational(c) for v, c in objective.items()}

    def value(d):
        return sum((objective.get(v, Fraction(0)) * d.weights[v] for v in s.vertices), Fraction(0))

    best = max(dets, key=lambda d: (value(d), d.vector()))
    return value(best), best


# ---------------------------------------------------------------------------
# Affine dimension and extremal enumeration
# ---------------------------------------------------------------------------


def _forced_zeros(s: Scenario):
    """Vertices provably zero in every model, by cheap sound propagation.

    Rules: a singleton (restricted) edge forces its vertex to 1; a vertex
    forced to 1 forces its edge-mates to 0; a restricted edge contained in
    another forces the difference to 0.  Returns ``None`` when propagation
    derives a contradiction (the polytope is empty).
    """
    forced0: set = set()
    forced1: set = set()
    while True:
        live_edges = set()
        for e in s.edges:
            cut = frozenset(v for v in e if v not in forced0)
            if not cut:
                return None
            live_edges.add(cut)
        new0: set = set()
        new1: set = set()
        for e in live_edges:
            if len(e) == 1:
                new1.update(e)
        edges_list = sorted(live_edges, key=len)
        for i, small in enumerate(edges_list):
            for big in edges_list[i + 1 :]:
                if small < big:
                    new0.update(big - small)
        for u in new1:
            for k in s.edges_of(u):
                new0.update(v for v in s.edges[k] if v != u)
        if new1 & (forced0 | new0):
            return None
        if new0 <= forced0 and new1 <= forced1:
            return forced0
        forced0 |= new0
        forced1 |= new1


def _tight_support(s: Scenario):
    """The implicit-equality closure of the model polytope of ``s``.

    Returns ``(T, pbar)`` where T is the set of vertices that are positive
    somewhere on the polytope and pbar a model positive on all of T, or
    ``None`` when the polytope is empty.

    Cheap propagation first settles the combinatorially forced zeros; the
    rest of the closure takes one feasibility LP plus one sum-maximization
    per support-growth step (each either certifies all remaining suspects
    zero at once or enlarges the support).
    """
    forced0 = _forced_zeros(s)
    if forced0 is None:
        return None
    n = len(s.vertices)
    report = lp_solve(normalization_lp(s))
    if report.status == "infeasible":
        return None
    pbar = list(report.witness)
    unconfirmed = {
        i for i in range(n) if pbar[i] == 0 and s.vertices[i] not in forced0
    }
    while unconfirmed:
        obj = {i: Fraction(1) for i in unconfirmed}
        sub = lp_solve(normalization_lp(s, objective=obj))
        if sub.value == 0:
            break
        pbar = [(a + b) / 2 for a, b in zip(pbar, sub.witness)]
        unconfirmed = {i for i in unconfirmed if pbar[i] == 0}
    T = frozenset(s.vertices[i] for i in range(n) if pbar[i] > 0)
    return T, pbar


def _affine_dim_on(s: Scenario) -> int:
    """dim of the affine hull of a polytope whose implicit zeros are gone."""
    idx = {v: i for i, v in enumerate(s.vertices)}
    rows = []
    for e in s.edges:
        row = [Fraction(0)] * len(s.vertices)
        for v in e:
            row[idx[v]] = Fraction(1)
        rows.append(row)
    return len(s.vertices) - exact_rank(rows)


def g_dimension(s: Scenario) -> int:
    """Affine dimension of the general-model polytope; exact.

    Raises ``EmptyPolytope`` when no model exists.
    """
    closure = _tight_support(s)
    if closure is None:
        raise EmptyPolytope(f"{s.name} admits no probabilistic model")
    T, _ = closure
    if not T:
        raise EmptyPolytope(f"{s.name} admits no probabilistic model")
    try:
        sub, _ = induced_subscenario(s, T)
    except Exception:
        return 0
    return _affine_dim_on(sub)


@dataclass
class ExtremalModel:
    """An extreme point of the model polytope with its defining support."""

    model: ProbModel
    support: tuple
    is_deterministic: bool


def extremal_models(s: Scenario, support_cap: int = SUPPORT_CAP):
    """All extreme points of the model polytope of ``s``.

    Recursive descent on the facets ``p(v) = 0``: each branch restricts to
    an induced subscenario, supports are canonicalized to their implicit-
    equality closure and memoized, and a leaf is reached when the closure
    carries a unique model (affine dimension zero).  The result is the
    deduplicated set of leaf models, each extended back by zeros.

    Closures are seeded with the extreme points already found: once the
    known points cover a face's tight support, certifying the closure needs
    propagation or at most one LP, which keeps the face-lattice walk cheap.
    """
    from .errors import EmptyInducedEdge

    memo = set()
    found = {}

    def closure_of(keep: frozenset, sub: Scenario):
        known = [em for em in found.values() if set(em.support) <= keep]
        forced0 = None
        if known:
            k = len(known)
            pbar = {
                v: sum((em.model.weights[v] for em in known), Fraction(0)) / k
                for v in sub.vertices
            }
            unconfirmed = {v for v in sub.vertices if pbar[v] == 0}
        else:
            forced0 = _forced_zeros(sub)
            if forced0 is None:
                return None
            report = lp_solve(normalization_lp(sub))
            if report.status == "infeasible":
                return None
            pbar = dict(zip(sub.vertices, report.witness))
            unconfirmed = {
                v for v in sub.vertices if pbar[v] == 0 and v not in forced0
            }
        idx = {v: i for i, v in enumerate(sub.vertices)}
        while unconfirmed:
            if forced0 is None:
                forced0 = _forced_zeros(sub) or set()
                unconfirmed -= forced0
                continue
            obj = {idx[v]: Fraction(1) for v in unconfirmed}
            grow = lp_solve(normalization_lp(sub, objective=obj))
            if grow.value == 0:
                break
            pbar = {
                v: (pbar[v] + grow.witness[idx[v]]) / 2 for v in sub.vertices
            }
            unconfirmed = {v for v in unconfirmed if pbar[v] == 0}
        T = frozenset(v for v in sub.vertices if pbar[v] > 0)
        return T, pbar

    def explore(keep: frozenset):
        if keep in memo:
            return
        if len(memo) > support_cap:
            raise BudgetExceeded("extremal descent support budget exhausted")
        memo.add(keep)
        try:
            sub, _ = induced_subscenario(s, keep)
        except EmptyInducedEdge:
            return
        closed = closure_of(keep, sub)
        if closed is None:
            return
        T, pbar = closed
        if T != keep:
            if T:
                explore(T)
            return
        if _affine_dim_on(sub) == 0:
            weights = {v: Fraction(0) for v in s.vertices}
            weights.update(pbar)
            model = validate_model(s, weights)
            found[model.vector()] = ExtremalModel(
                model=model,
                support=tuple(sorted(T)),
                is_deterministic=model.is_deterministic(),
            )
            return
        for v in sorted(T):
            explore(T - {v})

    explore(frozenset(s.vertices))
    result = sorted(found.values(), key=lambda em: em.model.vector())
    n = len(s.vertices)
    from math import comb

    assert len(result) <= comb(n, n // 2), "extreme points exceed the Sperner cap"
    return result


# ---------------------------------------------------------------------------
# Certificate checking
# ---------------------------------------------------------------------------


def _power_weight(model: ProbModel, vid: str) -> Fraction:
    total = Fraction(1)
    for part in vid.split("⊗"):
        total *= model.weights[part]
    return total


def check_certificate(cert: Certificate, scenario: Scenario, model: ProbModel | None = None) -> bool:
    """Re-verify a certificate in exact arithmetic, trusting only its payload.

    ``sdp_report`` certificates are tolerance-checked by the hierarchy layer
    and only shape-checked here.
    """
    kind = cert.kind
    pay = cert.payload
    if kind == "model":
        try:
            validate_model(scenario, pay["weights"])
            return True
        except Exception:
            return False
    if kind == "transversal":
        chosen = set(pay["vertices"])
        if not chosen <= set(scenario.vertices):
            return False
        return all(len(chosen & set(e)) == 1 for e in scenario.edges)
    if kind == "farkas":
        y = [parse_rational(v) for v in pay["y"]]
        return check_farkas(normalization_lp(scenario), y)
    if kind == "convex_decomposition":
        if model is None:
            return False
        total = Fraction(0)
        mix = {v: Fraction(0) for v in scenario.vertices}
        for term in pay["terms"]:
            lam = parse_rational(term["coefficient"])
            if lam < 0:
                return False
            total += lam
            support = set(term["support"])
            if not all(len(support & set(e)) == 1 for e in scenario.edges):
                return False
            for v in support:
                mix[v] += lam
        return total == 1 and all(mix[v] == model.weights[v] for v in scenario.vertices)
    if kind == "separating_inequality":
        if model is None:
            return False
        functional = {v: parse_rational(c) for v, c in pay["functional"].items()}
        bound = parse_rational(pay["bound"])
        value = sum(
            (functional.get(v, Fraction(0)) * model.weights[v] for v in scenario.vertices),
            Fraction(0),
        )
        if value <= bound:
            return False
        for det in enumerate_deterministic(scenario):
            dv = sum(
                (functional.get(v, Fraction(0)) * det.weights[v] for v in scenario.vertices),
                Fraction(0),
            )
            if dv > bound:
                return False
        return True
    if kind == "exhausted_search":
        return not enumerate_deterministic(scenario, limit=1)
    if kind == "independent_set":
        from .graphs import alpha, strong_power
        from .scenario import non_orthogonality_graph

        power = int(pay.get("power", 1))
        graph = non_orthogonality_graph(scenario)
        if power > 1:
            graph = strong_power(graph, power)
        verts = pay["vertices"]
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if u == v or graph.adjacent(u, v):
                    return False
        if model is None:
            return True

        def product_weight(vid):
            total = Fraction(1)
            for part in vid.split("⊗"):
                total *= model.weights[part]
            return total

        weight = sum((product_weight(v) for v in verts), Fraction(0))
        if weight != parse_rational(pay["weight"]):
            return False
        if weight > 1:
            return True  # an exclusivity violation is self-witnessing
        # a within-bound certificate claims maximality: recompute to confirm
        support = [v for v in graph.vertices if _power_weight(model, v) > 0]
        weighted = graph.subgraph(support).with_weights(
            {v: _power_weight(model, v) for v in support}
        )
        return alpha(weighted)[0] == weight
    if kind == "sdp_report":
        return isinstance(pay, dict) and "residuals" in pay
    return False
