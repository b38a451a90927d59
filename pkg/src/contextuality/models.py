"""Probability assignments on scenarios, in exact rational arithmetic.

Weights live exactly on the normalization boundary (every edge sums to 1),
so this module refuses floats at the door and works in Fractions only.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    BudgetExceeded,
    EdgeSumViolation,
    MissingWeight,
    NegativeWeight,
    ScenarioMismatch,
)
from .rational import format_rational, parse_rational
from .scenario import Scenario

__all__ = [
    "ProbModel",
    "validate_model",
    "tensor_models",
    "no_signaling_check",
    "enumerate_deterministic",
]

DETERMINISTIC_NODE_CAP = 1_000_000


class ProbModel:
    """A validated probabilistic model: one exact rational weight per vertex."""

    __slots__ = ("scenario", "weights", "name")

    def __init__(self, scenario: Scenario, weights: dict, name: str = ""):
        self.scenario = scenario
        self.weights = weights
        self.name = name

    def __getitem__(self, v) -> Fraction:
        return self.weights[v]

    def support(self) -> tuple:
        return tuple(v for v in self.scenario.vertices if self.weights[v] > 0)

    def is_deterministic(self) -> bool:
        return all(w in (0, 1) for w in self.weights.values())

    def vector(self) -> tuple:
        return tuple(self.weights[v] for v in self.scenario.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, ProbModel)
            and self.scenario.same_structure(other.scenario)
            and self.vector() == other.vector()
        )

    def __hash__(self):
        return hash((self.scenario.vertices, self.vector()))

    def __repr__(self):
        label = self.name or "model"
        return f"ProbModel({label} on {self.scenario.name})"

    def to_jsonable(self) -> dict:
        return {
            "scenario": self.scenario.name,
            "weights": {v: format_rational(w) for v, w in self.weights.items()},
        }

    @classmethod
    def from_jsonable(cls, scenario: Scenario, data: dict, name: str = "") -> "ProbModel":
        return validate_model(scenario, data["weights"], name=name)


def validate_model(s: Scenario, weights, name: str = "") -> ProbModel:
    """Check exact normalization of ``weights`` on every edge of ``s``.

    Raises ``MissingWeight``, ``NegativeWeight`` or ``EdgeSumViolation``
    (the latter lists every violated edge with its exact sum).  Float
    weights are rejected by the rational parser.
    """
    parsed = {}
    for v in s.vertices:
        if v not in weights:
            raise MissingWeight(f"no weight for vertex {v!r}")
        w = parse_rational(weights[v])
        if w < 0:
            raise NegativeWeight(f"weight of {v!r} is {w}")
        if w > 1:
            raise EdgeSumViolation([((v,), w)])
        parsed[v] = w
    violations = []
    for e in s.edges:
        total = sum((parsed[v] for v in e), Fraction(0))
        if total != 1:
            violations.append((e, total))
    if violations:
        raise EdgeSumViolation(violations)
    return ProbModel(s, parsed, name=name)


def tensor_models(p: ProbModel, q: ProbModel, product: Scenario) -> ProbModel:
    """Product weights ``(u ⊗ v) -> p(u) q(v)``, validated on ``product``.

    ``product`` must use the product-module id convention (factor ids joined
    with the ``⊗`` separator); otherwise ``ScenarioMismatch`` is raised.
    """
    weights = {}
    for u in p.scenario.vertices:
        for v in q.scenario.vertices:
            weights[f"{u}⊗{v}"] = p.weights[u] * q.weights[v]
    if set(weights) != set(product.vertices):
        raise ScenarioMismatch(
            f"product scenario {product.name} does not have vertex set "
            f"V({p.scenario.name}) x V({q.scenario.name})"
        )
    name = f"{p.name or 'p'}⊗{q.name or 'q'}"
    return validate_model(product, weights, name=name)


def no_signaling_check(factors, p: ProbModel) -> list:
    """No-signaling report for a model on the direct product of ``factors``.

    For every party k, fixed joint outcome of the other parties, and pair of
    contexts e, e' of party k, the two marginal sums must agree.  Returns
    the list of violations ``(party, fixed_outcomes, e, e', sum_e, sum_e')``;
    an empty list means the model is no-signaling.
    """
    from itertools import product as iproduct

    n = len(factors)
    violations = []
    for k, fk in enumerate(factors):
        others = [f.vertices for i, f in enumerate(factors) if i != k]
        for fixed in iproduct(*others):
            def joint(w):
                parts = list(fixed)
                parts.insert(k, w)
                return "⊗".join(parts)

            sums = []
            for e in fk.edges:
                sums.append(sum((p.weights[joint(w)] for w in e), Fraction(0)))
            for a in range(len(fk.edges)):
                for b in range(a + 1, len(fk.edges)):
                    if sums[a] != sums[b]:
                        violations.append(
                            (k, fixed, fk.edges[a], fk.edges[b], sums[a], sums[b])
                        )
    return violations


def enumerate_deterministic(
    s: Scenario,
    node_cap: int = DETERMINISTIC_NODE_CAP,
    limit: int | None = None,
    stats: dict | None = None,
):
    """All 0/1 models of ``s``: the exact transversals, by backtracking.

    Branches on the smallest not-yet-hit edge, assigning its chosen vertex
    and excluding every vertex sharing an edge with a chosen one when that
    edge is already hit.  Deterministic output order.  ``limit`` stops the
    search after that many models; ``stats`` (if given) receives the node
    count under key ``"nodes"``.
    """
    edges = sorted(s.edges, key=lambda e: (len(e), e))
    m = len(edges)
    vertex_edges = {v: [k for k, e in enumerate(edges) if v in e] for v in s.vertices}
    out = []
    nodes = 0

    # state per vertex: None undecided, True chosen, False excluded
    state = {v: None for v in s.vertices}
    hit = [False] * m

    def feasible_edge(k):
        return [v for v in edges[k] if state[v] is not False]

    def choose(v):
        """Set v=1; force exclusions; return the list of changes or None."""
        changed = []
        stack = [(v, True)]
        ok = True
        while stack and ok:
            u, val = stack.pop()
            if state[u] is not None:
                if state[u] != val:
                    ok = False
                continue
            state[u] = val
            changed.append(u)
            if val:
                for k in vertex_edges[u]:
                    if hit[k]:
                        ok = False
                        break
                    hit[k] = True
                    changed.append(k)
                    for w in edges[k]:
                        if w != u:
                            stack.append((w, False))
        return changed if ok else (changed, False)

    def undo(changed):
        for item in changed:
            if isinstance(item, int):
                hit[item] = False
            else:
                state[item] = None

    def backtrack():
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded("deterministic enumeration budget exhausted")
        if limit is not None and len(out) >= limit:
            return
        # find unhit edge with fewest viable vertices
        best_k, best_opts = -1, None
        for k in range(m):
            if hit[k]:
                continue
            opts = feasible_edge(k)
            if not opts:
                return
            if best_opts is None or len(opts) < len(best_opts):
                best_k, best_opts = k, opts
                if len(opts) == 1:
                    break
        if best_k < 0:
            weights = {v: Fraction(1 if state[v] else 0) for v in s.vertices}
            out.append(ProbModel(s, weights, name=f"det{len(out)}"))
            return
        for v in best_opts:
            if limit is not None and len(out) >= limit:
                return
            res = choose(v)
            if isinstance(res, tuple):
                undo(res[0])
                continue
            backtrack()
            undo(res)

    backtrack()
    if stats is not None:
        stats["nodes"] = nodes
    return out
