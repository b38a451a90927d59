"""Named scenarios, boxes and constructions used as the test corpus.

Everything here is generated from first principles (no hard-coded
coordinate tables): the 18-vertex Kochen-Specker scenario comes from the
rook's-graph dual, matching scenarios from complete-graph duals, and the
box families from their defining formulas.  Every bundled model validates
on its scenario at construction time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    IsolatedNode,
    LabelingNotOrthogonal,
    SubnormalizationViolated,
)
from .graphs import WeightedGraph
from .models import ProbModel, validate_model
from .products import bell_scenario
from .scenario import Scenario, new_scenario, non_orthogonality_graph

__all__ = [
    "CatalogEntry",
    "circular",
    "antiprism",
    "cycle_scenario",
    "complete_graph",
    "dual_scenario",
    "matching_scenario",
    "ks_18",
    "bell_boxes",
    "pr_box",
    "tsirelson_box",
    "deterministic_boxes",
    "csw_transfer",
    "yan_extension",
    "pentagon_umbrella",
    "special_scenarios",
    "j_scenario",
    "catalog_list",
    "catalog_get",
]


@dataclass
class CatalogEntry:
    key: str
    scenario: Scenario
    models: dict = field(default_factory=dict)
    note: str = ""


# ---------------------------------------------------------------------------
# parametric families
# ---------------------------------------------------------------------------


def circular(n: int) -> CatalogEntry:
    """The 2n-vertex circular scenario: edges {v_i, w_i, v_{i+1}} around a ring.

    The w vertices play the role of no-detection events.  For odd n the
    entry bundles the half-weight model concentrated on the v ring, the
    unique nonclassical extreme point.
    """
    if n < 3:
        raise ValueError("circular scenario needs n >= 3")
    verts = [f"v{i}" for i in range(1, n + 1)] + [f"w{i}" for i in range(1, n + 1)]
    edges = [[f"v{i}", f"w{i}", f"v{i % n + 1}"] for i in range(1, n + 1)]
    s = new_scenario(f"circular{n}", verts, edges)
    models = {}
    if n % 2 == 1:
        weights = {f"v{i}": Fraction(1, 2) for i in range(1, n + 1)}
        weights.update({f"w{i}": Fraction(0) for i in range(1, n + 1)})
        models["px"] = validate_model(s, weights, name="px")
    return CatalogEntry(
        key=f"circular{n}",
        scenario=s,
        models=models,
        note="odd-cycle family generalizing the pentagon inequality scenario",
    )


def antiprism(n: int) -> CatalogEntry:
    """The 2n-vertex antiprism scenario: two interleaved triangle bands.

    When n is not divisible by 3 the model is forced to the uniform 1/3
    assignment, which is bundled.
    """
    if n < 3:
        raise ValueError("antiprism scenario needs n >= 3")
    verts = [f"v{i}" for i in range(1, n + 1)] + [f"w{i}" for i in range(1, n + 1)]
    edges = [[f"v{i}", f"w{i}", f"v{i % n + 1}"] for i in range(1, n + 1)]
    edges += [[f"w{i}", f"v{i % n + 1}", f"w{i % n + 1}"] for i in range(1, n + 1)]
    s = new_scenario(f"antiprism{n}", verts, edges)
    models = {}
    if n % 3 != 0:
        models["uniform"] = validate_model(
            s, {v: Fraction(1, 3) for v in verts}, name="uniform"
        )
    return CatalogEntry(
        key=f"antiprism{n}",
        scenario=s,
        models=models,
        note="triangle band around an antiprism; rigid unless 3 divides n",
    )


def cycle_scenario(n: int) -> CatalogEntry:
    """n vertices in a ring, edges = adjacent pairs; rigid for odd n."""
    verts = [f"u{i}" for i in range(1, n + 1)]
    edges = [[f"u{i}", f"u{i % n + 1}"] for i in range(1, n + 1)]
    s = new_scenario(f"cycle{n}", verts, edges)
    models = {}
    if n % 2 == 1:
        models["uniform"] = validate_model(
            s, {v: Fraction(1, 2) for v in verts}, name="uniform"
        )
    return CatalogEntry(key=f"cycle{n}", scenario=s, models=models,
                        note="ring of two-outcome measurements")


def complete_graph(m: int) -> WeightedGraph:
    verts = [str(i) for i in range(1, m + 1)]
    return WeightedGraph(verts, combinations(verts, 2))


def dual_scenario(g: WeightedGraph, name: str = "dual") -> Scenario:
    """Vertices = arcs of ``g``; one edge per node, its incident arcs."""
    arcs = g.edge_list()
    if not arcs:
        raise IsolatedNode("graph has no arcs at all")
    for v in g.vertices:
        if g.degree(v) == 0:
            raise IsolatedNode(f"node {v!r} has no incident arcs")
    arc_id = {frozenset(a): f"{a[0]}-{a[1]}" for a in arcs}
    edges = []
    for v in g.vertices:
        edges.append(
            [arc_id[frozenset((v, u))] for u in g.vertices if g.adjacent(v, u)]
        )
    return new_scenario(name, list(arc_id.values()), edges)


def matching_scenario(m: int) -> CatalogEntry:
    """Arcs of the complete graph on m nodes, one edge per node.

    Deterministic models are perfect matchings; general models are the
    fractional relaxation with half-integer extreme points.
    """
    s = dual_scenario(complete_graph(m), name=f"mat{m}")
    return CatalogEntry(
        key=f"mat{m}", scenario=s, note="perfect-matching scenario of K_m"
    )


def j_scenario(n: int) -> CatalogEntry:
    """Triples of {1..n} as vertices; one edge per partition into 4-blocks.

    Each edge has exactly n vertices (4 triples per block), so the uniform
    1/n assignment is a model; bundled.
    """
    if n < 12 or n % 4 != 0:
        raise ValueError("needs n >= 12 divisible by 4")
    ground = list(range(1, n + 1))
    verts = {t: "-".join(map(str, t)) for t in combinations(ground, 3)}

    partitions = []

    def split(rest, blocks):
        if not rest:
            partitions.append(list(blocks))
            return
        head = rest[0]
        for others in combinations(rest[1:], 3):
            block = (head,) + others
            remaining = [x for x in rest[1:] if x not in others]
            split(remaining, blocks + [block])

    split(ground, [])
    edges = []
    for part in partitions:
        edge = []
        for block in part:
            edge.extend(verts[t] for t in combinations(block, 3))
        edges.append(edge)
    s = new_scenario(f"j{n}", list(verts.values()), edges)
    uniform = validate_model(
        s, {v: Fraction(1, n) for v in s.vertices}, name="uniform"
    )
    return CatalogEntry(
        key=f"j{n}",
        scenario=s,
        models={"uniform": uniform},
        note="triple-block design scenario separating exclusivity from the level-1 set",
    )


# ---------------------------------------------------------------------------
# Kochen-Specker 18 and boxes
# ---------------------------------------------------------------------------


def rook_graph_3x3() -> WeightedGraph:
    """Nodes ij for i,j in 1..3, adjacent iff the labels differ in one slot."""
    verts = [f"{i}{j}" for i in range(1, 4) for j in range(1, 4)]
    edges = [
        (u, v)
        for u, v in combinations(verts, 2)
        if (u[0] == v[0]) != (u[1] == v[1])
    ]
    return WeightedGraph(verts, edges)


def ks_18() -> CatalogEntry:
    """The 18-vertex, 9-edge scenario with no deterministic model.

    Generated as the dual of the 3x3 rook's graph: 18 arcs, one 4-element
    edge per node, every arc in exactly two edges.  An exact transversal
    would need twice its size to equal the odd edge count, so none exists.
    """
    s = dual_scenario(rook_graph_3x3(), name="ks18")
    assert len(s.vertices) == 18 and len(s.edges) == 9
    assert all(len(s.edges_of(v)) == 2 for v in s.vertices)
    return CatalogEntry(key="ks18", scenario=s, note="parity-based value-assignment obstruction")


def pr_box(s: Scenario | None = None) -> ProbModel:
    """p(ab|xy) = 1/2 when a xor b = x and y, else 0."""
    s = s or bell_scenario(2, 2, 2)
    weights = {}
    for v in s.vertices:
        a, b, x, y = int(v[0]), int(v[1]), int(v[3]), int(v[4])
        weights[v] = Fraction(1, 2) if (a ^ b) == (x & y) else Fraction(0)
    return validate_model(s, weights, name="pr")


def tsirelson_box(s: Scenario | None = None, denominator: int = 10**12) -> ProbModel:
    """The (2 +- sqrt2)/8 box with sqrt2 replaced by an exact rational surrogate.

    The surrogate precision is recorded in the model name; edge sums are
    exactly 1 for any surrogate, so the model always validates, and
    membership tests treat it with a widened tolerance.
    """
    s = s or bell_scenario(2, 2, 2)
    root2 = Fraction(round(math.sqrt(2) * denominator), denominator)
    weights = {}
    for v in s.vertices:
        a, b, x, y = int(v[0]), int(v[1]), int(v[3]), int(v[4])
        weights[v] = (2 + root2) / 8 if (a ^ b) == (x & y) else (2 - root2) / 8
    return validate_model(s, weights, name=f"tsirelson~1/{denominator}")


def deterministic_boxes(s: Scenario | None = None) -> dict:
    """The 16 local deterministic boxes a = f(x), b = g(y)."""
    s = s or bell_scenario(2, 2, 2)
    funcs = {"0": lambda x: 0, "1": lambda x: 1, "x": lambda x: x, "X": lambda x: 1 - x}
    out = {}
    for fa, f in funcs.items():
        for gb, g in funcs.items():
            weights = {}
            for v in s.vertices:
                a, b, x, y = int(v[0]), int(v[1]), int(v[3]), int(v[4])
                weights[v] = Fraction(1 if a == f(x) and b == g(y) else 0)
            name = f"det_{fa}{gb}"
            out[name] = validate_model(s, weights, name=name)
    return out


def bell_boxes() -> CatalogEntry:
    """The CHSH scenario bundled with its named boxes."""
    s = bell_scenario(2, 2, 2)
    models = {"pr": pr_box(s), "tsirelson": tsirelson_box(s)}
    models.update(deterministic_boxes(s))
    return CatalogEntry(key="bell222", scenario=s, models=models,
                        note="two parties, two settings, two outcomes")


# ---------------------------------------------------------------------------
# transfers and extensions
# ---------------------------------------------------------------------------


def csw_transfer(s: Scenario) -> Scenario:
    """Add one no-detection vertex per edge, absorbing subnormalization.

    The new scenario has |V|+|E| vertices and the same number of edges,
    each grown by its private no-detection outcome.
    """
    verts = list(s.vertices)
    edges = []
    for k, e in enumerate(s.edges):
        w = f"nd{k}"
        verts.append(w)
        edges.append(list(e) + [w])
    return new_scenario(f"{s.name}+nd", verts, edges)


def yan_extension(s: Scenario, labeling: dict, psi, precision: int = 10**9):
    """Partner scenario whose quantum model encodes a vector labeling.

    ``labeling`` assigns a unit vector to each vertex of ``s``; vectors of
    vertices adjacent in the non-orthogonality graph must be orthogonal
    (within 1e-9).  The partner has one extra vertex per non-orthogonality
    edge and one 3-element edge per such pair; the bundled model squares
    the overlaps with ``psi`` (rationalized at ``precision`` and
    re-validated, with the slack pushed onto the new vertices).
    """
    psi = np.asarray(psi, dtype=float)
    vecs = {v: np.asarray(labeling[v], dtype=float) for v in s.vertices}
    for v, vec in vecs.items():
        if abs(float(vec @ vec) - 1.0) > 1e-9:
            raise LabelingNotOrthogonal(f"labeling vector of {v!r} is not a unit vector")
    graph = non_orthogonality_graph(s)
    for u, v in graph.edge_list():
        if abs(float(vecs[u] @ vecs[v])) > 1e-9:
            raise LabelingNotOrthogonal(
                f"vectors of non-orthogonal pair ({u!r}, {v!r}) are not orthogonal"
            )
    overlap = {
        v: Fraction(round(float(vecs[v] @ psi) ** 2 * precision), precision)
        for v in s.vertices
    }
    verts = list(s.vertices)
    edges = []
    weights = dict(overlap)
    for k, (u, v) in enumerate(graph.edge_list()):
        slack = 1 - overlap[u] - overlap[v]
        if slack < 0:
            raise SubnormalizationViolated(
                f"overlaps on pair ({u!r}, {v!r}) exceed 1"
            )
        w = f"nd{k}"
        verts.append(w)
        edges.append([u, v, w])
        weights[w] = slack
    partner = new_scenario(f"{s.name}+yan", verts, edges)
    model = validate_model(partner, weights, name="yan")
    return partner, model


def pentagon_umbrella():
    """The pentagon scenario with its umbrella labeling and handle vector.

    The scenario has five vertices and the five edges {i, i+2}, so its
    non-orthogonality graph is the 5-cycle; the umbrella vectors realize
    the 5-cycle orthogonalities and tilt maximally toward the handle.
    """
    verts = [f"u{i}" for i in range(5)]
    edges = [[f"u{i}", f"u{(i + 2) % 5}"] for i in range(5)]
    s = new_scenario("pentagon", verts, edges)
    c2 = math.cos(math.pi / 5) / (1 + math.cos(math.pi / 5))
    ssin = math.sqrt(1 - c2)
    labeling = {}
    for k in range(5):
        ang = 4 * math.pi * k / 5
        labeling[f"u{k}"] = (ssin * math.cos(ang), ssin * math.sin(ang), math.sqrt(c2))
    psi = (0.0, 0.0, 1.0)
    return s, labeling, psi


# ---------------------------------------------------------------------------
# special fixed scenarios
# ---------------------------------------------------------------------------


def _h0_empty() -> Scenario:
    verts = [f"t{i}{j}" for i in range(3) for j in range(3)]
    edges = []
    for i in range(3):
        edges += [[f"t{i}0", f"t{i}1"], [f"t{i}1", f"t{i}2"], [f"t{i}0", f"t{i}2"]]
    edges.append(["t00", "t10", "t20"])
    return new_scenario("h0_empty", verts, edges)


def _nonassoc_triple():
    a = new_scenario("HA", ["a1", "a2"], [["a1", "a2"]])
    b = new_scenario("HB", ["b1", "b2", "b3"], [["b1", "b2"], ["b2", "b3"]])
    c = new_scenario("HC", ["c1", "c2", "c3"], [["c1", "c2"], ["c2", "c3"]])
    return a, b, c


def _gadget(with_forcing_edge: bool) -> Scenario:
    verts = ["t", "t'", "u1", "u2", "w'", "x", "x'", "y", "y'", "w"]
    edges = [
        ["t", "u1"],
        ["t", "u2"],
        ["u2", "t'"],
        ["u1", "t'", "w'"],
        ["x", "y'", "w'"],
        ["y'", "w", "x'"],
        ["w'", "x'", "y"],
    ]
    if with_forcing_edge:
        edges.append(["w'", "x'", "y'"])
    return new_scenario("gadget'" if with_forcing_edge else "gadget", verts, edges)


def _gadget_model(s: Scenario) -> ProbModel:
    ones = {"t", "t'", "x", "x'"}
    return validate_model(
        s, {v: Fraction(1 if v in ones else 0) for v in s.vertices}, name="forcing"
    )


def _perspectivity_pair() -> Scenario:
    verts = ["v1", "v2", "v3", "a", "b", "w1", "w2"]
    edges = [["a", "v3"], ["a", "b"], ["v1", "w1"], ["v1", "v2", "b"], ["v2", "v3", "w2"]]
    return new_scenario("perspectivity", verts, edges)


def _imperfect_but_classical() -> Scenario:
    verts = ["v"] + [f"o{i}" for i in range(1, 6)] + ["x", "p1", "p2", "q1", "q2"]
    edges = [["v", f"o{i}", f"o{i % 5 + 1}"] for i in range(1, 6)]
    edges += [["v", "x"], ["p1", "q1"], ["p2", "q2"], ["q1", "q2"], ["x", "p1", "p2"]]
    return new_scenario("imperfect_but_classical", verts, edges)


def special_scenarios() -> dict:
    """Hard-coded small scenarios exercising the corner cases.

    ``h0_empty``: no probabilistic model at all.  ``nonassoc_*``: the triple
    on which binary product bracketings differ.  ``gadget``/``gadget_prime``:
    same vertices and non-orthogonality graph, one forcing edge apart.
    ``perspectivity``: a 7-vertex scenario with a size-3/size-2
    virtual-edge equivalence.  ``imperfect_but_classical``: classical = general
    although the non-orthogonality graph is not perfect.
    """
    a, b, c = _nonassoc_triple()
    gadget = _gadget(False)
    gadget_prime = _gadget(True)
    out = {
        "h0_empty": CatalogEntry("h0_empty", _h0_empty(),
                                 note="three rigid triangles against one joint edge"),
        "nonassoc_a": CatalogEntry("nonassoc_a", a, note="product bracketing witness, party A"),
        "nonassoc_b": CatalogEntry("nonassoc_b", b, note="product bracketing witness, party B"),
        "nonassoc_c": CatalogEntry("nonassoc_c", c, note="product bracketing witness, party C"),
        "gadget": CatalogEntry("gadget", gadget, models={"forcing": _gadget_model(gadget)},
                               note="projection-forcing gadget without the extra edge"),
        "gadget_prime": CatalogEntry("gadget_prime", gadget_prime,
                                     models={"forcing": _gadget_model(gadget_prime)},
                                     note="projection-forcing gadget with the extra edge"),
        "perspectivity": CatalogEntry("perspectivity", _perspectivity_pair(),
                                            note="virtual edge of a different size than its mate"),
        "rigid_cycle5": cycle_scenario(5),
        "imperfect_but_classical": CatalogEntry("imperfect_but_classical", _imperfect_but_classical(),
                                             note="imperfect non-orthogonality graph, yet classical = general"),
    }
    out["rigid_cycle5"].key = "rigid_cycle5"
    return out


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def catalog_list() -> list:
    keys = [
        "triangle",
        "circular3", "circular4", "circular5", "circular6", "circular7",
        "antiprism4", "antiprism5", "antiprism6",
        "cycle5",
        "mat3", "mat4", "mat5", "mat6", "mat7",
        "ks18",
        "bell222",
        "j12",
    ]
    keys.extend(sorted(special_scenarios()))
    return keys


def _triangle() -> CatalogEntry:
    s = new_scenario("triangle", ["v1", "v2", "v3"],
                     [["v1", "v2"], ["v2", "v3"], ["v1", "v3"]])
    m = validate_model(s, {v: Fraction(1, 2) for v in s.vertices}, name="uniform")
    return CatalogEntry("triangle", s, models={"uniform": m},
                        note="three pairwise-overlapping binary measurements")


def catalog_get(key: str) -> CatalogEntry:
    """Look up a catalog entry by key (parametric families by suffix)."""
    if key == "triangle":
        return _triangle()
    if key == "ks18":
        return ks_18()
    if key == "bell222":
        return bell_boxes()
    specials = special_scenarios()
    if key in specials:
        return specials[key]
    m = re.fullmatch(r"(circular|antiprism|cycle|mat|j)(\d+)", key)
    if m:
        family, num = m.group(1), int(m.group(2))
        return {
            "circular": circular,
            "antiprism": antiprism,
            "cycle": cycle_scenario,
            "mat": matching_scenario,
            "j": j_scenario,
        }[family](num)
    mb = re.fullmatch(r"bell(\d)(\d)(\d)", key)
    if mb:
        n, k, mm = map(int, mb.groups())
        return CatalogEntry(key, bell_scenario(n, k, mm), note="Bell scenario")
    raise KeyError(f"unknown catalog key {key!r}")
