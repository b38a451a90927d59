"""Product constructions on scenarios and the Bell-scenario factory.

Product vertices are deterministic joins of the factor ids with the ``⊗``
separator, preserving factor order, so tests can address product outcomes
symbolically.  All enumerations are lexicographic and all edge families are
deduplicated into canonical form; exponential blowups surface as typed
``CombinatorialBlowup`` errors instead of memory exhaustion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import CombinatorialBlowup
from .scenario import Scenario

__all__ = [
    "ProductKind",
    "direct_product",
    "fr_product",
    "min_product",
    "max_product",
    "bell_scenario",
]

EDGE_CAP = 1_000_000
PROTOCOL_CAP = 10_000_000


@dataclass(frozen=True)
class ProductKind:
    """Which edge-generation rule a product uses.

    ``tag`` is one of ``direct``, ``fr_binary``, ``fr_min``, ``fr_max``;
    for ``fr_binary`` the association order is left-nested by default.
    """

    tag: str = "fr_min"
    association: str = "left"

    def __post_init__(self):
        if self.tag not in ("direct", "fr_binary", "fr_min", "fr_max"):
            raise ValueError(f"unknown product kind {self.tag!r}")


def _join(u, v):
    return f"{u}⊗{v}"


def direct_product(a: Scenario, b: Scenario) -> Scenario:
    """Simultaneous measurements only: E(a) x E(b) on V(a) x V(b)."""
    vertices = [_join(u, v) for u in a.vertices for v in b.vertices]
    edges = [
        [_join(u, v) for u in ea for v in eb] for ea in a.edges for eb in b.edges
    ]
    return Scenario(f"{a.name}×{b.name}", vertices, edges)


def fr_product(a: Scenario, b: Scenario, edge_cap: int = EDGE_CAP) -> Scenario:
    """Binary Foulis-Randall product.

    Besides the simultaneous measurements, one party measures first and the
    other chooses their measurement as a function of the outcome; the edge
    family is the union over both orders, functions enumerated
    lexicographically.
    """
    budget = sum(len(b.edges) ** len(ea) for ea in a.edges) + sum(
        len(a.edges) ** len(eb) for eb in b.edges
    )
    if budget > edge_cap:
        raise CombinatorialBlowup(f"{budget} candidate edges exceed cap {edge_cap}")
    vertices = [_join(u, v) for u in a.vertices for v in b.vertices]
    edges = set()
    for ea in a.edges:
        for choice in iproduct(range(len(b.edges)), repeat=len(ea)):
            edge = []
            for u, eb_i in zip(ea, choice):
                edge.extend(_join(u, v) for v in b.edges[eb_i])
            edges.add(tuple(sorted(edge)))
    for eb in b.edges:
        for choice in iproduct(range(len(a.edges)), repeat=len(eb)):
            edge = []
            for v, ea_i in zip(eb, choice):
                edge.extend(_join(u, v) for u in a.edges[ea_i])
            edges.add(tuple(sorted(edge)))
    return Scenario(f"{a.name}⊗{b.name}", vertices, sorted(edges))


def _tuple_id(parts) -> str:
    return "⊗".join(parts)


def min_product(factors, edge_cap: int = EDGE_CAP) -> Scenario:
    """Minimal n-ary Foulis-Randall product.

    One distinguished party measures as a function of all the others' joint
    outcomes; every other party measures a fixed edge.  Union over the
    distinguished party.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    if len(factors) == 1:
        return factors[0]
    n = len(factors)
    budget = 0
    for k in range(n):
        for edges_rest in iproduct(*(f.edges for i, f in enumerate(factors) if i != k)):
            cells = 1
            for e in edges_rest:
                cells *= len(e)
            budget += len(factors[k].edges) ** cells
            if budget > edge_cap:
                raise CombinatorialBlowup(
                    f"minimal product would enumerate over {budget} edges"
                )
    vertices = [_tuple_id(t) for t in iproduct(*(f.vertices for f in factors))]
    edges = set()
    for k in range(n):
        rest = [f for i, f in enumerate(factors) if i != k]
        for edges_rest in iproduct(*(f.edges for f in rest)):
            joints = list(iproduct(*edges_rest))
            fk_edges = factors[k].edges
            for choice in iproduct(range(len(fk_edges)), repeat=len(joints)):
                edge = []
                for joint, ek_i in zip(joints, choice):
                    for w in fk_edges[ek_i]:
                        full = list(joint)
                        full.insert(k, w)
                        edge.append(_tuple_id(full))
                edges.add(tuple(sorted(edge)))
    name = "min⊗(" + ",".join(f.name for f in factors) + ")"
    return Scenario(name, vertices, sorted(edges))


def max_product(factors, protocol_cap: int = PROTOCOL_CAP) -> Scenario:
    """Maximal n-ary Foulis-Randall product via measurement protocols.

    A protocol picks a party and an edge, then recursively a sub-protocol
    per outcome; its outcome set is an edge.  Computed bottom-up over party
    subsets: the edges over S are unions of one sub-edge choice per outcome.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    if len(factors) == 1:
        return factors[0]
    n = len(factors)
    # edge families per party subset; partial outcomes are tuples of
    # (party, vertex) pairs sorted by party
    memo = {frozenset(): (frozenset([()]),)}
    count = 0

    def edges_over(S: frozenset):
        nonlocal count
        if S in memo:
            return memo[S]
        result = set()
        for k in sorted(S):
            sub = edges_over(S - {k})
            for e in factors[k].edges:
                pools = [range(len(sub))] * len(e)
                budget = len(sub) ** len(e)
                count += budget
                if count > protocol_cap:
                    raise CombinatorialBlowup(
                        f"maximal product exceeds protocol cap {protocol_cap}"
                    )
                for choice in iproduct(*pools):
                    edge = []
                    for v, sub_i in zip(e, choice):
                        for partial in sub[sub_i]:
                            edge.append(tuple(sorted(partial + ((k, v),))))
                    result.add(frozenset(edge))
        memo[S] = tuple(sorted(result, key=sorted))
        return memo[S]

    all_parties = frozenset(range(n))
    product_edges = edges_over(all_parties)
    vertices = [_tuple_id(t) for t in iproduct(*(f.vertices for f in factors))]
    edges = []
    for e in product_edges:
        edge = []
        for partial in e:
            parts = [v for (_, v) in sorted(partial)]
            edge.append(_tuple_id(parts))
        edges.append(edge)
    name = "max⊗(" + ",".join(f.name for f in factors) + ")"
    return Scenario(name, vertices, edges)


def _binary_chain(factors, kind: ProductKind, edge_cap: int) -> Scenario:
    out = factors[0]
    seq = factors[1:]
    if kind.association == "right":
        out = factors[-1]
        for f in reversed(factors[:-1]):
            out = fr_product(f, out, edge_cap=edge_cap)
        return out
    for f in seq:
        out = fr_product(out, f, edge_cap=edge_cap)
    return out


def single_party_scenario(k: int, m: int, name: str | None = None) -> Scenario:
    """k disjoint m-outcome measurements: the one-party Bell scenario."""
    vertices = []
    edges = []
    for x in range(k):
        e = [f"{a}|{x}" for a in range(m)]
        vertices.extend(e)
        edges.append(e)
    return Scenario(name or f"B(1,{k},{m})", vertices, edges)


def bell_scenario(n: int, k: int, m: int, kind=ProductKind("fr_min")) -> Scenario:
    """The n-party, k-setting, m-outcome Bell scenario.

    Built as the n-fold product of the one-party scenario under the chosen
    product kind; vertex ids are rendered as ``a1..an|x1..xn``.
    """
    if n < 1 or k < 1 or m < 1:
        raise ValueError("n, k, m must all be >= 1")
    if isinstance(kind, str):
        kind = ProductKind(kind)
    factor = single_party_scenario(k, m)
    if n == 1:
        return Scenario(f"B({n},{k},{m})", factor.vertices, factor.edges)
    factors = [factor] * n
    if kind.tag == "direct":
        out = factors[0]
        for f in factors[1:]:
            out = direct_product(out, f)
    elif kind.tag == "fr_binary":
        out = _binary_chain(factors, kind, EDGE_CAP)
    elif kind.tag == "fr_min":
        out = min_product(factors)
    else:
        out = max_product(factors)

    sep = "" if (m <= 10 and k <= 10) else ","
    renames = {}
    for vid in out.vertices:
        parts = vid.split("⊗")
        outs, setts = zip(*(p.split("|") for p in parts))
        renames[vid] = f"{sep.join(outs)}|{sep.join(setts)}"
    vertices = [renames[v] for v in out.vertices]
    edges = [[renames[v] for v in e] for e in out.edges]
    return Scenario(f"B({n},{k},{m})", vertices, edges)
