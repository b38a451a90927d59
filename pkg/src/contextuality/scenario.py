"""Hypergraph scenarios: outcome vertices grouped into measurement edges.

A scenario is a finite hypergraph whose edges cover the vertex set.  Edges
are stored canonically (sorted tuples, sorted among themselves, duplicates
collapsed), so scenario equality is canonical-form equality.  Isomorphism
testing is deliberately not provided.
"""

from __future__ import annotations

from .errors import (
    EdgeWithUnknownVertex,
    EmptyInducedEdge,
    EmptyVertexSet,
    UncoveredVertex,
)
from .graphs import WeightedGraph

__all__ = [
    "Scenario",
    "new_scenario",
    "non_orthogonality_graph",
    "induced_subscenario",
]


class Scenario:
    """Immutable contextuality scenario (hypergraph with covering edges)."""

    __slots__ = ("name", "vertices", "edges", "_index", "_vertex_edges")

    def __init__(self, name, vertices, edges):
        vertices = tuple(sorted(set(map(str, vertices))))
        if not vertices:
            raise EmptyVertexSet("a scenario needs at least one vertex")
        vset = set(vertices)
        canon = set()
        for e in edges:
            members = tuple(sorted(set(map(str, e))))
            if not members:
                raise EmptyInducedEdge("empty edge")
            unknown = [v for v in members if v not in vset]
            if unknown:
                raise EdgeWithUnknownVertex(f"edge {members} mentions {unknown}")
            canon.add(members)
        covered = set()
        for e in canon:
            covered.update(e)
        missing = vset - covered
        if missing:
            raise UncoveredVertex(f"vertices in no edge: {sorted(missing)}")
        self.name = str(name)
        self.vertices = vertices
        self.edges = tuple(sorted(canon))
        self._index = {v: i for i, v in enumerate(vertices)}
        ve = {v: [] for v in vertices}
        for k, e in enumerate(self.edges):
            for v in e:
                ve[v].append(k)
        self._vertex_edges = {v: tuple(ks) for v, ks in ve.items()}

    # -- accessors -----------------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def index(self, v) -> int:
        return self._index[v]

    def edges_of(self, v):
        """Indices into ``self.edges`` of the edges containing ``v``."""
        return self._vertex_edges[v]

    @property
    def is_antichain(self) -> bool:
        """True when no edge is a proper subset of another (clutter property).

        Recorded as a queryable flag rather than enforced: perfectly valid
        scenarios (e.g. the ones arising in extremality arguments) violate it.
        """
        sets = [set(e) for e in self.edges]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j and a < b:
                    return False
        return True

    def orthogonal(self, u, v) -> bool:
        """Two distinct vertices are orthogonal iff they share an edge."""
        if u == v:
            return False
        return bool(set(self._vertex_edges[u]) & set(self._vertex_edges[v]))

    def same_structure(self, other: "Scenario") -> bool:
        """Canonical-form equality, ignoring the name."""
        return self.vertices == other.vertices and self.edges == other.edges

    def __eq__(self, other):
        return (
            isinstance(other, Scenario)
            and self.name == other.name
            and self.same_structure(other)
        )

    def __hash__(self):
        return hash((self.name, self.vertices, self.edges))

    def __repr__(self):
        return (
            f"Scenario({self.name!r}, {len(self.vertices)} vertices, "
            f"{len(self.edges)} edges)"
        )

    # -- serialization ---------------------------------------------------------

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "Scenario":
        return cls(data["name"], data["vertices"], data["edges"])


def new_scenario(name, vertices, edges) -> Scenario:
    """Construct and canonicalize a scenario.

    Raises ``EmptyVertexSet``, ``EdgeWithUnknownVertex`` or
    ``UncoveredVertex`` on malformed input.
    """
    return Scenario(name, vertices, edges)


def non_orthogonality_graph(s: Scenario) -> WeightedGraph:
    """Graph on V(s) with u ~ v iff no edge contains both; unit weights.

    Orthogonal pairs (sharing a measurement) are the NON-adjacent ones.
    """
    edges = []
    vs = s.vertices
    for i, u in enumerate(vs):
        eu = set(s.edges_of(u))
        for v in vs[i + 1 :]:
            if not eu.intersection(s.edges_of(v)):
                edges.append((u, v))
    return WeightedGraph(vs, edges)


def induced_subscenario(s: Scenario, keep) -> tuple[Scenario, dict]:
    """Restrict to a vertex subset; edges become their intersections with it.

    Raises ``EmptyInducedEdge`` when some edge is wiped out entirely, which
    means the restricted scenario can carry no probabilistic model at all.
    Returns the subscenario plus the (identity) vertex mapping.
    """
    keep = set(map(str, keep))
    unknown = keep - set(s.vertices)
    if unknown:
        raise EdgeWithUnknownVertex(f"not vertices of {s.name}: {sorted(unknown)}")
    if not keep:
        raise EmptyVertexSet("induced subscenario needs a non-empty vertex set")
    new_edges = []
    for e in s.edges:
        cut = [v for v in e if v in keep]
        if not cut:
            raise EmptyInducedEdge(f"edge {e} does not meet the kept set")
        new_edges.append(cut)
    sub = Scenario(f"{s.name}|{len(keep)}", sorted(keep), new_edges)
    return sub, {v: v for v in sub.vertices}
