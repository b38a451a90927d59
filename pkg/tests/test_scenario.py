import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contextuality import (
    Scenario,
    induced_subscenario,
    new_scenario,
    non_orthogonality_graph,
)
from contextuality.catalog import matching_scenario
from contextuality.errors import (
    EdgeWithUnknownVertex,
    EmptyInducedEdge,
    EmptyVertexSet,
    UncoveredVertex,
)


def test_triangle_construction(triangle):
    assert triangle.vertices == ("v1", "v2", "v3")
    assert len(triangle.edges) == 3
    assert triangle.is_antichain


def test_single_outcome_scenario():
    s = new_scenario("one", ["a"], [["a"]])
    assert s.vertices == ("a",)
    assert s.edges == (("a",),)


def test_uncovered_vertex_rejected():
    with pytest.raises(UncoveredVertex):
        new_scenario("bad", ["a", "b"], [["a"]])


def test_empty_vertex_set_rejected():
    with pytest.raises(EmptyVertexSet):
        new_scenario("bad", [], [])


def test_unknown_vertex_rejected():
    with pytest.raises(EdgeWithUnknownVertex):
        new_scenario("bad", ["a"], [["a", "z"]])


def test_duplicate_edges_collapse():
    s = new_scenario("dup", ["a", "b"], [["a", "b"], ["b", "a"], ["a", "b"]])
    assert len(s.edges) == 1


def test_antichain_flag_not_enforced():
    s = new_scenario("nested", ["a", "b", "c"], [["a", "b"], ["a", "b", "c"]])
    assert not s.is_antichain


def test_serialization_roundtrip(b222):
    data = b222.to_jsonable()
    back = Scenario.from_jsonable(data)
    assert back.same_structure(b222)
    assert back.to_jsonable() == data


def test_orthogonality_relation(triangle):
    # sharing an edge <=> orthogonal; irreflexive
    assert triangle.orthogonal("v1", "v2")
    assert not triangle.orthogonal("v1", "v1")


def test_no_graph_triangle_edgeless(triangle):
    g = non_orthogonality_graph(triangle)
    assert g.edge_list() == []


def test_no_graph_two_disjoint_edges(b122):
    # vertices of different contexts never share an edge: complete bipartite
    g = non_orthogonality_graph(b122)
    for u in ("0|0", "1|0"):
        for v in ("0|1", "1|1"):
            assert g.adjacent(u, v)
    assert not g.adjacent("0|0", "1|0")
    assert not g.adjacent("0|1", "1|1")


def test_no_graph_symmetric_irreflexive(b222):
    g = non_orthogonality_graph(b222)
    for u in g.vertices:
        assert not g.adjacent(u, u)
        for v in g.vertices:
            if u != v:
                assert g.adjacent(u, v) == g.adjacent(v, u)
                assert g.adjacent(u, v) == (not b222.orthogonal(u, v))


def test_no_graph_matching5_is_petersen_shaped():
    s = matching_scenario(5).scenario
    g = non_orthogonality_graph(s)
    assert len(g.vertices) == 10
    assert all(g.degree(v) == 3 for v in g.vertices)
    # girth 5: no triangles or 4-cycles
    verts = g.vertices
    for a in verts:
        for b in verts:
            if not g.adjacent(a, b):
                continue
            common = [c for c in verts if g.adjacent(a, c) and g.adjacent(b, c)]
            assert not common  # no triangle
    for a in verts:
        for c in verts:
            if a < c and not g.adjacent(a, c):
                walk2 = [b for b in verts if g.adjacent(a, b) and g.adjacent(b, c)]
                assert len(walk2) <= 1  # two such paths would close a 4-cycle


def test_induced_identity(triangle):
    sub, mapping = induced_subscenario(triangle, triangle.vertices)
    assert sub.same_structure(triangle)
    assert mapping == {v: v for v in triangle.vertices}


def test_induced_triangle_from_circular3():
    from contextuality.catalog import circular

    s = circular(3).scenario
    sub, _ = induced_subscenario(s, ["v1", "v2", "v3"])
    assert len(sub.vertices) == 3
    assert sorted(sub.edges) == [("v1", "v2"), ("v1", "v3"), ("v2", "v3")]


def test_induced_circular5_unique_half():
    from fractions import Fraction

    from contextuality.catalog import circular
    from contextuality.polytope import allows_general, g_dimension

    s = circular(5).scenario
    sub, _ = induced_subscenario(s, [f"v{i}" for i in range(1, 6)])
    assert len(sub.edges) == 5
    assert all(len(e) == 2 for e in sub.edges)
    assert g_dimension(sub) == 0
    _, cert = allows_general(sub)
    assert set(cert.payload["weights"].values()) == {Fraction(1, 2)}


def test_induced_empty_edge_raises(triangle):
    with pytest.raises(EmptyInducedEdge):
        induced_subscenario(triangle, ["v1"])  # edge {v2,v3} is wiped out


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_induced_transitive(data):
    # (s|W)|W' equals s|W' for W' <= W, in canonical form
    n = data.draw(st.integers(3, 6))
    verts = [f"x{i}" for i in range(n)]
    edges = data.draw(
        st.lists(
            st.sets(st.sampled_from(verts), min_size=1, max_size=3),
            min_size=2,
            max_size=5,
        )
    )
    covered = set().union(*edges) if edges else set()
    if covered != set(verts):
        edges = edges + [set(verts) - covered | {verts[0]}]
    s = new_scenario("rand", verts, [sorted(e) for e in edges])
    w = data.draw(st.sets(st.sampled_from(list(s.vertices)), min_size=2))
    w2 = data.draw(st.sets(st.sampled_from(sorted(w)), min_size=1))
    try:
        sub, _ = induced_subscenario(s, w)
        sub2, _ = induced_subscenario(sub, w2)
        direct, _ = induced_subscenario(s, w2)
    except EmptyInducedEdge:
        return
    assert sub2.same_structure(direct)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_serialization_roundtrip_random(data):
    n = data.draw(st.integers(1, 6))
    verts = [f"r{i}" for i in range(n)]
    edges = data.draw(
        st.lists(st.sets(st.sampled_from(verts), min_size=1), min_size=1, max_size=4)
    )
    covered = set().union(*edges)
    if covered != set(verts):
        edges.append(set(verts) - covered)
    s = new_scenario("rt", verts, [sorted(e) for e in edges])
    assert Scenario.from_jsonable(s.to_jsonable()).same_structure(s)
