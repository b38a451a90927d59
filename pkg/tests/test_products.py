import random

import pytest

from contextuality import (
    ProductKind,
    bell_scenario,
    direct_product,
    fr_product,
    max_product,
    min_product,
    new_scenario,
    non_orthogonality_graph,
    strong_product,
)
from contextuality.catalog import special_scenarios
from contextuality.errors import CombinatorialBlowup

EIGHT_TRIPLE = tuple(sorted([
    "a1⊗b1⊗c1", "a1⊗b2⊗c1", "a1⊗b2⊗c2", "a1⊗b3⊗c2",
    "a2⊗b1⊗c2", "a2⊗b2⊗c2", "a2⊗b2⊗c3", "a2⊗b3⊗c3",
]))


@pytest.fixture(scope="module")
def fig6():
    sp = special_scenarios()
    return (sp["nonassoc_a"].scenario, sp["nonassoc_b"].scenario, sp["nonassoc_c"].scenario)


def test_direct_product_counts():
    s = new_scenario("s", ["1", "2", "3"], [["1", "2"], ["2", "3"]])
    sq = direct_product(s, s)
    assert len(sq.vertices) == 9
    assert len(sq.edges) == 4


def test_direct_product_b122(b122):
    sq = direct_product(b122, b122)
    assert len(sq.vertices) == 16
    assert len(sq.edges) == 4


def test_single_edge_products_coincide():
    one = new_scenario("one", ["a", "b"], [["a", "b"]])
    assert fr_product(one, one).same_structure(direct_product(one, one))


def test_fr_b122_squared_counts(b122):
    s = fr_product(b122, b122)
    assert len(s.vertices) == 16
    assert len(s.edges) == 12


def test_chsh_edge_lists_match(b222):
    simultaneous = [
        ["00|00", "01|00", "10|00", "11|00"],
        ["00|01", "01|01", "10|01", "11|01"],
        ["00|10", "01|10", "10|10", "11|10"],
        ["00|11", "01|11", "10|11", "11|11"],
    ]
    alice_first = [
        ["00|00", "01|00", "10|01", "11|01"],
        ["00|10", "01|10", "10|11", "11|11"],
        ["00|01", "01|01", "10|00", "11|00"],
        ["00|11", "01|11", "10|10", "11|10"],
    ]
    bob_first = [
        ["00|00", "01|10", "10|00", "11|10"],
        ["00|01", "01|11", "10|01", "11|11"],
        ["00|10", "01|00", "10|10", "11|00"],
        ["00|11", "01|01", "10|11", "11|01"],
    ]
    expected = {tuple(sorted(e)) for e in simultaneous + alice_first + bob_first}
    assert set(b222.edges) == expected


def test_fr_contains_sequential_edge(fig6):
    _, hb, hc = fig6
    prod = fr_product(hb, hc)
    target = tuple(sorted(["b1⊗c1", "b2⊗c1", "b2⊗c2", "b3⊗c2"]))
    assert target in prod.edges


def test_min_equals_fr_for_two_factors(b122, fig6):
    _, hb, hc = fig6
    for a, b in ((b122, b122), (hb, hc)):
        assert min_product([a, b]).same_structure(fr_product(a, b))


def test_max_equals_fr_for_two_factors(b122, fig6):
    _, hb, hc = fig6
    for a, b in ((b122, b122), (hb, hc)):
        assert max_product([a, b]).same_structure(fr_product(a, b))


def test_single_factor_products_identity(b122):
    assert min_product([b122]) is b122
    assert max_product([b122]) is b122


def test_eight_triple_edge_in_max_not_min(fig6):
    mx = max_product(list(fig6))
    mn = min_product(list(fig6))
    assert EIGHT_TRIPLE in mx.edges
    assert EIGHT_TRIPLE not in mn.edges


def test_non_associativity_witness(fig6):
    a, b, c = fig6
    left = fr_product(fr_product(a, b), c)
    right = fr_product(a, fr_product(b, c))
    assert EIGHT_TRIPLE in right.edges
    assert EIGHT_TRIPLE not in left.edges
    assert set(left.edges) != set(right.edges)


def test_product_hierarchy_inclusions(fig6):
    a, b, c = fig6
    mn = min_product([a, b, c])
    mx = max_product([a, b, c])
    left = fr_product(fr_product(a, b), c)
    right = fr_product(a, fr_product(b, c))
    for binary in (left, right):
        assert set(mn.edges) <= set(binary.edges) <= set(mx.edges)


def test_local_orthogonality_law(fig6):
    a, b, c = fig6
    mx = max_product([a, b, c])
    left = fr_product(fr_product(a, b), c)
    factors = [a, b, c]

    def locally_orthogonal(u, v):
        us, vs = u.split("⊗"), v.split("⊗")
        return any(factors[i].orthogonal(us[i], vs[i]) for i in range(3))

    for prod in (mx, left):
        for u in prod.vertices:
            for v in prod.vertices:
                if u < v:
                    assert prod.orthogonal(u, v) == locally_orthogonal(u, v)
    # the law fails for the minimal product on this triple
    mn = min_product([a, b, c])
    u, v = "a1⊗b1⊗c1", "a2⊗b3⊗c3"
    assert locally_orthogonal(u, v)
    assert not mn.orthogonal(u, v)


def test_bell_scenario_counts():
    b1 = bell_scenario(1, 2, 2)
    assert len(b1.vertices) == 4 and len(b1.edges) == 2
    b2 = bell_scenario(2, 2, 2)
    assert len(b2.vertices) == 16 and len(b2.edges) == 12
    b3 = bell_scenario(2, 1, 2)
    assert len(b3.vertices) == 4 and len(b3.edges) == 1


def test_bell_scenario_kinds_agree_for_two_parties():
    assert bell_scenario(2, 2, 2, kind="fr_min").same_structure(
        bell_scenario(2, 2, 2, kind="fr_max")
    )
    assert bell_scenario(2, 2, 2).same_structure(bell_scenario(2, 2, 2, kind="fr_binary"))


def test_product_kind_validation():
    with pytest.raises(ValueError):
        ProductKind("bogus")
    with pytest.raises(ValueError):
        bell_scenario(0, 2, 2)


def test_blowup_cap():
    big = bell_scenario(1, 3, 3)
    with pytest.raises(CombinatorialBlowup):
        fr_product(big, big, edge_cap=10)


def _random_scenario(rng, name, max_verts=6):
    n = rng.randint(2, max_verts)
    verts = [f"{name}{i}" for i in range(n)]
    edges = []
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(1, min(3, n))
        edges.append(rng.sample(verts, k))
    covered = {v for e in edges for v in e}
    rest = [v for v in verts if v not in covered]
    if rest:
        edges.append(rest)
    return new_scenario(name, verts, edges)


def test_no_graph_of_fr_is_strong_product_random():
    rng = random.Random(7)
    for trial in range(25):
        a = _random_scenario(rng, f"A{trial}_")
        b = _random_scenario(rng, f"B{trial}_")
        left = non_orthogonality_graph(fr_product(a, b))
        right = strong_product(non_orthogonality_graph(a), non_orthogonality_graph(b))
        assert left == right


def test_no_graph_of_fr_is_strong_product_catalog(b122, triangle, fig6):
    from contextuality.catalog import catalog_get

    _, hb, hc = fig6
    cycle5 = catalog_get("cycle5").scenario
    factors = [(b122, b122), (triangle, b122), (hb, hc), (cycle5, triangle)]
    for a, b in factors:
        left = non_orthogonality_graph(fr_product(a, b))
        right = strong_product(non_orthogonality_graph(a), non_orthogonality_graph(b))
        assert left == right


def test_right_nested_bell_construction():
    left = bell_scenario(3, 2, 2, kind=ProductKind("fr_binary", "left"))
    right = bell_scenario(3, 2, 2, kind=ProductKind("fr_binary", "right"))
    mn = bell_scenario(3, 2, 2, kind="fr_min")
    mx = bell_scenario(3, 2, 2, kind="fr_max")
    assert left.vertices == right.vertices == mn.vertices
    for bracketing in (left, right):
        assert set(mn.edges) <= set(bracketing.edges) <= set(mx.edges)
