"""Acceptance criteria, one test per numbered criterion.

Each test prints a single PASS line when its assertions hold; tolerances are
pinned here and nowhere else.  Run with ``pytest -s tests/test_acceptance.py``
to see the lines.
"""

import json
import math
import random
from fractions import Fraction
from pathlib import Path

from contextuality import (
    WeightedGraph,
    allows_classical,
    allows_general,
    alpha,
    alpha_star,
    blow_up,
    ce_level,
    check_certificate,
    completion_check,
    direct_product,
    enumerate_deterministic,
    extremal_models,
    fr_product,
    g_dimension,
    lovasz_theta,
    max_product,
    maximize_over_classical,
    maximize_over_general,
    min_product,
    new_scenario,
    non_orthogonality_graph,
    q1_membership_theta,
    q1_optimize,
    q_membership,
    saturate_equivalences,
    strong_product,
    tensor_models,
    validate_model,
)
from contextuality.catalog import (
    antiprism,
    catalog_get,
    catalog_list,
    circular,
    cycle_scenario,
    matching_scenario,
    special_scenarios,
)
from contextuality.graphs import strong_power
from contextuality.solvers import EQ, LinearProgram, lp_solve

from oracles import fractional_perfect_matchings

DATA = Path(__file__).parent / "data"


def report(n, text):
    print(f"\nACCEPTANCE {n:02d}: PASS  {text}")


def test_c01_chsh_structure(b222):
    assert len(b222.vertices) == 16
    assert len(b222.edges) == 12
    golden = (DATA / "b222_golden.json").read_bytes()
    fresh = (json.dumps(b222.to_jsonable(), sort_keys=True, indent=2) + "\n").encode()
    assert fresh == golden
    report(1, "CHSH scenario: 16 vertices, 12 edges, byte-identical golden file")


def test_c02_no_signaling_polytope(b222):
    ems = extremal_models(b222)
    assert len(ems) == 24
    dets = [e for e in ems if e.is_deterministic]
    boxes = [e for e in ems if not e.is_deterministic]
    assert len(dets) == 16
    assert len(boxes) == 8
    for box in boxes:
        nonzero = [w for w in box.model.weights.values() if w != 0]
        assert len(nonzero) == 8 and set(nonzero) == {Fraction(1, 2)}
    report(2, "24 extreme points of the CHSH polytope: 16 deterministic + 8 half-weight boxes")


def test_c03_ks18():
    entry = catalog_get("ks18")
    s = entry.scenario
    assert len(s.vertices) == 18
    assert len(s.edges) == 9
    assert all(len(s.edges_of(v)) == 2 for v in s.vertices)
    ok, cert = allows_classical(s)
    assert not ok
    report(3, "18-vertex Kochen-Specker scenario admits no deterministic model")


def test_c04_empty_scenario_farkas():
    s = special_scenarios()["h0_empty"].scenario
    ok, cert = allows_general(s)
    assert not ok
    assert cert.kind == "farkas"
    assert check_certificate(cert, s)
    report(4, "empty-model scenario refuted with a verifying Farkas certificate")


def test_c05_kcbs():
    entry = circular(5)
    objective = {f"v{i}": 1 for i in range(1, 6)}
    vc, _ = maximize_over_classical(entry.scenario, objective)
    vg, _ = maximize_over_general(entry.scenario, objective)
    assert vc == 2
    assert vg == Fraction(5, 2)
    vq = q1_optimize(entry.scenario, objective)
    assert abs(vq - math.sqrt(5)) < 1e-4
    report(5, f"pentagon functional: classical 2, general 5/2, level-1 optimum {vq:.6f} = sqrt5")


def test_c06_circular_law():
    for n in range(3, 8):
        entry = circular(n)
        s = entry.scenario
        assert g_dimension(s) == n
        ems = extremal_models(s)
        nondet = [e for e in ems if not e.is_deterministic]
        if n % 2 == 0:
            assert nondet == []
        else:
            assert len(nondet) == 1
            assert nondet[0].model.vector() == entry.models["px"].vector()
    report(6, "circular scenarios n=3..7: dimension n; odd n has exactly the half-weight extremal")


def test_c07_antiprism4():
    entry = antiprism(4)
    s = entry.scenario
    assert g_dimension(s) == 0
    model = entry.models["uniform"]
    assert set(model.weights.values()) == {Fraction(1, 3)}
    graph = non_orthogonality_graph(s)
    theta = lovasz_theta(graph).value
    assert abs(theta - (2 + math.sqrt(2))) < 1e-5
    sdp_verdict, _ = q_membership(s, model, 1)
    theta_verdict, _, _ = q1_membership_theta(s, model)
    assert sdp_verdict == theta_verdict == "out"
    report(7, "4-antiprism: rigid 1/3 model, theta = 2+sqrt2, out of the level-1 set by both routes")


def test_c08_pr_activation(b222, pr):
    ok1, _ = ce_level(b222, pr, 1)
    assert ok1
    ok2, cert = ce_level(b222, pr, 2)
    assert not ok2
    weight = cert.payload["weight"]
    assert weight > 1
    # the witness is an independent set of the full 256-vertex strong square
    square = strong_power(non_orthogonality_graph(b222), 2)
    assert len(square.vertices) == 256
    witness = cert.payload["vertices"]
    for i, u in enumerate(witness):
        for v in witness[i + 1 :]:
            assert not square.adjacent(u, v)
    recomputed = Fraction(0)
    for vid in witness:
        parts = vid.split("⊗")
        recomputed += pr.weights[parts[0]] * pr.weights[parts[1]]
    assert recomputed == weight
    assert check_certificate(cert, b222, pr)
    report(8, f"PR box: exclusivity holds at one copy, fails at two (witness weight {weight})")


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


def _ns_direct_system(a, b):
    """LP rows of the no-signaling direct-product polytope, as (coeffs, rhs)."""
    prod = direct_product(a, b)
    idx = {v: i for i, v in enumerate(prod.vertices)}
    rows = []
    for e in prod.edges:
        rows.append(({idx[v]: Fraction(1) for v in e}, Fraction(1)))
    for u in a.vertices:  # second party's context invisible to the first
        for e1, e2 in zip(b.edges, b.edges[1:]):
            coeffs = {}
            for w in e1:
                coeffs[idx[f"{u}⊗{w}"]] = coeffs.get(idx[f"{u}⊗{w}"], Fraction(0)) + 1
            for w in e2:
                coeffs[idx[f"{u}⊗{w}"]] = coeffs.get(idx[f"{u}⊗{w}"], Fraction(0)) - 1
            rows.append((coeffs, Fraction(0)))
    for w in b.vertices:
        for e1, e2 in zip(a.edges, a.edges[1:]):
            coeffs = {}
            for u in e1:
                coeffs[idx[f"{u}⊗{w}"]] = coeffs.get(idx[f"{u}⊗{w}"], Fraction(0)) + 1
            for u in e2:
                coeffs[idx[f"{u}⊗{w}"]] = coeffs.get(idx[f"{u}⊗{w}"], Fraction(0)) - 1
            rows.append((coeffs, Fraction(0)))
    return prod, rows


def _system_implies(base_rows, nvars, coeffs, rhs) -> bool:
    """Does {base rows, p >= 0} force coeffs . p = rhs?  Exact, via two LPs."""
    for sign in (1, -1):
        lp = LinearProgram(
            num_vars=nvars,
            objective={j: sign * c for j, c in coeffs.items()},
        )
        for crow, b in base_rows:
            lp.add_row(crow, EQ, b)
        r = lp_solve(lp)
        if r.status == "infeasible":
            return True  # empty polytopes trivially agree
        if r.status == "unbounded" or r.value != sign * rhs:
            return False
    return True


def test_c09_product_laws():
    rng = random.Random(2026)
    pairs = 0
    while pairs < 50:
        a = _random_scenario(rng, f"L{pairs}_")
        b = _random_scenario(rng, f"R{pairs}_")
        try:
            fr = fr_product(a, b)
        except Exception:
            continue
        pairs += 1
        # non-orthogonality graph factorizes through the strong product
        assert non_orthogonality_graph(fr) == strong_product(
            non_orthogonality_graph(a), non_orthogonality_graph(b)
        )
        # tensor of valid models validates
        ra = allows_general(a)
        rb = allows_general(b)
        tensor = None
        if ra[0] and rb[0]:
            pa = validate_model(a, ra[1].payload["weights"])
            pb = validate_model(b, rb[1].payload["weights"])
            tensor = tensor_models(pa, pb, fr)
        # witness-level equivalence both ways, exact, on every pair:
        # an FR-product model satisfies the no-signaling direct system, and
        # a no-signaling direct witness validates on the FR product
        prod, ns_rows = _ns_direct_system(a, b)
        assert prod.vertices == fr.vertices
        idx = {v: i for i, v in enumerate(fr.vertices)}
        n = len(fr.vertices)
        if tensor is not None:
            vec = [tensor.weights[v] for v in fr.vertices]
            for coeffs, rhs in ns_rows:
                assert sum(vec[j] * c for j, c in coeffs.items()) == rhs
        ns_lp = LinearProgram(num_vars=n)
        for coeffs, rhs in ns_rows:
            ns_lp.add_row(coeffs, EQ, rhs)
        ns_report = lp_solve(ns_lp)
        if ns_report.status != "infeasible":
            validate_model(fr, dict(zip(fr.vertices, ns_report.witness)))
        # the polytopes are identical as constraint systems (full LP proof
        # on a subsample; each row of one is implied by the other)
        if pairs <= 12:
            fr_rows = [
                ({idx[v]: Fraction(1) for v in e}, Fraction(1)) for e in fr.edges
            ]
            for coeffs, rhs in fr_rows:
                assert _system_implies(ns_rows, n, coeffs, rhs)
            for coeffs, rhs in ns_rows:
                assert _system_implies(fr_rows, n, coeffs, rhs)
    report(9, "50 random pairs: NO factorization, tensor validity, and the"
              " product polytope = no-signaling polytope identity")


def test_c10_products_hierarchy_and_completion():
    sp = special_scenarios()
    a = sp["nonassoc_a"].scenario
    b = sp["nonassoc_b"].scenario
    c = sp["nonassoc_c"].scenario
    mx = max_product([a, b, c])
    mn = min_product([a, b, c])
    left = fr_product(fr_product(a, b), c)
    eight = tuple(sorted([
        "a1⊗b1⊗c1", "a1⊗b2⊗c1", "a1⊗b2⊗c2", "a1⊗b3⊗c2",
        "a2⊗b1⊗c2", "a2⊗b2⊗c2", "a2⊗b2⊗c3", "a2⊗b3⊗c3",
    ]))
    assert eight in mx.edges
    assert eight not in left.edges
    assert set(mn.edges) <= set(left.edges) <= set(mx.edges)
    assert completion_check(mn, mx) == "equivalent"
    report(10, "bracketing-dependent edge confirmed; min/max products equivalent after completion")


def _random_graph(rng, n):
    verts = [f"g{i}" for i in range(n)]
    edges = [
        (u, v)
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if rng.random() < 0.4
    ]
    weights = {v: Fraction(rng.randint(0, 8), rng.randint(1, 5)) for v in verts}
    return WeightedGraph(verts, edges, weights)


def test_c11_sandwich_and_blowup():
    rng = random.Random(99)
    for _ in range(100):
        g = _random_graph(rng, rng.randint(2, 10))
        a = float(alpha(g)[0])
        th = lovasz_theta(g).value
        astar = float(alpha_star(g))
        assert a <= th + 1e-5
        assert th <= astar + 2e-5
    for _ in range(20):
        g = _random_graph(rng, 6).with_weights(
            {f"g{i}": Fraction(rng.randint(0, 3)) for i in range(6)}
        )
        blown = blow_up(g)
        assert alpha(blown)[0] == alpha(g)[0]
        assert alpha_star(blown) == alpha_star(g)
    for _ in range(10):
        g = _random_graph(rng, 5)
        h = _random_graph(rng, 5)
        tg = lovasz_theta(g).value
        th_ = lovasz_theta(h).value
        tp = lovasz_theta(strong_product(g, h)).value
        assert abs(tp - tg * th_) < 1e-4 * max(1.0, tg * th_)
    report(11, "sandwich chain on 100 graphs, exact blow-up invariance, theta multiplicativity")


def test_c12_matching_scenarios():
    for m, expected in ((4, True), (6, True), (3, False), (5, False), (7, False)):
        assert allows_classical(matching_scenario(m).scenario)[0] == expected
    s = matching_scenario(5).scenario
    ems = extremal_models(s)
    assert len(ems) == 22
    oracle = fractional_perfect_matchings(5)
    assert len(oracle) == 22
    arcs = sorted(tuple(map(int, v.split("-"))) for v in s.vertices)
    from itertools import combinations

    oracle_arcs = list(combinations(range(1, 6), 2))
    perm = [oracle_arcs.index(a) for a in arcs]
    oracle_set = {tuple(vec[i] for i in perm) for vec in oracle}
    mine = {
        tuple(e.model.weights["-".join(map(str, a))] for a in arcs) for e in ems
    }
    assert mine == oracle_set
    report(12, "matching scenarios: classical iff even; the 22 half-integer matchings recovered exactly")


def test_c13_virtual_edges():
    c5 = cycle_scenario(5).scenario
    table = saturate_equivalences(c5)
    assert len(set(table.vertex_classes.values())) == 1
    fig = special_scenarios()["perspectivity"].scenario
    table14 = saturate_equivalences(fig)
    assert table14.equivalent(["v1", "v2", "v3"], ["w1", "w2"])
    for entry in (special_scenarios()["perspectivity"],
                  special_scenarios()["rigid_cycle5"], circular(4), circular(5)):
        s = entry.scenario
        t = saturate_equivalences(s)
        models = list(entry.models.values()) + enumerate_deterministic(s)
        for ve in t.virtual_edges:
            for model in models:
                assert sum((model.weights[v] for v in ve), Fraction(0)) == 1
    report(13, "virtual edges: 5-cycle singleton collapse, size-3/size-2 equivalence,"
               " and unit sums under every enumerated model")


def test_c14_q1_two_route_agreement():
    pairs = []
    for key in catalog_list():
        try:
            entry = catalog_get(key)
        except Exception:
            continue
        if len(entry.scenario.vertices) > 20:
            continue
        for name, model in sorted(entry.models.items()):
            pairs.append((entry.key, name, entry.scenario, model))
    assert len(pairs) >= 20
    for key, name, s, model in pairs:
        sdp_verdict, _ = q_membership(s, model, 1)
        theta_verdict, value, _ = q1_membership_theta(s, model)
        assert sdp_verdict != "inconclusive", (key, name)
        assert theta_verdict != "inconclusive", (key, name)
        assert sdp_verdict == theta_verdict, (key, name, value)
    report(14, f"level-1 membership: SDP and theta routes agree on {len(pairs)} catalog models")
