"""Scenarios, models, and why some hypergraphs have no consistent statistics.

A scenario is a hypergraph: vertices are measurement outcomes, edges are
complete measurements.  A model assigns each outcome an exact rational
probability so that every measurement sums to 1.  This walkthrough builds a
few small scenarios and shows rigidity, impossibility, and the
non-orthogonality graph.
"""

from fractions import Fraction

from contextuality import (
    allows_general,
    enumerate_deterministic,
    g_dimension,
    induced_subscenario,
    new_scenario,
    non_orthogonality_graph,
    validate_model,
)
from contextuality.catalog import catalog_get, circular, ks_18

# Three binary measurements, pairwise sharing an outcome. The normalization
# equations p1+p2 = p2+p3 = p1+p3 = 1 have exactly one solution.
triangle = new_scenario(
    "triangle", ["v1", "v2", "v3"], [["v1", "v2"], ["v2", "v3"], ["v1", "v3"]]
)
model = validate_model(triangle, {v: Fraction(1, 2) for v in triangle.vertices})
print("triangle accepts the all-1/2 model:", dict(model.weights))
print("and nothing else: polytope dimension =", g_dimension(triangle))

# No 0/1 assignment can hit each edge exactly once here (odd cycle), so the
# scenario has a model but no deterministic one.
print("deterministic models of the triangle:", enumerate_deterministic(triangle))

# The non-orthogonality graph connects outcomes that never share a
# measurement. For the triangle every pair shares one, so it is edgeless.
print("non-orthogonality edges:", non_orthogonality_graph(triangle).edge_list())

# Some scenarios admit no model at all: three rigid triangles whose forced
# 1/2-weights clash with a joint three-outcome measurement.
h0 = catalog_get("h0_empty").scenario
ok, certificate = allows_general(h0)
print("\nthree-triangles-plus-joint-edge admits a model:", ok)
print("refutation certificate kind:", certificate.kind)

# Restricting a scenario to a vertex subset intersects all edges with it.
# The pentagon ring of the 5-circular scenario is rigid: all weights 1/2.
d5 = circular(5).scenario
ring, _ = induced_subscenario(d5, [f"v{i}" for i in range(1, 6)])
print("\npentagon ring dimension:", g_dimension(ring))

# The 18-outcome Kochen-Specker scenario: every outcome sits in exactly two
# of the nine 4-outcome measurements. A deterministic assignment would need
# 2 |chosen| = 9, impossible, so no noncontextual value assignment exists.
ks = ks_18().scenario
print("\nKochen-Specker scenario:", len(ks.vertices), "outcomes,", len(ks.edges), "measurements")
print("outcome multiplicity:", sorted({len(ks.edges_of(v)) for v in ks.vertices}))
print("admits a general model:", allows_general(ks)[0])
print("admits a deterministic model:", bool(enumerate_deterministic(ks)))
