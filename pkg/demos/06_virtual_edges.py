"""Virtual edges: outcome sets that are forced to behave like measurements.

Some vertex sets are never written as edges yet provably carry total
probability 1 under every model.  A bounded saturation derives such sets
from three generation rules; scenarios whose edges are virtual in each other
are observationally equivalent, which is exactly what reconciles the
different multi-party products.
"""

from fractions import Fraction
from itertools import combinations

from contextuality import (
    completion_check,
    enumerate_deterministic,
    max_product,
    min_product,
    saturate_equivalences,
)
from contextuality.catalog import cycle_scenario, special_scenarios

# A five-cycle of binary measurements: the odd ring forces every vertex to
# weight 1/2, and saturation proves all singletons interchangeable.
c5 = cycle_scenario(5).scenario
table = saturate_equivalences(c5)
print("five-cycle singleton classes:", set(table.vertex_classes.values()))
pairs = list(combinations(c5.vertices, 2))
print("all", len(pairs), "vertex pairs are virtual edges:",
      all(table.is_virtual_edge(p) for p in pairs))

# Equivalent sets need not have equal sizes: here a 3-set and a 2-set are
# forced to equal total probability, and both are virtual edges.
sp = special_scenarios()
persp = sp["perspectivity"].scenario
t = saturate_equivalences(persp)
print("\nperspectivity scenario: {v1,v2,v3} ~ {w1,w2}:",
      t.equivalent(["v1", "v2", "v3"], ["w1", "w2"]))

# Soundness check: every derived virtual edge sums to 1 under every
# deterministic model of its scenario.
for entry_key in ("perspectivity", "rigid_cycle5"):
    s = sp[entry_key].scenario
    tt = saturate_equivalences(s)
    ok = all(
        sum((m.weights[v] for v in ve), Fraction(0)) == 1
        for ve in tt.virtual_edges
        for m in enumerate_deterministic(s)
    )
    print(f"virtual edges of {entry_key} sum to 1 under all deterministic models:", ok)

# The payoff: the minimal and maximal three-party products differ as edge
# sets, but each edge of one is a virtual edge of the other, so their
# completions coincide and the two scenarios are observationally equal.
a, b, c = (sp["nonassoc_a"].scenario, sp["nonassoc_b"].scenario, sp["nonassoc_c"].scenario)
mn, mx = min_product([a, b, c]), max_product([a, b, c])
print("\nminimal product:", len(mn.edges), "edges | maximal product:", len(mx.edges), "edges")
print("completion verdict:", completion_check(mn, mx))
