"""Exact polytope decisions: extreme points, membership, and certificates.

The set of all models of a scenario is a rational polytope; the classical
models form the subpolytope spanned by the deterministic ones.  All
decisions here are exact (rational simplex), and each answer carries a
certificate that an independent checker re-verifies.
"""

from fractions import Fraction

from contextuality import (
    bell_scenario,
    check_certificate,
    extremal_models,
    g_dimension,
    is_classical,
    maximize_over_classical,
    maximize_over_general,
)
from contextuality.catalog import circular, matching_scenario, pr_box

b222 = bell_scenario(2, 2, 2)
print("CHSH no-signaling polytope: dimension", g_dimension(b222))
ems = extremal_models(b222)
dets = [e for e in ems if e.is_deterministic]
boxes = [e for e in ems if not e.is_deterministic]
print("extreme points:", len(ems), "=", len(dets), "deterministic +", len(boxes), "boxes")
print("every box has eight events of weight", set(
    w for e in boxes for w in e.model.weights.values() if w != 0))

# Membership with certificates: the PR box is outside the classical polytope
# and the refutation is a linear functional separating it from every
# deterministic model, checked in exact arithmetic.
pr = pr_box(b222)
classical, certificate = is_classical(pr)
print("\nPR box classical:", classical, "| certificate kind:", certificate.kind)
print("certificate re-verifies:", check_certificate(certificate, b222, pr))

# The pentagon inequality: over classical models the ring functional
# reaches 2; over all no-signaling models it reaches 5/2.
d5 = circular(5)
ring = {f"v{i}": 1 for i in range(1, 6)}
vc, _ = maximize_over_classical(d5.scenario, ring)
vg, argmax = maximize_over_general(d5.scenario, ring)
print("\npentagon ring functional: classical max", vc, "| general max", vg)
print("general maximizer is the half-weight box:", argmax.vector() == d5.models["px"].vector())

# Matching scenarios: models are fractional perfect matchings of a complete
# graph. For five nodes the 22 extreme points are the 12 pentagon tours and
# the 10 triangle-plus-arc configurations, all half-integral.
mat5 = matching_scenario(5).scenario
ems5 = extremal_models(mat5)
print("\nfive-node matching scenario extreme points:", len(ems5))
print("support sizes:", sorted({len(e.support) for e in ems5}))
print("all half-integral:", all(
    set(e.model.weights.values()) <= {Fraction(0), Fraction(1, 2), Fraction(1)}
    for e in ems5))
