"""The level-1 relaxation, exclusivity principles, and activation.

Membership in the level-1 moment-matrix set can be decided two ways: a
feasibility SDP over outcome strings, or a single weighted theta number of
the non-orthogonality graph.  Exclusivity (every pairwise-exclusive event
set carries total weight <= 1) is weaker, but running it on parallel copies
of a box strengthens it, separating the PR box at two copies.
"""

import math
from fractions import Fraction

from contextuality import (
    bell_scenario,
    ce_infinity,
    ce_level,
    perfection_report,
    q1_membership_theta,
    q1_optimize,
    q_membership,
)
from contextuality.catalog import antiprism, circular, pr_box, tsirelson_box

b222 = bell_scenario(2, 2, 2)
pr = pr_box(b222)
tsir = tsirelson_box(b222)

for name, box in (("PR box", pr), ("Tsirelson box", tsir)):
    sdp_verdict, _ = q_membership(b222, box, 1)
    theta_verdict, theta, _ = q1_membership_theta(b222, box)
    print(f"{name}: moment SDP says {sdp_verdict!r}, theta route says "
          f"{theta_verdict!r} (theta = {theta:.6f})")

# The parity-game value over the level-1 set reproduces the quantum bound.
game = {v: Fraction(1, 4) for v in b222.vertices
        if (int(v[0]) ^ int(v[1])) == (int(v[3]) & int(v[4]))}
print("\nparity game optimum over the relaxation:", round(q1_optimize(b222, game), 6),
      "= (2+sqrt2)/4 =", round((2 + math.sqrt(2)) / 4, 6))

# Exclusivity: the PR box passes at one copy (it is no-signaling) but two
# parallel copies admit a pairwise-exclusive event set of weight 5/4.
ok1, _ = ce_level(b222, pr, 1)
ok2, cert = ce_level(b222, pr, 2)
print("\nPR box exclusivity: one copy", ok1, "| two copies", ok2,
      "| violating weight", cert.payload["weight"])
print("all-levels verdict:", ce_infinity(b222, pr, max_power=2)[0])

# The pentagon ring functional again, now over the relaxation: sqrt 5.
d5 = circular(5)
print("\npentagon ring optimum over the relaxation:",
      round(q1_optimize(d5.scenario, {f"v{i}": 1 for i in range(1, 6)}), 6),
      "= sqrt 5 =", round(math.sqrt(5), 6))

# The 4-antiprism is rigid (unique model), consistent with exclusivity, and
# still outside the relaxation: theta of its graph is 2 + sqrt2 > 3 * 1/3.
ap4 = antiprism(4)
verdict, theta, _ = q1_membership_theta(ap4.scenario, ap4.models["uniform"])
print("\n4-antiprism uniform model:", verdict, f"(theta x 1/3 = {theta:.6f})")
print("but exclusivity alone accepts it:",
      ce_level(ap4.scenario, ap4.models["uniform"], 1)[0])

# When the non-orthogonality graph is perfect, classical = exclusivity-
# consistent, and no contextuality is possible at all.
print("\nperfection report for the one-party scenario:",
      perfection_report(bell_scenario(1, 3, 2))["no_graph_perfect"])
