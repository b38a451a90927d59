"""The weighted invariant suite: independence, packing, theta, capacity.

Four numbers attach to a weighted graph, sandwiched as
alpha <= capacity <= theta <= alpha*.  The independence number is exact
branch-and-bound, the packing number an exact clique LP, theta a certified
SDP, and the capacity is bracketed through strong powers.
"""

from fractions import Fraction

from contextuality import (
    WeightedGraph,
    alpha,
    alpha_star,
    blow_up,
    capacity_bounds,
    lovasz_theta,
    strong_product,
)

pentagon = WeightedGraph(
    "abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")]
)
a, witness = alpha(pentagon)
print("pentagon independence number:", a, "witness:", witness)
print("fractional packing:", alpha_star(pentagon))
print("theta:", lovasz_theta(pentagon).value, "(= sqrt 5)")

# One strong square already beats the single-shot rate: five independent
# pairs fit among 25 vertices.
square = strong_product(pentagon, pentagon)
print("independence of the strong square:", alpha(square)[0], "> alpha^2 =", a * a)

bounds = capacity_bounds(pentagon, max_power=2)
print("capacity bracket: best root", round(bounds["lower"], 6),
      "from power", bounds["lower_pair"][0], "| theta upper", round(bounds["upper"], 6),
      "| single-shot:", bounds["single_shot"])

# The Kneser graph on 2-subsets of a 5-set (the matching scenario's
# non-orthogonality graph) is single-shot: alpha = theta = 4.
from itertools import combinations

verts = ["".join(map(str, v)) for v in combinations(range(5), 2)]
edges = [(u, v) for u, v in combinations(verts, 2) if not set(u) & set(v)]
kneser = WeightedGraph(verts, edges)
kb = capacity_bounds(kneser, max_power=1)
print("\nKneser(5,2): alpha =", kb["alpha"], "theta =", round(kb["upper"], 6),
      "single-shot:", kb["single_shot"])

# Blow-ups replace a vertex by weight-many twins; the exact invariants are
# indifferent to this, which is how weighted statements reduce to unweighted.
weighted = pentagon.with_weights(
    {"a": 3, "b": 1, "c": 2, "d": 1, "e": Fraction(2)}
)
blown = blow_up(weighted)
print("\nblow-up of a weighted pentagon:", len(blown), "vertices")
print("alpha preserved:", alpha(weighted)[0], "==", alpha(blown)[0])
print("alpha* preserved:", alpha_star(weighted), "==", alpha_star(blown))
