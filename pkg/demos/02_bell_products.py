"""Bell scenarios as products, and why the product must be chosen with care.

Two parties measuring jointly form a product scenario.  Taking only
simultaneous measurements (the direct product) admits signaling models; the
Foulis-Randall product adds the measure-then-tell joint measurements, and
its models are exactly the no-signaling boxes.  With three or more parties
the binary product is not even associative, yet all choices agree
observationally.
"""

from fractions import Fraction

from contextuality import (
    bell_scenario,
    direct_product,
    fr_product,
    max_product,
    min_product,
    new_scenario,
    no_signaling_check,
    validate_model,
)
from contextuality.catalog import pr_box, special_scenarios
from contextuality.products import single_party_scenario

one_party = single_party_scenario(2, 2)
print("one party, two binary settings:", len(one_party.vertices), "outcomes,",
      len(one_party.edges), "measurements")

direct = direct_product(one_party, one_party)
fr = fr_product(one_party, one_party)
print("direct product edges:", len(direct.edges), " product-with-communication edges:", len(fr.edges))

# A deterministic direct-product model in which one party's marginal depends
# on the other's measurement choice: valid on the direct product, signaling.
chain = new_scenario("chain", ["1", "2", "3"], [["1", "2"], ["2", "3"]])
grid = {("1", "1"): 0, ("1", "2"): 0, ("1", "3"): 1,
        ("2", "1"): 1, ("2", "2"): 0, ("2", "3"): 0,
        ("3", "1"): 0, ("3", "2"): 0, ("3", "3"): 1}
signaling = validate_model(
    direct_product(chain, chain),
    {f"{a}⊗{b}": Fraction(v) for (a, b), v in grid.items()},
)
violations = no_signaling_check([chain, chain], signaling)
print("signaling grid violates", len(violations), "no-signaling equations")

# Tensors of single-party models are always no-signaling; the PR box is a
# no-signaling model that is NOT a tensor (nor a mixture of tensors).
b222 = bell_scenario(2, 2, 2)
print("\nCHSH scenario:", len(b222.vertices), "events,", len(b222.edges), "measurements")
pr = pr_box(b222)
print("PR box weights on context 00:", {v: str(pr.weights[v]) for v in b222.edges[0]})

# Three parties: the bracketing of binary products matters on the nose.
sp = special_scenarios()
a, b, c = (sp["nonassoc_a"].scenario, sp["nonassoc_b"].scenario, sp["nonassoc_c"].scenario)
left = fr_product(fr_product(a, b), c)
right = fr_product(a, fr_product(b, c))
mn, mx = min_product([a, b, c]), max_product([a, b, c])
print("\nthree-party products, edge counts:",
      {"minimal": len(mn.edges), "(ab)c": len(left.edges),
       "a(bc)": len(right.edges), "maximal": len(mx.edges)})
witness = tuple(sorted([
    "a1⊗b1⊗c1", "a1⊗b2⊗c1", "a1⊗b2⊗c2", "a1⊗b3⊗c2",
    "a2⊗b1⊗c2", "a2⊗b2⊗c2", "a2⊗b2⊗c3", "a2⊗b3⊗c3"]))
print("the middle-party-measures-second edge lies in a(bc):", witness in right.edges,
      " and in (ab)c:", witness in left.edges)
print("inclusions minimal <= brackets <= maximal:",
      set(mn.edges) <= set(left.edges) <= set(mx.edges))
