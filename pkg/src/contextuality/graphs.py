"""Weighted graphs and their packing invariants.

Carries the invariant suite used throughout: the exact weighted independence
number ``alpha`` (branch and bound), the exact fractional packing number
``alpha_star`` (maximal cliques + rational LP), the Lovász number ``theta``
(SDP, tolerance-certified), and Shannon-capacity bounds from strong powers.
The sandwich ``alpha <= Theta <= theta <= alpha_star`` holds throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import BudgetExceeded, NonIntegerWeight, SizeCap
from .rational import format_rational, parse_rational
from .solvers import LE, LinearProgram, SdpProblem, SolveReport, lp_solve, sdp_solve

__all__ = [
    "WeightedGraph",
    "strong_product",
    "disjoint_union",
    "blow_up",
    "alpha",
    "alpha_star",
    "lovasz_theta",
    "capacity_bounds",
    "maximal_cliques",
    "find_odd_hole",
]

ALPHA_VERTEX_CAP = 420
ALPHA_NODE_CAP = 5_000_000
CLIQUE_CAP = 100_000
PRODUCT_SIZE_CAP = 200_000


class WeightedGraph:
    """Undirected simple graph with nonnegative rational vertex weights.

    Vertices are string ids kept in sorted order; adjacency is symmetric and
    irreflexive.  Instances are immutable by convention and safe to share.
    """

    __slots__ = ("vertices", "weights", "_index", "_adj")

    def __init__(self, vertices, edges=(), weights=None):
        self.vertices = tuple(sorted(set(map(str, vertices))))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        adj = [0] * n
        for e in edges:
            u, v = e
            iu, iv = self._index[str(u)], self._index[str(v)]
            if iu == iv:
                raise ValueError(f"self-loop at {u!r}")
            adj[iu] |= 1 << iv
            adj[iv] |= 1 << iu
        self._adj = tuple(adj)
        if weights is None:
            self.weights = {v: Fraction(1) for v in self.vertices}
        else:
            self.weights = {}
            for v in self.vertices:
                w = parse_rational(weights[v])
                if w < 0:
                    raise ValueError(f"negative weight at {v!r}")
                self.weights[v] = w

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def index(self, v) -> int:
        return self._index[v]

    def adjacency_mask(self, v) -> int:
        return self._adj[self._index[v]]

    def adjacent(self, u, v) -> bool:
        return bool(self._adj[self._index[u]] >> self._index[v] & 1)

    def edge_list(self):
        out = []
        for i, u in enumerate(self.vertices):
            m = self._adj[i] >> (i + 1) << (i + 1)
            while m:
                j = (m & -m).bit_length() - 1
                out.append((u, self.vertices[j]))
                m &= m - 1
        return out

    def degree(self, v) -> int:
        return bin(self._adj[self._index[v]]).count("1")

    def total_weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def with_weights(self, weights) -> "WeightedGraph":
        return WeightedGraph(self.vertices, self.edge_list(), weights)

    def complement(self) -> "WeightedGraph":
        edges = [
            (u, v)
            for i, u in enumerate(self.vertices)
            for v in self.vertices[i + 1 :]
            if not self.adjacent(u, v)
        ]
        return WeightedGraph(self.vertices, edges, self.weights)

    def subgraph(self, keep) -> "WeightedGraph":
        keep = set(keep)
        edges = [(u, v) for u, v in self.edge_list() if u in keep and v in keep]
        return WeightedGraph(keep, edges, {v: self.weights[v] for v in keep})

    def __eq__(self, other):
        return (
            isinstance(other, WeightedGraph)
            and self.vertices == other.vertices
            and self._adj == other._adj
            and self.weights == other.weights
        )

    def __repr__(self):
        ne = sum(bin(a).count("1") for a in self._adj) // 2
        return f"WeightedGraph({len(self.vertices)} vertices, {ne} edges)"

    # -- serialization -----------------------------------------------------

    def to_jsonable(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v] for u, v in self.edge_list()],
            "weights": {v: format_rational(w) for v, w in self.weights.items()},
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "WeightedGraph":
        return cls(data["vertices"], data.get("edges", ()), data.get("weights"))


def _pair_id(u, v) -> str:
    return f"{u}⊗{v}"


def strong_product(g: WeightedGraph, h: WeightedGraph) -> WeightedGraph:
    """Strong graph product with tensored weights.

    ``(u1,u2) ~ (v1,v2)`` iff each coordinate is adjacent-or-equal and the
    pair differs somewhere.
    """
    if len(g) * len(h) > PRODUCT_SIZE_CAP:
        raise SizeCap(f"strong product would have {len(g) * len(h)} vertices")
    verts = [_pair_id(u, v) for u in g.vertices for v in h.vertices]
    weights = {
        _pair_id(u, v): g.weights[u] * h.weights[v]
        for u in g.vertices
        for v in h.vertices
    }
    edges = []
    for u1 in g.vertices:
        for v1 in g.vertices:
            g_ok = u1 == v1 or g.adjacent(u1, v1)
            if not g_ok:
                continue
            for u2 in h.vertices:
                for v2 in h.vertices:
                    if (u1, u2) >= (v1, v2):
                        continue
                    if u1 == v1 and u2 == v2:
                        continue
                    if u2 == v2 or h.adjacent(u2, v2):
                        edges.append((_pair_id(u1, u2), _pair_id(v1, v2)))
    return WeightedGraph(verts, edges, weights)


def strong_power(g: WeightedGraph, n: int) -> WeightedGraph:
    out = g
    for _ in range(n - 1):
        out = strong_product(out, g)
    return out


def disjoint_union(g: WeightedGraph, h: WeightedGraph) -> WeightedGraph:
    """Tagged disjoint union: no edges between the two parts."""
    verts = [f"0@{u}" for u in g.vertices] + [f"1@{v}" for v in h.vertices]
    edges = [(f"0@{u}", f"0@{v}") for u, v in g.edge_list()] + [
        (f"1@{u}", f"1@{v}") for u, v in h.edge_list()
    ]
    weights = {f"0@{u}": g.weights[u] for u in g.vertices}
    weights.update({f"1@{v}": h.weights[v] for v in h.vertices})
    return WeightedGraph(verts, edges, weights)


def blow_up(g: WeightedGraph) -> WeightedGraph:
    """Replace each vertex by weight-many pairwise non-adjacent unit copies.

    Requires natural-number weights; zero-weight vertices disappear.
    """
    for v, w in g.weights.items():
        if w.denominator != 1:
            raise NonIntegerWeight(f"weight of {v!r} is {w}, not a natural number")
    verts = []
    for v in g.vertices:
        verts.extend(f"{v}#{k}" for k in range(1, int(g.weights[v]) + 1))
    edges = []
    for u, v in g.edge_list():
        for k in range(1, int(g.weights[u]) + 1):
            for l in range(1, int(g.weights[v]) + 1):
                edges.append((f"{u}#{k}", f"{v}#{l}"))
    return WeightedGraph(verts, edges)


# ---------------------------------------------------------------------------
# alpha: exact maximum-weight independent set
# ---------------------------------------------------------------------------


def alpha(g: WeightedGraph, node_cap: int = ALPHA_NODE_CAP):
    """Exact weighted independence number with a witness independent set.

    Branch and bound over bitsets: vertices are explored in descending
    weight/degree order, the upper bound at each node is a greedy clique
    cover.  Zero-weight vertices never help and are dropped up front.

    Returns ``(value, witness)`` with ``value`` an exact Fraction.
    """
    support = [v for v in g.vertices if g.weights[v] > 0]
    if not support:
        return Fraction(0), ()
    if len(support) > ALPHA_VERTEX_CAP:
        raise BudgetExceeded(f"alpha on {len(support)} vertices exceeds cap")
    sub = g.subgraph(support) if len(support) < len(g) else g

    denom = lcm(*[sub.weights[v].denominator for v in sub.vertices])
    w = [int(sub.weights[v] * denom) for v in sub.vertices]
    n = len(sub.vertices)
    adj = list(sub._adj)

    def ratio_key(i):
        deg = bin(adj[i]).count("1")
        return (0, Fraction(0), i) if deg == 0 else (1, -Fraction(w[i], deg), i)

    order = sorted(range(n), key=ratio_key)
    rank = {v: r for r, v in enumerate(order)}

    best_w = 0
    best_set = 0
    nodes = 0

    def bound(mask):
        # greedy clique cover in static order: each clique contributes its max
        clique_masks = []
        clique_max = []
        for i in order:
            if not (mask >> i) & 1:
                continue
            for k, cm in enumerate(clique_masks):
                if cm & ~adj[i] == 0:  # adjacent to every member
                    clique_masks[k] = cm | (1 << i)
                    if w[i] > clique_max[k]:
                        clique_max[k] = w[i]
                    break
            else:
                clique_masks.append(1 << i)
                clique_max.append(w[i])
        return sum(clique_max)

    def dfs(mask, cur, cur_set):
        nonlocal best_w, best_set, nodes
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded("alpha branch-and-bound node budget exhausted")
        if cur > best_w:
            best_w, best_set = cur, cur_set
        if mask == 0:
            return
        if cur + bound(mask) <= best_w:
            return
        i = min(_bits(mask), key=lambda j: rank[j])
        # include i
        dfs(mask & ~(adj[i] | (1 << i)), cur + w[i], cur_set | (1 << i))
        # exclude i
        dfs(mask & ~(1 << i), cur, cur_set)

    dfs((1 << n) - 1, 0, 0)
    witness = tuple(sub.vertices[i] for i in _bits(best_set))
    return Fraction(best_w, denom), witness


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# alpha*: fractional packing via maximal cliques + exact LP
# ---------------------------------------------------------------------------


def maximal_cliques(g: WeightedGraph, cap: int = CLIQUE_CAP):
    """All maximal cliques (Bron-Kerbosch with pivoting), as vertex tuples."""
    n = len(g.vertices)
    adj = list(g._adj)
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(tuple(g.vertices[i] for i in _bits(r)))
            if len(out) > cap:
                raise BudgetExceeded("maximal clique budget exhausted")
            return
        pivot_pool = p | x
        pivot = max(_bits(pivot_pool), key=lambda i: bin(p & adj[i]).count("1"))
        cand = p & ~adj[pivot]
        for i in _bits(cand):
            expand(r | (1 << i), p & adj[i], x & adj[i])
            p &= ~(1 << i)
            x |= 1 << i

    expand(0, (1 << n) - 1, 0)
    return out


def alpha_star(g: WeightedGraph) -> Fraction:
    """Exact weighted fractional packing number.

    Maximizes ``sum p(v) q(v)`` over vertex weightings ``q >= 0`` that put
    total at most 1 on every clique; maximal cliques suffice as constraints.
    """
    if not g.vertices:
        return Fraction(0)
    cliques = maximal_cliques(g)
    idx = {v: i for i, v in enumerate(g.vertices)}
    lp = LinearProgram(
        num_vars=len(g.vertices),
        objective=[g.weights[v] for v in g.vertices],
    )
    for c in cliques:
        lp.add_row({idx[v]: Fraction(1) for v in c}, LE, Fraction(1))
    report = lp_solve(lp)
    return report.value


# ---------------------------------------------------------------------------
# theta: Lovász number by SDP
# ---------------------------------------------------------------------------


def theta_problem(g: WeightedGraph) -> SdpProblem:
    """The adjacency-support SDP whose optimum is the weighted Lovász number.

    maximize sum_{uv} sqrt(p_u p_v) X_uv  s.t.  tr X = 1, X_uv = 0 on edges,
    X psd.  Zero-weight vertices are dropped (they never contribute).
    """
    support = [v for v in g.vertices if g.weights[v] > 0]
    sub = g.subgraph(support)
    n = len(sub.vertices)
    root = [float(sub.weights[v]) ** 0.5 for v in sub.vertices]
    cons = [({(i, i): 1.0 for i in range(n)}, 1.0)]
    for u, v in sub.edge_list():
        i, j = sorted((sub.index(u), sub.index(v)))
        cons.append(({(i, j): 1.0}, 0.0))
    obj = {
        (i, j): root[i] * root[j] for i in range(n) for j in range(i, n)
    }
    return SdpProblem(dim=n, constraints=cons, objective=obj, trace_constraint=0)


def lovasz_theta(g: WeightedGraph, tol: float = 1e-7, max_iter: int = 20000) -> SolveReport:
    """Weighted Lovász number within ``tol``-certified residuals."""
    if all(g.weights[v] == 0 for v in g.vertices) or not g.vertices:
        return SolveReport(status="optimal", value=0.0, witness=None, residuals={
            "primal_eq": 0.0, "psd_min_eigenvalue": 0.0, "duality_gap": 0.0})
    return sdp_solve(theta_problem(g), tol=tol, max_iter=max_iter)


# ---------------------------------------------------------------------------
# Shannon capacity bounds
# ---------------------------------------------------------------------------


def capacity_bounds(g: WeightedGraph, max_power: int = 2, tol: float = 1e-5) -> dict:
    """Bracket the weighted Shannon capacity by strong powers and theta.

    lower: the best root ``alpha(g^n)^(1/n)`` found for ``n <= max_power``
    (reported as the pair ``(n, alpha)``); upper: the Lovász number.
    ``single_shot`` is ``confirmed`` when alpha and theta agree within the
    tolerance band, ``refuted`` when some power beats ``alpha(g)^n`` exactly,
    else ``unknown``.
    """
    a1, witness = alpha(g)
    best_n, best_alpha = 1, a1
    refuted = False
    power = g
    for n in range(2, max_power + 1):
        power = strong_product(power, g)
        an, _ = alpha(power)
        if an > a1**n:
            refuted = True
        # a_n^(1/n) > best^(1/best_n)  <=>  a_n^best_n > best^n
        if an**best_n > best_alpha**n:
            best_n, best_alpha = n, an
    theta_report = lovasz_theta(g)
    upper = theta_report.value
    if refuted:
        verdict = "refuted"
    elif abs(upper - float(a1)) <= tol:
        verdict = "confirmed"
    else:
        verdict = "unknown"
    return {
        "lower_pair": (best_n, best_alpha),
        "lower": float(best_alpha) ** (1.0 / best_n),
        "upper": upper,
        "single_shot": verdict,
        "alpha": a1,
        "alpha_witness": witness,
    }


# ---------------------------------------------------------------------------
# induced odd holes (perfection checks)
# ---------------------------------------------------------------------------


def find_odd_hole(g: WeightedGraph, max_len: int | None = None, node_cap: int = 2_000_000):
    """Search for an induced odd cycle of length >= 5; None when none exists.

    Exhaustive up to ``max_len`` (default: all vertices), so with the default
    length a ``None`` answer is a proof of odd-hole-freeness of this graph.
    Cycles are anchored at their minimal vertex, which kills rotations.
    """
    n = len(g.vertices)
    if max_len is None:
        max_len = n
    if n < 5 or max_len < 5:
        return None
    adj = list(g._adj)
    nodes = 0

    # invariant: ``allowed`` excludes the path, everything below the anchor,
    # and every neighbor of an interior path vertex; the path is induced.
    def search(path, allowed):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded("odd-hole search budget exhausted")
        last = path[-1]
        first = path[0]
        k = len(path)
        for j in _bits(allowed & adj[last]):
            if k >= 2 and (adj[j] >> first) & 1:
                # adjacency back to the anchor either closes the hole or chords it
                if k + 1 >= 5 and (k + 1) % 2 == 1:
                    return path + [j]
                continue
            if k + 2 <= max_len:
                interior_block = adj[last] if k >= 2 else 0
                found = search(path + [j], allowed & ~(1 << j) & ~interior_block)
                if found:
                    return found
        return None

    full = (1 << n) - 1
    for anchor in range(n):
        above = full >> (anchor + 1) << (anchor + 1)
        found = search([anchor], above)
        if found:
            return tuple(g.vertices[i] for i in found)
    return None
