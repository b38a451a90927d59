"""Equal-probability equivalences between outcome sets, by bounded saturation.

Two vertex sets are equivalent when the generation rules force them to carry
equal total probability under every model: all edges are equivalent;
disjoint unions of equivalent parts are equivalent; and a common part can be
cancelled from both sides.  A set equivalent to an edge is a virtual edge
(it sums to 1 in every model).

Full saturation is undecidable in general, so this engine is deliberately
bounded and one-sided: everything it reports is derivable (sound), while a
miss only means the budget ran out.  Three engine rules drive it:

* difference: same-class sets A, B yield ``A - B  ~  B - A``;
* augmentation: a same-class pair grows by one outside vertex on both sides;
* profiles: sets whose element multisets match under the singleton-class
  map are merged outright (a chained disjoint union of singleton pairs).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, VertexSetMismatch
from .scenario import Scenario

__all__ = ["EquivClassTable", "saturate_equivalences", "completion_check"]

TABLE_CAP = 100_000
DEFAULT_DEPTH = 6
DEFAULT_MAX_SUBSET = 8


class _UnionFind:
    def __init__(self):
        self.parent = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class EquivClassTable:
    """Saturation result: the generated subset family partitioned by class."""

    scenario: Scenario
    depth: int
    max_subset_size: int
    classes: list  # list of lists of sorted vertex tuples
    virtual_edges: list  # explicit family members equivalent to an edge
    vertex_classes: dict  # vertex -> canonical representative vertex
    _edge_profiles: frozenset
    _profile_of_class: dict

    def profile(self, subset) -> tuple:
        return tuple(sorted(self.vertex_classes[v] for v in set(subset)))

    def is_virtual_edge(self, subset) -> bool:
        """Sound check: is this set provably forced to total probability 1?"""
        return self.profile(subset) in self._edge_profiles

    def equivalent(self, a, b) -> bool:
        """Sound check for derived equivalence of two vertex sets."""
        pa, pb = self.profile(a), self.profile(b)
        if pa == pb:
            return True
        ca = self._profile_of_class.get(pa)
        cb = self._profile_of_class.get(pb)
        return ca is not None and ca == cb


def saturate_equivalences(
    s: Scenario,
    depth: int = DEFAULT_DEPTH,
    max_subset_size: int = DEFAULT_MAX_SUBSET,
    table_cap: int = TABLE_CAP,
) -> EquivClassTable:
    """Run the bounded saturation and return the class table.

    ``depth`` bounds the rule rounds and ``max_subset_size`` the size of
    newly generated sets (seed edges are exempt).  Raises
    ``BudgetExceeded`` when the family outgrows ``table_cap``.
    """
    uf = _UnionFind()
    vuf = _UnionFind()
    vid = {v: vuf.make() for v in s.vertices}

    family: dict = {}  # frozenset -> uf id

    def intern(fs: frozenset) -> int:
        if fs in family:
            return family[fs]
        if len(family) >= table_cap:
            raise BudgetExceeded("equivalence table grew past its cap")
        family[fs] = uf.make()
        return family[fs]

    def vkey(fs: frozenset) -> tuple:
        return tuple(sorted(vuf.find(vid[v]) for v in fs))

    # seed: all singletons, all edges merged into one class
    for v in s.vertices:
        intern(frozenset([v]))
    edge_sets = [frozenset(e) for e in s.edges]
    first = intern(edge_sets[0])
    for e in edge_sets[1:]:
        uf.union(first, intern(e))

    def merge(a: frozenset, b: frozenset) -> bool:
        changed = uf.union(intern(a), intern(b))
        if len(a) == 1 and len(b) == 1:
            changed |= vuf.union(vid[next(iter(a))], vid[next(iter(b))])
        return changed

    for _round in range(depth):
        changed = False

        # profile sweep: equal multisets of singleton classes merge
        by_profile: dict = {}
        for fs in sorted(family, key=sorted):
            key = vkey(fs)
            if key in by_profile:
                changed |= merge(by_profile[key], fs)
            else:
                by_profile[key] = fs

        # group the family by class
        classes: dict = {}
        for fs, i in family.items():
            classes.setdefault(uf.find(i), []).append(fs)

        # singletons that met in one class transitively are one vertex class
        for members in classes.values():
            singles = [fs for fs in members if len(fs) == 1]
            for a, b in zip(singles, singles[1:]):
                changed |= vuf.union(vid[next(iter(a))], vid[next(iter(b))])

        for members in classes.values():
            members.sort(key=sorted)
            npairs = len(members)
            for i in range(npairs):
                a = members[i]
                for j in range(i + 1, npairs):
                    b = members[j]
                    # difference rule
                    da, db = a - b, b - a
                    if da and db and (da != a or db != b):
                        changed |= merge(da, db)
                    # augmentation rule, only for profile-distinct pairs
                    if len(a) < max_subset_size and len(b) < max_subset_size:
                        if vkey(a) != vkey(b):
                            blocked = a | b
                            for x in s.vertices:
                                if x not in blocked:
                                    changed |= merge(a | {x}, b | {x})
        if not changed:
            break

    # final profile sweep so queries see the fixpoint
    by_profile = {}
    for fs in sorted(family, key=sorted):
        key = vkey(fs)
        if key in by_profile:
            merge(by_profile[key], fs)
        else:
            by_profile[key] = fs

    root_edge = uf.find(family[edge_sets[0]])
    classes: dict = {}
    for fs, i in family.items():
        classes.setdefault(uf.find(i), []).append(fs)
    class_list = []
    virtual_edges = []
    profile_of_class = {}
    edge_profiles = set()
    vertex_classes = {}
    reps = {}
    for v in s.vertices:
        r = vuf.find(vid[v])
        reps.setdefault(r, v)
        vertex_classes[v] = reps[r]

    def profile(fs):
        return tuple(sorted(vertex_classes[v] for v in fs))

    for root, members in sorted(classes.items()):
        members_sorted = sorted(tuple(sorted(m)) for m in members)
        class_list.append(members_sorted)
        for m in members:
            profile_of_class.setdefault(profile(m), root)
        if root == root_edge:
            virtual_edges = members_sorted
            for m in members:
                edge_profiles.add(profile(m))

    return EquivClassTable(
        scenario=s,
        depth=depth,
        max_subset_size=max_subset_size,
        classes=class_list,
        virtual_edges=virtual_edges,
        vertex_classes=vertex_classes,
        _edge_profiles=frozenset(edge_profiles),
        _profile_of_class=profile_of_class,
    )


def completion_check(
    s_small: Scenario,
    s_big: Scenario,
    depth: int = DEFAULT_DEPTH,
    max_subset_size: int = DEFAULT_MAX_SUBSET,
):
    """Are two scenarios on the same vertices observationally equivalent?

    ``equivalent`` when every edge of each is a virtual edge of the other
    within the budget; ``unknown`` otherwise.  Saturation being one-sided,
    the answer is never "not equivalent".
    """
    if s_small.vertices != s_big.vertices:
        raise VertexSetMismatch(
            f"{s_small.name} and {s_big.name} have different vertex sets"
        )
    table_small = saturate_equivalences(s_small, depth, max_subset_size)
    if not all(table_small.is_virtual_edge(e) for e in s_big.edges):
        return "unknown"
    table_big = saturate_equivalences(s_big, depth, max_subset_size)
    if not all(table_big.is_virtual_edge(e) for e in s_small.edges):
        return "unknown"
    return "equivalent"
