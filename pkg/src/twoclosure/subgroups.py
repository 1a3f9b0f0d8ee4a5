"""Exhaustive subgroup enumeration for groups of modest order.

Subgroups are handled as frozensets of image tuples, which keeps joins,
intersections, and conjugation cheap at desk scale.  The enumeration
grows subgroups one adjoined element at a time, which reaches every
subgroup because any K arises as ⟨M, x⟩ for a maximal subgroup M of K.
"""

from __future__ import annotations

from .errors import BudgetExceededError, GroupError
from .group import PermGroup
from .perm import Permutation

ORDER_BOUND = 2000


def _mul(p, q):
    return tuple(q[v] for v in p)


def _inv(p):
    out = [0] * len(p)
    for a, v in enumerate(p):
        out[v] = a
    return tuple(out)


def generated_set(gens, degree, seed=()):
    """All elements of the subgroup generated by the given image tuples.

    seed may hold known elements of the target group (for instance the
    subgroup being extended); they are taken as already reached, which
    skips re-deriving them.
    """
    identity = tuple(range(degree))
    elems = {identity}
    elems.update(seed)
    frontier = list(elems)
    gens = [tuple(g) for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return frozenset(elems)


def small_generating_set(elems, degree):
    """A short generator list for the subgroup given by its element set."""
    identity = tuple(range(degree))
    if len(elems) == 1:
        return []
    gens = []
    span = {identity}
    for x in sorted(elems, key=lambda t: (-_tuple_order(t), t)):
        if x in span:
            continue
        gens.append(x)
        span = generated_set(gens, degree)
        if len(span) == len(elems):
            break
    return gens


def _tuple_order(p):
    k = 1
    q = p
    identity = tuple(range(len(p)))
    while q != identity:
        q = _mul(q, p)
        k += 1
    return k


def all_subgroup_sets(G, order_bound=ORDER_BOUND):
    """Every subgroup of G as a frozenset of image tuples."""
    order = G.order()
    if order > order_bound:
        raise BudgetExceededError(
            f"order {order} exceeds subgroup enumeration bound {order_bound}")
    n = G.degree
    elements = sorted(x.images for x in G.elements(budget=order_bound + 1))
    identity = tuple(range(n))
    gen_pairs = [(g.images, g.inverse().images) for g in G.generators]
    start = frozenset([identity])
    found = {start}
    # The frontier keeps one representative per conjugacy class: an
    # extension of a conjugate is the matching conjugate of an
    # extension, so growing only representatives still reaches every
    # class, and each new set is closed under conjugation on arrival.
    reps = [start]
    while reps:
        new_reps = []
        for sub in reps:
            base_gens = small_generating_set(sub, n)
            for x in elements:
                if x in sub:
                    continue
                grown = generated_set(base_gens + [x], n, seed=sub)
                if grown in found:
                    continue
                found.add(grown)
                new_reps.append(grown)
                orbit = [grown]
                while orbit:
                    next_orbit = []
                    for s in orbit:
                        for g, gi in gen_pairs:
                            t = _conjugate_set(s, g, gi)
                            if t not in found:
                                found.add(t)
                                next_orbit.append(t)
                    orbit = next_orbit
        reps = new_reps
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _conjugate_set(sub, g, g_inv):
    return frozenset(_mul(_mul(g_inv, x), g) for x in sub)


class SubgroupClassTable:
    """Conjugacy classes of subgroups with depth and inclusion data."""

    def __init__(self, group, representatives, class_sizes, depths, cores,
                 edges, subgroup_sets, class_of_set, complete):
        self.group = group
        self.representatives = representatives
        self.class_sizes = class_sizes
        self.depths = depths
        self.cores = cores
        self.edges = edges
        self.subgroup_sets = subgroup_sets
        self.class_of_set = class_of_set
        self.complete = complete
        self.orders = [rep.order() for rep in representatives]

    def __len__(self):
        return len(self.representatives)

    def __repr__(self):
        flag = "" if self.complete else ", partial"
        return (f"SubgroupClassTable({len(self.representatives)} classes"
                f"{flag})")

    @property
    def full_class(self):
        return max(range(len(self.orders)), key=lambda i: self.orders[i])

    @property
    def trivial_class(self):
        return min(range(len(self.orders)), key=lambda i: self.orders[i])

    def proper_classes(self):
        full = self.full_class
        return [i for i in range(len(self.orders)) if i != full]

    def is_normal(self, i):
        return self.class_sizes[i] == 1

    def core_free(self, i):
        return self.cores[i].order() == 1


def _to_group(elems, degree, seed=0):
    gens = [Permutation(g) for g in small_generating_set(elems, degree)]
    return PermGroup(degree, gens, seed=seed)


def subgroup_classes(G, order_bound=ORDER_BOUND):
    """The table of all subgroup conjugacy classes of G.

    Groups larger than the bound get a two-class partial table (trivial
    subgroup and G itself) flagged incomplete.
    """
    n = G.degree
    if G.order() > order_bound:
        identity = frozenset([tuple(range(n))])
        trivial = _to_group(identity, n, G.seed)
        return SubgroupClassTable(
            G, [trivial, G], [1, 1], [None, 0], [trivial, G],
            [], [identity], {identity: 0}, complete=False)
    subs = all_subgroup_sets(G, order_bound)
    index_of = {sub: i for i, sub in enumerate(subs)}
    gen_pairs = [(g.images, g.inverse().images) for g in G.generators]

    # conjugacy classes of subgroups under generator conjugation
    class_of = [None] * len(subs)
    class_members = []
    for i, sub in enumerate(subs):
        if class_of[i] is not None:
            continue
        cls = len(class_members)
        members = [i]
        class_of[i] = cls
        frontier = [sub]
        while frontier:
            new = []
            for s in frontier:
                for g, gi in gen_pairs:
                    t = _conjugate_set(s, g, gi)
                    j = index_of[t]
                    if class_of[j] is None:
                        class_of[j] = cls
                        members.append(j)
                        new.append(t)
            frontier = new
        class_members.append(sorted(members))

    # covering relation on subgroups, computed within each overgroup
    below = [[] for _ in subs]
    for j, big in enumerate(subs):
        for i, small in enumerate(subs):
            if len(small) < len(big) and len(big) % len(small) == 0 \
                    and small <= big:
                below[j].append(i)
    covers = set()
    for j, inside in enumerate(below):
        inside_sets = set(inside)
        for i in inside:
            maximal = True
            for m in inside:
                if m != i and len(subs[i]) < len(subs[m]) \
                        and subs[i] <= subs[m]:
                    maximal = False
                    break
            if maximal:
                covers.add((i, j))

    # depth: shortest maximal chain down from G
    children = {}
    for (i, j) in covers:
        children.setdefault(j, []).append(i)
    top = len(subs) - 1
    depth = [None] * len(subs)
    depth[top] = 0
    frontier = [top]
    while frontier:
        new = []
        for j in frontier:
            for i in children.get(j, ()):
                if depth[i] is None:
                    depth[i] = depth[j] + 1
                    new.append(i)
        frontier = new

    normals = [subs[cm[0]] for cm in class_members if len(cm) == 1]
    reps = []
    sizes = []
    depths = []
    cores = []
    for cls, members in enumerate(class_members):
        rep_set = subs[members[0]]
        reps.append(_to_group(rep_set, n, G.seed))
        sizes.append(len(members))
        depths.append(depth[members[0]])
        cores.append(_to_group(_largest_normal_inside(normals, rep_set),
                               n, G.seed))
    edges = {(class_of[i], class_of[j]) for (i, j) in covers}
    class_of_set = {subs[i]: class_of[i] for i in range(len(subs))}
    return SubgroupClassTable(G, reps, sizes, depths, cores, sorted(edges),
                              subs, class_of_set, complete=True)


def _largest_normal_inside(normals, sub):
    best = None
    for nset in normals:
        if nset <= sub and (best is None or len(nset) > len(best)):
            best = nset
    return best


def is_normal_in(inner, outer, degree):
    """Whether the subgroup set inner is normalized by the set outer."""
    gens = small_generating_set(outer, degree)
    for g in gens:
        gi = _inv(g)
        for x in inner:
            if _mul(_mul(gi, x), g) not in inner:
                return False
    return True


def maximal_normal_subgroup_sets(sub, candidates, degree):
    """Maximal proper normal subgroups of sub among the given sets."""
    normals = [c for c in candidates
               if len(c) < len(sub) and c <= sub
               and len(sub) % len(c) == 0 and is_normal_in(c, sub, degree)]
    out = []
    for c in normals:
        if not any(c < d for d in normals):
            out.append(c)
    return out


def has_section(big, small_order, subs_of_big, degree):
    """Whether big has a simple section of the given order.

    A maximal normal subgroup N of any K ≤ big gives a simple quotient
    K/N; at orders within the enumeration bound an order match pins the
    isomorphism type of a nonabelian simple target.
    """
    for K in subs_of_big:
        if len(K) % small_order != 0:
            continue
        for N in maximal_normal_subgroup_sets(K, subs_of_big, degree):
            if len(K) // len(N) == small_order:
                return True
    return False
