"""Exact 2-closures by partition backtrack on the orbital coloring.

The closure of G is the group of all permutations preserving every cell
of G's orbital partition.  The search walks candidate base images much
like a stabilizer-chain backtrack, except candidates come from color
signatures instead of an ambient chain; the known subgroup (seeded with G
itself) prunes along the principal branch, and every accepted leaf is
verified against the full coloring, so a completed walk is a proof.
"""

from __future__ import annotations

import itertools

from .backtrack import orbit_minima
from .errors import BudgetExceededError, DegreeMismatchError, GroupError
from .group import PermGroup
from .orbital import OrbitalPartition
from .perm import Permutation


class ClosureResult:
    """A 2-closure computation outcome.

    method is one of "backtrack" (partition search ran), "oracle"
    (brute-force filter), or "certified-equal" (the answer follows from a
    closure identity with no search: regular actions are their own
    closure, 2-transitive groups close to the full symmetric group, and
    an intransitive group whose per-orbit closure product passes the
    membership test generator-wise closes to that product).  certified is
    False only when a node budget stopped the search, in which case
    closure is a lower bound containing the input.
    """

    def __init__(self, input_group, closure, method, certified=True,
                 nodes=0):
        self.input = input_group
        self.closure = closure
        self.method = method
        self.certified = certified
        self.nodes = nodes

    @property
    def index(self):
        return self.closure.order() // self.input.order()

    def __repr__(self):
        tag = "certified" if self.certified else "partial"
        return (f"ClosureResult(order={self.closure.order()}, "
                f"index={self.index}, method={self.method!r}, {tag})")


def _symmetric(n, seed=0):
    if n <= 1:
        return PermGroup(n, [], seed=seed)
    gens = [Permutation.from_cycles(n, [tuple(range(n))]),
            Permutation.from_cycles(n, [(0, 1)])]
    return PermGroup(n, gens, seed=seed)


def closure_membership(G, x, partition=None):
    """Whether x preserves every G-orbit on ordered pairs.

    By the orbit criterion this decides membership in the 2-closure
    without computing it.
    """
    if x.degree != G.degree:
        raise DegreeMismatchError(
            f"element degree {x.degree} != group degree {G.degree}")
    part = partition if partition is not None else OrbitalPartition(G)
    n = G.degree
    xi = x.images
    for a in range(n):
        row_a = part.row(a)
        row_xa = part.row(xi[a])
        for b in range(n):
            if row_xa[xi[b]] != row_a[b]:
                return False
    return True


def brute_force_two_closure(G):
    """The closure by literal filtration of Sym(n); degree 9 at most."""
    n = G.degree
    if n > 9:
        raise GroupError(f"degree {n} too large for the brute-force oracle")
    part = OrbitalPartition(G)
    rows = [part.row(a) for a in range(n)]
    found = []
    group = PermGroup(n, [], seed=G.seed)
    for img in itertools.permutations(range(n)):
        ok = True
        for a in range(n):
            row_a = rows[a]
            row_ia = rows[img[a]]
            for b in range(n):
                if row_ia[img[b]] != row_a[b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            p = Permutation(img)
            if not group.contains(p):
                found.append(p)
                group = PermGroup(n, found, seed=G.seed)
    return group


def _embed_on_orbit(h, orbit, degree):
    img = list(range(degree))
    for i, p in enumerate(orbit):
        img[p] = orbit[h.images[i]]
    return Permutation(img)


def _per_orbit_closure_product(G, node_budget=None):
    """The product of the per-orbit closures, as a group on G's domain."""
    gens = []
    for orbit in G.orbits():
        sub = G.restriction(orbit)
        res = two_closure(sub, node_budget=node_budget)
        if not res.certified:
            raise BudgetExceededError(
                "per-orbit closure not certified within budget")
        gens.extend(_embed_on_orbit(h, orbit, G.degree)
                    for h in res.closure.generators)
    return PermGroup(G.degree, gens, seed=G.seed)


def intransitive_closure_bound(G, gamma, delta):
    """The product of the closures of G on the two invariant halves.

    The closure of G on the whole domain is contained in this product, so
    it serves as an ambient certificate for intransitive searches.
    """
    gamma = sorted(gamma)
    delta = sorted(delta)
    _check_invariant_split(G, gamma, delta)
    gens = []
    for half in (gamma, delta):
        if not half:
            continue
        sub = G.restriction(half)
        res = two_closure(sub)
        gens.extend(_embed_on_orbit(h, half, G.degree)
                    for h in res.closure.generators)
    return PermGroup(G.degree, gens, seed=G.seed)


def _check_invariant_split(G, gamma, delta):
    gset = set(gamma)
    dset = set(delta)
    if gset & dset:
        raise GroupError("the two halves overlap")
    if len(gset) + len(dset) != G.degree:
        raise GroupError("the two halves do not cover the domain")
    for orbit in G.orbits():
        inside = orbit[0] in gset
        if inside and not all(p in gset for p in orbit):
            raise GroupError("first half is not G-invariant")
        if not inside and not all(p in dset for p in orbit):
            raise GroupError("second half is not G-invariant")


def dissection_condition(G, gamma, delta, partition=None):
    """Whether G = G_a G_b for every a in the first half, b in the second.

    Both halves must be unions of G-orbits covering the domain.  The
    condition is equivalent to the product of the two restricted groups
    lying inside the 2-closure of G, and it is constant on G-orbits of
    pairs, so one test per crossing orbital suffices.
    """
    gamma = sorted(gamma)
    delta = sorted(delta)
    _check_invariant_split(G, gamma, delta)
    if not gamma or not delta:
        return True
    gset = set(gamma)
    dset = set(delta)
    part = partition if partition is not None else OrbitalPartition(G)
    order = G.order()
    for color in range(part.rank):
        a, b = part.pair_reps[color]
        if a in gset and b in dset:
            stab_a = order // len(G.orbit(a))
            stab_b = order // len(G.orbit(b))
            stab_ab = G.tuple_stabilizer_order([a, b])
            if stab_a * stab_b != order * stab_ab:
                return False
    return True


def two_closure(G, node_budget=None, partition=None):
    """The exact 2-closure of G, with method and certification data."""
    n = G.degree
    if G.order() == 1:
        return ClosureResult(G, G, "certified-equal")
    part = partition if partition is not None else OrbitalPartition(G)
    transitive = G.is_transitive()
    if transitive:
        if part.rank == 2:
            return ClosureResult(G, _symmetric(n, seed=G.seed),
                                 "certified-equal")
        if G.order() == n:
            return ClosureResult(G, G, "certified-equal")
    seeds = list(G.generators)
    if not transitive:
        product = _per_orbit_closure_product(G, node_budget=node_budget)
        passing = [g for g in product.generators
                   if closure_membership(G, g, part)]
        if len(passing) == len(product.generators):
            return ClosureResult(G, product, "certified-equal")
        seeds.extend(passing)
    return _closure_search(G, part, seeds, node_budget)


def _closure_search(G, part, seeds, node_budget):
    n = G.degree
    diag = [part.diagonal_color(a) for a in range(n)]

    class_of = _canonical_ids(diag)
    base = []
    base_rows = []
    while True:
        counts = {}
        for a in range(n):
            counts[class_of[a]] = counts.get(class_of[a], 0) + 1
        big = None
        for cid, size in counts.items():
            if size > 1 and (big is None or size > counts[big]
                             or (size == counts[big] and cid < big)):
                big = cid
        if big is None:
            break
        b = min(a for a in range(n) if class_of[a] == big)
        base.append(b)
        row_b = part.row(b)
        base_rows.append(row_b)
        class_of = _canonical_ids(list(zip(class_of, row_b)))
    depth = len(base)

    key_of = [tuple([diag[a]] + [row[a] for row in base_rows])
              for a in range(n)]
    diag_class = {}
    for a in range(n):
        diag_class.setdefault(diag[a], []).append(a)

    state = {"gens": list(seeds), "K": PermGroup(n, seeds, seed=G.seed),
             "minima": {}}
    nodes = [0]

    def minima_at(level):
        got = state["minima"].get(level)
        if got is None:
            kchain = state["K"].chain_with_base(base)
            gens = kchain.level_generators(level)
            got = orbit_minima(gens, n)
            state["minima"][level] = got
        return got

    def try_leaf(chosen):
        chosen_rows = [part.row(d) for d in chosen]
        lookup = {}
        for c in range(n):
            key = tuple([diag[c]] + [row[c] for row in chosen_rows])
            if key in lookup:
                return
            lookup[key] = c
        img = [0] * n
        for a in range(n):
            c = lookup.get(key_of[a])
            if c is None:
                return
            img[a] = c
        g = Permutation(img)
        if state["K"].contains(g):
            return
        for a in range(n):
            row_a = part.row(a)
            row_ga = part.row(img[a])
            for b in range(n):
                if row_ga[img[b]] != row_a[b]:
                    return
        state["gens"].append(g)
        state["K"] = PermGroup(n, state["gens"], seed=G.seed)
        state["minima"] = {}

    def dfs(level, chosen, principal):
        nodes[0] += 1
        if node_budget is not None and nodes[0] > node_budget:
            raise BudgetExceededError(
                f"closure search budget {node_budget} exhausted")
        if level == depth:
            try_leaf(chosen)
            return
        b = base[level]
        cands = diag_class[diag[b]]
        for j in range(level):
            target = base_rows[j][b]
            row_d = part.row(chosen[j])
            cands = [c for c in cands if row_d[c] == target]
            if not cands:
                return
        for d in cands:
            if principal and d != b and minima_at(level)[d] != d:
                continue
            dfs(level + 1, chosen + [d], principal and d == b)

    certified = True
    try:
        dfs(0, [], True)
    except BudgetExceededError:
        certified = False
    return ClosureResult(G, state["K"], "backtrack", certified, nodes[0])


def _canonical_ids(values):
    ids = {}
    out = []
    for v in values:
        got = ids.get(v)
        if got is None:
            got = len(ids)
            ids[v] = got
        out.append(got)
    return out
