"""Block-system tools for 2-closure computations.

A transitive group G with a nontrivial invariant partition embeds in
the wreath product R wr L, where L is the induced action on the set of
blocks and R is the action of a block stabilizer M on its block Delta.
When M is core-free, so that G acts faithfully on the blocks, the part
of the 2-closure that fixes every block setwise is pinned down by local
conditions: a block-by-block tuple of permutations lies in the closure
exactly when every coordinate preserves the orbit structure of R on
Delta x Delta and every coordinate pair preserves the orbits of the
corresponding two-block stabilizer on the product of its two blocks.

This module builds that block kernel N, classifies its shape, and
exposes the cheaper certificates that can settle 2-closedness without
a full partition search: the block-pair test for blocks of size 2, the
gcd bound from two-block stabilizer orders, the covering test for
blocks of prime size, invariant lines of the permutation module over a
prime field, and strip decompositions of subdirect products of simple
groups.

The pairwise constraint filters are independent of one another, so they
could be evaluated in any order or concurrently; the fixed sequential
order used here is one deterministic schedule of that computation, and
every result is independent of the schedule.
"""

from dataclasses import dataclass, field
from itertools import product as iter_product
from math import gcd

from .actions import BlockSystem, induce_on_blocks
from .closure import closure_membership, two_closure
from .errors import (BudgetExceededError, GroupError, NotCoreFreeError,
                     NotTransitiveError)
from .group import PermGroup, is_prime
from .orbital import OrbitalPartition, higman_primitive
from .perm import Permutation
from .subgroups import all_subgroup_sets, generated_set, small_generating_set

KIND_TRIVIAL = "trivial"
KIND_FULL_DIAGONAL = "full-diagonal"
KIND_CONTAINS_BASE = "contains-base"
KIND_PRIME_SOCLE = "prime-socle"
KIND_UNCLASSIFIED = "unclassified"


class ReductionContext:
    """The data of a faithful imprimitive action, ready for block work.

    Fields: group (G, transitive on the points), system (the invariant
    partition), block_image (L, the faithful action on blocks),
    block_stabilizer (M, the setwise stabilizer of the first block),
    point_stabilizer (H, the stabilizer of the least point),
    within_block (R, the action of M on its block), block_closure
    (Y, the 2-closure of R, or the full symmetric group on the block
    as a certified overgroup when the closure search ran out of
    budget; block_closure_exact records which).

    Block coordinates are identified across blocks through a fixed
    transversal, one group element per block carrying the first block
    onto it, so that "the same permutation on two blocks" is
    meaningful.
    """

    def __init__(self, group, system, block_image, block_stabilizer,
                 point_stabilizer, within_block, block_closure,
                 block_closure_exact, transversals):
        self.group = group
        self.system = system
        self.block_image = block_image
        self.block_stabilizer = block_stabilizer
        self.point_stabilizer = point_stabilizer
        self.within_block = within_block
        self.block_closure = block_closure
        self.block_closure_exact = block_closure_exact
        self.transversals = tuple(transversals)
        self._transversal_inv = tuple(t.inverse() for t in self.transversals)
        delta = system.blocks[0]
        self._pt = []
        self._pos = []
        for t in self.transversals:
            points = [t.images[p] for p in delta]
            self._pt.append(points)
            self._pos.append({p: c for c, p in enumerate(points)})
        self._block_gen_images = [
            [system.block_of[g.images[block[0]]] for block in system.blocks]
            for g in group.generators]
        self._ext = None
        self._reps = None
        self._m_reach = None
        self._pair_stabs = {}
        self._pair_groups = {}
        self._transport_cache = {}

    def __repr__(self):
        return (f"ReductionContext({self.system.s} blocks of "
                f"{self.system.b}, group order {self.group.order()})")

    def rep_blocks(self):
        """One block index per M-orbit on the blocks other than the
        first."""
        if self._reps is None:
            stab = self.block_image.point_stabilizer(0)
            self._reps = sorted(orb[0] for orb in stab.orbits()
                                if 0 not in orb)
        return self._reps

    def _reach(self):
        if self._m_reach is None:
            images = []
            for m in self.block_stabilizer.generators:
                images.append([self.system.block_of[m.images[block[0]]]
                               for block in self.system.blocks])
            reach = {}
            for rep in self.rep_blocks():
                reach[rep] = (rep,
                              Permutation.identity(self.group.degree))
                frontier = [rep]
                while frontier:
                    new = []
                    for k in frontier:
                        _, elem = reach[k]
                        for m, img in zip(self.block_stabilizer.generators,
                                          images):
                            k2 = img[k]
                            if k2 not in reach:
                                reach[k2] = (rep, elem * m)
                                new.append(k2)
                    frontier = new
            self._m_reach = reach
        return self._m_reach

    def _extended(self):
        """The group acting on points plus blocks, for stabilizer work."""
        if self._ext is None:
            n = self.group.degree
            gens = []
            for g, img in zip(self.group.generators,
                              self._block_gen_images):
                gens.append(Permutation(tuple(g.images)
                                        + tuple(n + t for t in img)))
            self._ext = PermGroup(n + self.system.s, gens,
                                  seed=self.group.seed)
        return self._ext

    def pair_stabilizer(self, j):
        """The subgroup stabilizing both the first block and block j."""
        got = self._pair_stabs.get(j)
        if got is None:
            n = self.group.degree
            stab = self._extended().pointwise_stabilizer([n, n + j])
            gens = [Permutation(g.images[:n]) for g in stab.generators]
            got = PermGroup(n, gens, seed=self.group.seed)
            self._pair_stabs[j] = got
        return got

    def coordinate(self, x, i, k):
        """The permutation of block coordinates induced by an element
        carrying block i onto block k."""
        b = self.system.b
        pos_k = self._pos[k]
        pt_i = self._pt[i]
        img = [0] * b
        for c in range(b):
            cc = pos_k.get(x.images[pt_i[c]])
            if cc is None:
                raise GroupError(
                    f"element does not map block {i} onto block {k}")
            img[c] = cc
        return Permutation(img)

    def pair_group(self, j):
        """The two-block stabilizer acting on its two blocks, in
        identified coordinates: the first block on positions 0..b-1 and
        block j on positions b..2b-1."""
        got = self._pair_groups.get(j)
        if got is None:
            b = self.system.b
            gens = []
            for m in self.pair_stabilizer(j).generators:
                first = self.coordinate(m, 0, 0)
                second = self.coordinate(m, j, j)
                gens.append(Permutation(
                    tuple(first.images)
                    + tuple(b + t for t in second.images)))
            got = PermGroup(2 * b, gens, seed=self.group.seed)
            self._pair_groups[j] = got
        return got

    def transport(self, i, j):
        """Conjugation data carrying the constraint on blocks (i, j)
        back to the representative pair (0, rep): returns (rep, r1,
        r1_inv, r2, r2_inv) with the r's as image tuples on the block,
        so that a coordinate pair (y_i, y_j) satisfies the (i, j)
        constraint exactly when (r1^-1 y_i r1, r2^-1 y_j r2) satisfies
        the representative one."""
        key = (i, j)
        got = self._transport_cache.get(key)
        if got is None:
            if i == j:
                raise GroupError("transport needs two distinct blocks")
            ti_inv = self._transversal_inv[i]
            k = self.system.block_of[
                ti_inv.images[self.system.blocks[j][0]]]
            rep, m = self._reach()[k]
            r1 = self.coordinate(m, 0, 0)
            w = (self.transversals[rep] * m * self.transversals[i]
                 * self._transversal_inv[j])
            r2 = self.coordinate(w, 0, 0)
            got = (rep, tuple(r1.images), tuple(r1.inverse().images),
                   tuple(r2.images), tuple(r2.inverse().images))
            self._transport_cache[key] = got
        return got

    def block_fixing_element(self, coords):
        """The permutation acting as coords[k] inside block k, in the
        identified coordinates, and fixing every block setwise."""
        img = [0] * self.group.degree
        for k in range(self.system.s):
            yk = coords[k]
            pt = self._pt[k]
            for c in range(self.system.b):
                img[pt[c]] = pt[yk[c]]
        return Permutation(img)

    def full_swap(self):
        """For blocks of size 2: the permutation swapping the two
        points of every block."""
        if self.system.b != 2:
            raise GroupError("the full swap needs blocks of size 2")
        img = list(range(self.group.degree))
        for x, y in self.system.blocks:
            img[x], img[y] = y, x
        return Permutation(img)


def imprimitive_context(G, system, node_budget=None):
    """Build a ReductionContext for G over the given block system.

    The partition must be nontrivial and G-invariant, and the kernel of
    the action on blocks must be trivial (the block stabilizer is
    core-free); otherwise NotCoreFreeError is raised, because every
    certificate below leans on that faithfulness.
    """
    if not isinstance(system, BlockSystem):
        system = BlockSystem(system)
    if system.degree != G.degree:
        raise GroupError("block system degree does not match the group")
    if not G.is_transitive():
        raise NotTransitiveError("the reduction needs a transitive group")
    if system.is_trivial():
        raise GroupError("the partition must be nontrivial")
    induced = induce_on_blocks(G, system)
    if induced.kernel.order() > 1:
        raise NotCoreFreeError(
            "the action on blocks has kernel of order "
            f"{induced.kernel.order()}; the block stabilizer must be "
            "core-free")
    R = induced.within_block
    res = two_closure(R, node_budget=node_budget)
    if res.certified:
        Y = res.closure
        exact = True
    else:
        b = system.b
        gens = [Permutation.from_cycles(b, [tuple(range(b))]),
                Permutation.from_cycles(b, [(0, 1)])]
        Y = PermGroup(b, gens, seed=G.seed)
        exact = False
    block_maps = [[system.block_of[g.images[block[0]]]
                   for block in system.blocks] for g in G.generators]
    transversals = {0: Permutation.identity(G.degree)}
    frontier = [0]
    while frontier:
        new = []
        for k in frontier:
            elem = transversals[k]
            for g, img in zip(G.generators, block_maps):
                k2 = img[k]
                if k2 not in transversals:
                    transversals[k2] = elem * g
                    new.append(k2)
        frontier = new
    return ReductionContext(
        group=G, system=system, block_image=induced.block_image,
        block_stabilizer=induced.block_stabilizer,
        point_stabilizer=G.point_stabilizer(system.blocks[0][0]),
        within_block=R, block_closure=Y, block_closure_exact=exact,
        transversals=[transversals[k] for k in range(system.s)])


def _conj(y, r, r_inv):
    """Images of r^-1 * y * r, all three given as image tuples."""
    return tuple(r[y[r_inv[a]]] for a in range(len(y)))


def _filter_pairs(K, Y):
    """All pairs (u, v) of Y-elements, as image tuples, whose product
    action fixes every K-orbit on block-pair products setwise."""
    b = Y.degree
    color = [[-1] * b for _ in range(b)]
    gens = []
    for g in K.generators:
        first = g.images[:b]
        second = [t - b for t in g.images[b:]]
        gens.append((first, second))
    next_color = 0
    for a0 in range(b):
        for c0 in range(b):
            if color[a0][c0] >= 0:
                continue
            color[a0][c0] = next_color
            frontier = [(a0, c0)]
            while frontier:
                new = []
                for a, c in frontier:
                    for first, second in gens:
                        a2, c2 = first[a], second[c]
                        if color[a2][c2] < 0:
                            color[a2][c2] = next_color
                            new.append((a2, c2))
                frontier = new
            next_color += 1
    elems = sorted(tuple(p.images) for p in Y.elements())
    cols = [tuple(color[a][c] for a in range(b)) for c in range(b)]
    out = set()
    for u in elems:
        by_print = {}
        for cp in range(b):
            fp = tuple(color[u[a]][cp] for a in range(b))
            by_print.setdefault(fp, set()).add(cp)
        allowed = []
        for c in range(b):
            targets = by_print.get(cols[c])
            if not targets:
                allowed = None
                break
            allowed.append(targets)
        if allowed is None:
            continue
        for v in elems:
            if all(v[c] in allowed[c] for c in range(b)):
                out.add((u, v))
    return out


def product_one_closure_filter(K, Y):
    """The subgroup of Y x Y fixing setwise every K-orbit on the
    product of the two blocks.

    K acts on the disjoint union of the two blocks (positions 0..b-1
    and b..2b-1) and must preserve both halves; Y acts transitively on
    one block.  The result acts on the same 2b points, the first
    component on the first half and the second on the second.
    """
    b = Y.degree
    if K.degree != 2 * b:
        raise GroupError("the pair group must act on two blocks")
    for g in K.generators:
        if any(g.images[a] >= b for a in range(b)):
            raise GroupError("the pair group must preserve both blocks")
    if not Y.is_transitive():
        raise NotTransitiveError("the block group must be transitive")
    pairs = _filter_pairs(K, Y)
    gens = [Permutation(u + tuple(b + t for t in v))
            for u, v in sorted(pairs)]
    return PermGroup(2 * b, gens, seed=Y.seed)


@dataclass
class BlockKernel:
    """The block-fixing part N of the 2-closure, with its shape.

    kind is one of "trivial", "full-diagonal" (N projects bijectively
    onto the same group A on every block), "contains-base" (N contains
    every element supported on a single block with coordinate in the
    given base subgroup), "prime-socle" (the block closure has a unique
    minimal normal subgroup of prime order), or "unclassified" (the
    block image is not primitive, or no listed shape matched).
    block_part is the projection A of N to the first block and
    orbit_length the common length of the A-orbits there (None if they
    split unevenly, which cannot happen over a 2-closed block image).
    """

    kind: str
    group: PermGroup
    block_part: PermGroup
    orbit_length: int | None
    base: PermGroup = None
    prime: int = None
    diagonal: tuple = None

    def report(self):
        return {
            "kind": self.kind,
            "order": self.group.order(),
            "block part order": self.block_part.order(),
            "orbit length": self.orbit_length,
            "prime": self.prime,
            "base order": None if self.base is None else self.base.order(),
        }


def closure_block_kernel(ctx, block_budget=64, element_budget=20000):
    """The group of all 2-closure elements fixing every block setwise.

    Assembled from the pairwise filters: representative filters are
    computed once per M-orbit of blocks and carried to the remaining
    pairs by conjugation.  The result is exact whatever the closure of
    the block image is; when that image is additionally 2-closed, the
    closure of G is the semidirect product of this kernel with G.

    Raises BudgetExceededError when the block count or the number of
    explored coordinate tuples exceeds the budgets.
    """
    s = ctx.system.s
    if s > block_budget:
        raise BudgetExceededError(
            f"{s} blocks exceed the block budget {block_budget}")
    Y = ctx.block_closure
    if Y.order() > element_budget:
        raise BudgetExceededError(
            "the block closure is larger than the element budget")
    elems = sorted(tuple(p.images) for p in Y.elements())
    if ctx.block_closure_exact:
        ok = elems
    else:
        R = ctx.within_block
        part = OrbitalPartition(R)
        ok = [e for e in elems
              if closure_membership(R, Permutation(e), part)]
    okset = set(ok)
    pair_sets = {}
    fibers = {}
    for j in ctx.rep_blocks():
        pairs = {(u, v) for u, v in _filter_pairs(ctx.pair_group(j), Y)
                 if u in okset and v in okset}
        pair_sets[j] = pairs
        fib = {}
        for u, v in sorted(pairs):
            fib.setdefault(u, []).append(v)
        fibers[j] = fib
    found = []
    budget = [element_budget]

    def extend(partial):
        t = len(partial)
        if t == s:
            found.append(tuple(partial))
            return
        rep, r1, r1i, r2, r2i = ctx.transport(0, t)
        u = _conj(partial[0], r1, r1i)
        for v in fibers[rep].get(u, ()):
            cand = _conj(v, r2i, r2)
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceededError(
                    "kernel assembly exceeded the element budget")
            good = True
            for i in range(1, t):
                rep2, q1, q1i, q2, q2i = ctx.transport(i, t)
                pair = (_conj(partial[i], q1, q1i), _conj(cand, q2, q2i))
                if pair not in pair_sets[rep2]:
                    good = False
                    break
            if good:
                extend(partial + [cand])

    for y0 in ok:
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceededError(
                "kernel assembly exceeded the element budget")
        extend([y0])
    N = PermGroup(ctx.group.degree,
                  [ctx.block_fixing_element(t) for t in found],
                  seed=ctx.group.seed)
    if N.order() != len(found):
        raise GroupError("internal inconsistency: the filtered tuples "
                         "do not form a group")
    A = PermGroup(ctx.system.b, [Permutation(t[0]) for t in found],
                  seed=ctx.group.seed)
    return _classified(N, ctx, A)


def classify_block_kernel(N, ctx):
    """Classify a block-fixing subgroup N against the possible shapes.

    N must fix every block of the context setwise.  When the block
    image is primitive the kind is one of the structure alternatives
    (trivial, full-diagonal, contains-base, prime-socle); otherwise the
    kind is "unclassified".
    """
    coords = [[ctx.coordinate(n, k, k) for n in N.generators]
              for k in range(ctx.system.s)]
    A = PermGroup(ctx.system.b, coords[0], seed=ctx.group.seed)
    return _classified(N, ctx, A, coords)


def _classified(N, ctx, A, coords=None):
    lens = {len(orb) for orb in A.orbits()}
    a = lens.pop() if len(lens) == 1 else None
    if N.order() == 1:
        return BlockKernel(KIND_TRIVIAL, N, A, 1)
    if not higman_primitive(ctx.block_image):
        return BlockKernel(KIND_UNCLASSIFIED, N, A, a)
    s = ctx.system.s
    if coords is None:
        coords = [[ctx.coordinate(n, k, k) for n in N.generators]
                  for k in range(s)]
    projections = [PermGroup(ctx.system.b, coords[k], seed=ctx.group.seed)
                   for k in range(s)]
    if (N.order() == A.order()
            and all(p.equals(A) for p in projections[1:])):
        elements = list(N.elements())
        maps = []
        for k in range(s):
            table = {}
            for n in elements:
                key = tuple(ctx.coordinate(n, 0, 0).images)
                table[key] = tuple(ctx.coordinate(n, k, k).images)
            maps.append(table)
        return BlockKernel(KIND_FULL_DIAGONAL, N, A, a,
                           diagonal=tuple(maps))
    S = subnormal_intersection(ctx.block_closure)
    if S.order() > 1:
        identity = tuple(range(ctx.system.b))
        contained = True
        for k in range(s):
            for x in S.generators:
                coords_k = [identity] * s
                coords_k[k] = tuple(x.images)
                if not N.contains(ctx.block_fixing_element(coords_k)):
                    contained = False
                    break
            if not contained:
                break
        if contained:
            return BlockKernel(KIND_CONTAINS_BASE, N, A, a, base=S)
    minimal = ctx.block_closure.minimal_normal_subgroups()
    if len(minimal) == 1 and is_prime(minimal[0].order()):
        return BlockKernel(KIND_PRIME_SOCLE, N, A, a,
                           prime=minimal[0].order())
    return BlockKernel(KIND_UNCLASSIFIED, N, A, a)


def element_moving_blocks(kernel, ctx, i, j):
    """An element of the block kernel acting nontrivially inside both
    block i and block j, or None when no such element exists.

    The existence of such elements, for prime block size and distinct
    blocks, is a consequence of the structure theory; this searches the
    kernel directly rather than trusting it.
    """
    N = kernel.group if isinstance(kernel, BlockKernel) else kernel
    for n in N.elements():
        if n.is_identity:
            continue
        if (not ctx.coordinate(n, i, i).is_identity
                and not ctx.coordinate(n, j, j).is_identity):
            return n
    return None


def subnormal_intersection(G, order_bound=2000):
    """The intersection of all nontrivial subnormal subgroups of G.

    Nontrivial only when G has a unique minimal normal subgroup, that
    subgroup is simple, and it lies in every nontrivial subnormal
    subgroup; the trivial group otherwise.  Subgroups are enumerated
    outright, so the order bound of the subgroup search applies.
    """
    if G.order() == 1:
        return PermGroup(G.degree, [], seed=G.seed)
    minimal = G.minimal_normal_subgroups()
    if len(minimal) != 1 or not minimal[0].is_simple():
        return PermGroup(G.degree, [], seed=G.seed)
    subs = all_subgroup_sets(G, order_bound=order_bound)
    full = max(subs, key=len)
    common = None
    for sub in subs:
        if len(sub) == 1:
            continue
        if _subnormal_set(sub, full, G.degree):
            common = sub if common is None else common & sub
            if len(common) == 1:
                break
    return PermGroup(G.degree, [Permutation(t) for t in sorted(common)],
                     seed=G.seed)


def _subnormal_set(sub, top, degree):
    """Whether the subgroup set is subnormal in the group set, by the
    descending chain of normal closures."""
    gens = small_generating_set(sorted(sub), degree)
    cur = top
    while True:
        if cur == sub:
            return True
        conjugates = set()
        for h in cur:
            h_inv = Permutation(h).inverse()
            for g in gens:
                conjugates.add(tuple((h_inv * Permutation(g)
                                      * Permutation(h)).images))
        nxt = generated_set(sorted(conjugates), degree)
        if nxt == cur:
            return False
        cur = nxt


def _require_block_image_closed(ctx, assumed, node_budget):
    if assumed:
        return
    res = two_closure(ctx.block_image, node_budget=node_budget)
    if not res.certified or res.closure.order() != ctx.block_image.order():
        raise GroupError(
            "this verdict needs a 2-closed block image; pass "
            "assume_block_image_closed=True only with an outside "
            "certificate")


@dataclass
class PairTestVerdict:
    """Outcome of the block-pair test on blocks of size 2."""

    two_closed: bool
    witness: Permutation = None
    failing_block: int = None
    checked: tuple = ()

    def report(self):
        return {
            "two closed": self.two_closed,
            "witness": (None if self.witness is None
                        else self.witness.cycle_string()),
            "failing block": self.failing_block,
            "checked blocks": list(self.checked),
        }


def block_pair_test(ctx, assume_block_image_closed=False, node_budget=None):
    """Decide 2-closedness for blocks of size 2.

    If every representative two-block stabilizer acts nontrivially on
    both of its blocks, the permutation swapping the two points of
    every block lies in the closure but not in the group, so G is not
    2-closed and that swap is returned as the witness; this direction
    needs no assumption on the block image.  If some stabilizer fails,
    G is 2-closed provided the block image equals its own 2-closure,
    which is verified unless the caller vouches for it.
    """
    if ctx.system.b != 2:
        raise GroupError("the block-pair test needs blocks of size 2")
    checked = []
    failing = None
    for j in ctx.rep_blocks():
        checked.append(j)
        K = ctx.pair_group(j)
        if len(K.orbit(0)) != 2 or len(K.orbit(2)) != 2:
            failing = j
            break
    if failing is None:
        z = ctx.full_swap()
        if ctx.group.contains(z):
            raise GroupError("internal inconsistency: the swap witness "
                             "lies in the group")
        return PairTestVerdict(False, witness=z, checked=tuple(checked))
    _require_block_image_closed(ctx, assume_block_image_closed, node_budget)
    return PairTestVerdict(True, failing_block=failing,
                           checked=tuple(checked))


@dataclass
class DivisorReport:
    """The gcd bound from two-block stabilizer orders."""

    gcd: int
    orders: dict = field(default_factory=dict)
    certifies_two_closed: bool = False

    def report(self):
        return {
            "gcd": self.gcd,
            "orders": {str(j): o for j, o in sorted(self.orders.items())},
            "certifies two closed": self.certifies_two_closed,
        }


def stabilizer_gcd_test(ctx, assume_block_image_closed=False,
                        node_budget=None):
    """The gcd of two-block stabilizer orders, one per M-orbit.

    Any nontrivial block kernel forces a common orbit length greater
    than 1 dividing every such order, so gcd 1 certifies that G equals
    its 2-closure without running the closure search.  The certificate
    direction needs a 2-closed block image, which is verified at
    certification time unless the caller vouches for it.
    """
    L = ctx.block_image
    orders = {j: L.tuple_stabilizer_order((0, j))
              for j in ctx.rep_blocks()}
    g = 0
    for o in orders.values():
        g = gcd(g, o)
    certifies = g == 1
    if certifies:
        _require_block_image_closed(ctx, assume_block_image_closed,
                                    node_budget)
    return DivisorReport(g, orders, certifies)


def pair_stabilizer_divisor(L):
    """The gcd of two-point stabilizer orders of a transitive group,
    over one representative per suborbit."""
    if not L.is_transitive():
        raise NotTransitiveError("the divisor bound needs a transitive "
                                 "group")
    if L.degree < 2:
        raise GroupError("the divisor bound needs at least two points")
    stab = L.point_stabilizer(0)
    g = 0
    for orb in stab.orbits():
        if 0 in orb:
            continue
        g = gcd(g, L.tuple_stabilizer_order((0, orb[0])))
    return g


@dataclass
class CoveringReport:
    """Outcome of the covering test on blocks of prime size."""

    holds: bool
    failing_block: int = None
    certifies_two_closed: bool = False
    checked: tuple = ()

    def report(self):
        return {
            "holds": self.holds,
            "failing block": self.failing_block,
            "certifies two closed": self.certifies_two_closed,
            "checked blocks": list(self.checked),
        }


def prime_covering_test(ctx, assume_block_image_closed=False,
                        node_budget=None):
    """The covering condition for blocks of prime size: every
    representative two-block stabilizer acts transitively on both of
    its blocks.

    The condition is necessary for the closure to exceed the group, so
    a failure certifies 2-closedness (given a 2-closed block image,
    verified at certification time unless vouched for); the condition
    holding decides nothing by itself except for blocks of size 2,
    where it matches the block-pair test.
    """
    b = ctx.system.b
    if not is_prime(b):
        raise GroupError("the covering test needs blocks of prime size")
    checked = []
    failing = None
    for j in ctx.rep_blocks():
        checked.append(j)
        K = ctx.pair_group(j)
        if len(K.orbit(0)) != b or len(K.orbit(b)) != b:
            failing = j
            break
    if failing is None:
        return CoveringReport(True, checked=tuple(checked))
    _require_block_image_closed(ctx, assume_block_image_closed, node_budget)
    return CoveringReport(False, failing_block=failing,
                          certifies_two_closed=True,
                          checked=tuple(checked))


def one_dim_submodules(L, p, point_budget=10 ** 4):
    """All lines of the permutation module F_p^points sent to
    themselves by every generator of L.

    Found by solving the eigenvector equation for each tuple of nonzero
    scalars, one scalar per generator, and intersecting the solution
    spaces; lines are returned as vectors scaled to leading
    coefficient 1, sorted.  Always contains the all-ones line.
    """
    if not is_prime(p):
        raise GroupError("the field size must be prime")
    if not L.is_transitive():
        raise NotTransitiveError("the submodule search expects a "
                                 "transitive group")
    s = L.degree
    if s > point_budget:
        raise BudgetExceededError(
            f"{s} points exceed the budget {point_budget}")
    gens = [g.images for g in L.generators]
    if not gens:
        return [(1,)]
    if (p - 1) ** len(gens) > 10 ** 6:
        raise BudgetExceededError("too many scalar tuples to enumerate")
    lines = set()
    for lams in iter_product(range(1, p), repeat=len(gens)):
        basis = _eigen_basis(gens, lams, p, s)
        d = len(basis)
        if d == 0:
            continue
        if p ** d > 10 ** 5:
            raise BudgetExceededError("eigenspace too large to list "
                                      "its lines")
        for coeffs in iter_product(range(p), repeat=d):
            vec = [0] * s
            for coef, base_vec in zip(coeffs, basis):
                if coef:
                    for idx in range(s):
                        vec[idx] = (vec[idx] + coef * base_vec[idx]) % p
            lead = next((x for x in vec if x), None)
            if lead != 1:
                continue
            lines.add(tuple(vec))
    return sorted(lines)


def _eigen_basis(gens, lams, p, s):
    """A basis of the common eigenvector space for the given scalar
    per generator, from propagation along the generator images."""
    edges = [[] for _ in range(s)]
    for g, lam in zip(gens, lams):
        lam_inv = pow(lam, p - 2, p)
        for i in range(s):
            j = g[i]
            edges[i].append((j, lam_inv))
            edges[j].append((i, lam))
    seen = [False] * s
    basis = []
    for root in range(s):
        if seen[root]:
            continue
        values = {root: 1}
        seen[root] = True
        stack = [root]
        alive = True
        while stack:
            x = stack.pop()
            for y, mult in edges[x]:
                w = values[x] * mult % p
                known = values.get(y)
                if known is None:
                    values[y] = w
                    seen[y] = True
                    stack.append(y)
                elif known != w:
                    alive = False
        if alive:
            vec = [0] * s
            for node, val in values.items():
                vec[node] = val
            basis.append(vec)
    return basis


@dataclass
class Strip:
    """One strip of a subdirect product: the factor indices it covers,
    its order, and for every non-anchor factor the element map from the
    anchor factor (image tuples in factor-local coordinates)."""

    support: tuple
    order: int
    links: dict = field(default_factory=dict)

    @property
    def anchor(self):
        return self.support[0]


def strip_decomposition(H, factors, order_budget=10 ** 6):
    """Decompose a subdirect product of simple groups into strips.

    H and the factors act on the same points, each factor moving its
    own share; H must project onto every factor in full.  Two factors
    belong to one strip when the joint projection is a diagonal rather
    than the full product, which for simple factors is the only other
    possibility.  Returns the strips sorted by support, and checks that
    their orders multiply back to the order of H.
    """
    r = len(factors)
    if not 1 <= r <= 8:
        raise GroupError("between 1 and 8 factors are supported")
    supports = []
    for f in factors:
        if f.degree != H.degree:
            raise GroupError("factors must share the degree of H")
        moved = sorted({a for g in f.generators
                        for a in range(f.degree) if g.images[a] != a})
        if not moved:
            raise GroupError("a factor moves no points")
        supports.append(moved)
    taken = set()
    for supp in supports:
        if taken & set(supp):
            raise GroupError("factor supports overlap")
        taken.update(supp)
    orders = []
    for idx, f in enumerate(factors):
        if not f.is_simple():
            raise GroupError(f"factor {idx} is not simple")
        local = f.restriction(supports[idx])
        proj = H.restriction(supports[idx])
        if proj.order() != local.order() or not proj.is_subgroup_of(local):
            raise GroupError(f"H does not project onto factor {idx}")
        orders.append(local.order())
    linked = {}
    for i in range(r):
        for j in range(i + 1, r):
            o = H.restriction(supports[i] + supports[j]).order()
            if o == orders[i] * orders[j]:
                linked[(i, j)] = False
            elif o == orders[i] and orders[i] == orders[j]:
                linked[(i, j)] = True
            else:
                raise GroupError(
                    f"projection to factors {i},{j} has unexpected "
                    f"order {o}")
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), tied in linked.items():
        if tied:
            parent[find(j)] = find(i)
    components = {}
    for i in range(r):
        components.setdefault(find(i), []).append(i)
    for comp in components.values():
        for a in range(len(comp)):
            for b in range(a + 1, len(comp)):
                if not linked[(comp[a], comp[b])]:
                    raise GroupError("strip relation is not transitive")
    strips = []
    total = 1
    for comp in sorted(components.values()):
        anchor = comp[0]
        links = {}
        for j in comp[1:]:
            joint = H.restriction(supports[anchor] + supports[j])
            if joint.order() > order_budget:
                raise BudgetExceededError("strip link enumeration over "
                                          "budget")
            na = len(supports[anchor])
            table = {}
            for e in joint.elements():
                table[tuple(e.images[:na])] = tuple(
                    x - na for x in e.images[na:])
            links[j] = table
        strips.append(Strip(tuple(comp), orders[anchor], links))
        total *= orders[anchor]
    if total != H.order():
        raise GroupError("strips do not reassemble to H")
    return strips
