"""Deciding whether every faithful action of a finite group is 2-closed.

A permutation group is 2-closed when it already contains every permutation
that preserves each of its orbits on ordered pairs.  A finite group is
totally 2-closed when every faithful permutation representation of it is
2-closed.  This module decides that property for groups small enough to
enumerate, running cheap disproofs before full sweeps:

1.  A factorization G = HK with both factors proper, the cores of H and K
    meeting trivially, and G not the direct product of the two cores gives
    a faithful two-orbit action (cosets of H next to cosets of K) whose
    2-closure is strictly larger.  Verdict No.
2.  A faithful 2-transitive action on n points with |G| < n! closes to the
    full symmetric group.  Verdict No.
3.  For a direct product of nonabelian simple groups, none a section of
    the others, total 2-closure is equivalent to every factor admitting no
    nontrivial factorization and every transitive action on more than one
    point, faithful or not, being 2-closed.  A transitive-only sweep
    settles the question either way.
4.  In general the group is totally 2-closed exactly when every faithful
    action with pairwise non-equivalent orbits is 2-closed.  Such actions
    correspond to subsets of subgroup conjugacy classes whose cores
    intersect trivially, and the sweep tests them in degree order.

Verdicts are "Yes", "No" with a replayable witness action, or
"Inconclusive" with a frontier recording what was and was not tested.
Budgets count work units (actions, search nodes, subgroup orders), never
wall time, so verdicts are reproducible.  Sweep items are independent and
could be tested concurrently; this implementation tests them in
enumeration order, which doubles as the deterministic tie-break for the
first witness.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .actions import coset_action
from .basesize import exact_base_size
from .closure import two_closure
from .errors import BudgetExceededError, GroupError, SectionObstructionError
from .group import PermGroup
from .perm import Permutation
from .subgroups import all_subgroup_sets, has_section, subgroup_classes

YES = "Yes"
NO = "No"
INCONCLUSIVE = "Inconclusive"

DEFAULT_MAX_ACTIONS = 512
DEFAULT_MAX_DEGREE = 4096
DEFAULT_NODE_BUDGET = 300_000
DEFAULT_ORDER_BOUND = 2000

# Published section data for sporadic factors far beyond any enumeration
# budget.  Among the simple groups known to be totally 2-closed, the only
# sectional containment is the Thompson group inside the Monster; J1 in
# particular is not a section of the Monster.  Pairs are (small, big).
SPORADIC_SECTION_PAIRS = frozenset({("Th", "M")})


@dataclass(frozen=True)
class TotalityBudget:
    """Work-unit limits for the decision procedure.

    max_actions caps how many closure computations a sweep may run,
    max_degree caps the degree of any assembled action, node_budget is
    passed to each backtrack search, and subgroup_order_bound limits the
    group orders whose subgroups are enumerated.
    """

    max_actions: int = DEFAULT_MAX_ACTIONS
    max_degree: int = DEFAULT_MAX_DEGREE
    node_budget: int = DEFAULT_NODE_BUDGET
    subgroup_order_bound: int = DEFAULT_ORDER_BOUND

    def __post_init__(self):
        for name in ("max_actions", "max_degree", "node_budget",
                     "subgroup_order_bound"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) \
                    or value <= 0:
                raise GroupError(f"{name} must be a positive integer")


@dataclass(frozen=True)
class ActionWitness:
    """An action of the group whose 2-closure strictly contains the image.

    group is the image of the action on its points; for transitive-sweep
    witnesses it may be a proper quotient of the group under test, which
    is exactly what the semisimple reduction examines.  classes lists the
    point-stabilizer conjugacy classes the action was assembled from,
    when it came from a class table.  closure_order is the order of the
    2-closure found; when certified is False the search hit its node
    budget and closure_order is only a lower bound, though still strictly
    above the image order.
    """

    kind: str
    description: str
    classes: tuple
    degree: int
    group: PermGroup
    closure_order: int
    certified: bool = True

    @property
    def closure_index(self):
        return self.closure_order // self.group.order()


def replay_witness(witness, node_budget=None):
    """Recompute the 2-closure of a witness action from scratch."""
    return two_closure(witness.group, node_budget=node_budget)


@dataclass(frozen=True)
class TotalityVerdict:
    """The outcome of a total-2-closure decision.

    status is "Yes", "No", or "Inconclusive".  No-verdicts carry a
    witness whose closure strictly exceeds its image.  Inconclusive
    verdicts carry a frontier dict with "completed", "unresolved", and
    "pending" class subsets so a later run can resume.  tested enumerates
    every representation the sweep accounted for, each entry a dict with
    the classes involved, the degree, and how it was settled.
    """

    status: str
    reason: str = ""
    witness: ActionWitness | None = None
    frontier: dict | None = None
    budget_spent: dict = field(default_factory=dict)
    tested: tuple = ()

    def __post_init__(self):
        if self.status not in (YES, NO, INCONCLUSIVE):
            raise GroupError(f"unknown verdict status {self.status!r}")
        if self.status == NO and self.witness is None:
            raise GroupError("a No verdict needs a witness action")
        if self.status == INCONCLUSIVE and self.frontier is None:
            raise GroupError("an Inconclusive verdict needs a frontier")

    @property
    def decided(self):
        return self.status != INCONCLUSIVE


@dataclass(frozen=True)
class FactorizationWitness:
    """A factorization G = HK whose cores meet trivially.

    Together with core_G(H) x core_G(K) being smaller than G this places
    G outside the totally 2-closed groups: the action on the cosets of H
    next to the cosets of K is faithful, every crossing pair orbit is a
    full product, and so the closure contains the product of the two
    constituent closures, which is strictly larger than G.
    """

    H: PermGroup
    K: PermGroup
    h_class: int
    k_class: int
    core_h_order: int
    core_k_order: int


@dataclass(frozen=True)
class AssembledAction:
    """A direct sum of coset actions, as a permutation group.

    classes records the table indices of the point stabilizers, one per
    orbit in order; degree is the total number of points.
    """

    classes: tuple
    degree: int
    group: PermGroup


def _direct_sum(G, actions):
    """One permutation group acting on the disjoint union of coset spaces.

    The generator lists of the individual actions line up with
    G.generators entry for entry, so concatenating images per generator
    yields the diagonal action.
    """
    total = sum(act.degree for act in actions)
    gens = []
    for gi in range(len(G.generators)):
        images = []
        offset = 0
        for act in actions:
            images.extend(offset + v for v in act._image_gens[gi].images)
            offset += act.degree
        gens.append(Permutation(images))
    return PermGroup(total, gens, seed=G.seed)


def assemble_action(G, table, class_indices, cache=None):
    """The direct sum of the coset actions for the given subgroup classes.

    Repeated indices are allowed; the representation stream never emits
    them, but appending an equivalent copy of an orbit is useful when
    checking that duplicates do not change 2-closedness.  cache, if
    given, maps class index to a built CosetAction and is filled in.
    """
    if not class_indices:
        raise GroupError("an action needs at least one orbit")
    full = table.full_class
    for ci in class_indices:
        if not 0 <= ci < len(table.orders):
            raise GroupError(f"no subgroup class with index {ci}")
        if ci == full:
            raise GroupError(
                "the full group as a stabilizer gives a fixed point, "
                "not an orbit")
    actions = []
    for ci in class_indices:
        act = None if cache is None else cache.get(ci)
        if act is None:
            act = coset_action(G, table.representatives[ci])
            if cache is not None:
                cache[ci] = act
        actions.append(act)
    group = _direct_sum(G, actions)
    return AssembledAction(tuple(class_indices), group.degree, group)


def _faithful_subsets(G, table):
    """Class subsets with trivially intersecting cores, by total degree.

    Yields (degree, classes) pairs in nondecreasing total degree, ties
    broken by the class-index tuple.  Subsets whose cores still intersect
    nontrivially are extended but not yielded, since adding more orbits
    can shrink the kernel.  Extensions only use larger class indices, so
    each subset appears exactly once.
    """
    order = G.order()
    classes = sorted(table.proper_classes())
    degrees = {i: order // table.orders[i] for i in classes}
    core_sets = {
        i: frozenset(p.images for p in table.cores[i].elements())
        for i in classes
    }
    heap = [(degrees[i], (i,), core_sets[i]) for i in classes]
    heapq.heapify(heap)
    while heap:
        degree, subset, kernel = heapq.heappop(heap)
        if len(kernel) == 1:
            yield degree, subset
        last = subset[-1]
        for j in classes:
            if j > last:
                heapq.heappush(heap, (degree + degrees[j], subset + (j,),
                                      kernel & core_sets[j]))


def nonequivalent_faithful_representations(G, table=None):
    """Every faithful action built from pairwise non-conjugate stabilizers.

    Streams AssembledAction objects in nondecreasing total degree.  Each
    subset of proper subgroup classes whose cores intersect trivially
    appears exactly once; two orbits with conjugate stabilizers would be
    permutationally equivalent, and dropping such a duplicate never
    changes 2-closedness, so these actions suffice to decide total
    2-closure.  The stream is finite but can be exponentially long in the
    number of classes.
    """
    if table is None:
        table = subgroup_classes(G)
    if not table.complete:
        raise GroupError(
            "the representation stream needs a complete subgroup class "
            "table")
    cache = {}
    for _, subset in _faithful_subsets(G, table):
        yield assemble_action(G, table, subset, cache)


def factorization_disproof(G, budget=None, table=None):
    """Search for a factorization G = HK that rules out total 2-closure.

    A witness needs both factors proper, the cores of H and K meeting
    trivially, and the core orders not multiplying back to |G|; absence
    of a witness proves nothing.  Conjugating either factor neither
    creates nor destroys a factorization, and no group is the product of
    two conjugates of one proper subgroup, so checking one representative
    pair per pair of distinct classes is exhaustive.  Returns the first
    witness in class-pair order, or None.
    """
    budget = budget if budget is not None else TotalityBudget()
    if table is None:
        table = subgroup_classes(G, budget.subgroup_order_bound)
    if not table.complete:
        raise GroupError(
            "the factorization search needs a complete subgroup class "
            "table")
    order = G.order()
    element_sets = {}

    def elements_of(i):
        got = element_sets.get(i)
        if got is None:
            got = frozenset(
                p.images for p in table.representatives[i].elements())
            element_sets[i] = got
        return got

    candidates = [i for i in table.proper_classes() if table.orders[i] > 1]
    for a, i in enumerate(candidates):
        for j in candidates[a + 1:]:
            product = table.orders[i] * table.orders[j]
            if product < order or product % order != 0:
                # |HK| = |H||K| / |H n K| can only reach |G| if |G|
                # divides |H||K|
                continue
            meet = len(elements_of(i) & elements_of(j))
            if product != order * meet:
                continue
            core_h = table.cores[i]
            core_k = table.cores[j]
            if core_h.order() * core_k.order() == order:
                continue
            if core_h.order() > 1 and core_k.order() > 1:
                shared = frozenset(p.images for p in core_h.elements()) & \
                    frozenset(p.images for p in core_k.elements())
                if len(shared) > 1:
                    continue
            return FactorizationWitness(
                table.representatives[i], table.representatives[j], i, j,
                core_h.order(), core_k.order())
    return None


def _is_two_transitive(image):
    n = image.degree
    if n < 2 or not image.is_transitive():
        return False
    return len(image.point_stabilizer(0).orbit(1)) == n - 1


def two_transitive_disproof(G, budget=None, table=None, _spent=None):
    """A faithful 2-transitive action strictly below the symmetric group.

    Any such action closes to Sym(n), so finding one with |G| < n! rules
    out total 2-closure.  Scans core-free proper classes in ascending
    coset degree and returns an ActionWitness, or None.
    """
    budget = budget if budget is not None else TotalityBudget()
    if table is None:
        table = subgroup_classes(G, budget.subgroup_order_bound)
    if not table.complete:
        raise GroupError(
            "the 2-transitive scan needs a complete subgroup class table")
    spent = _spent if _spent is not None else _new_spent()
    order = G.order()
    scan = sorted((order // table.orders[i], i)
                  for i in table.proper_classes() if table.core_free(i))
    cache = {}
    for degree, i in scan:
        if degree > budget.max_degree:
            break
        if table.orders[i] == 1 and order > 2:
            # a regular action is 2-transitive only on two points
            continue
        if order >= math.factorial(degree):
            # the image would have to be all of Sym(degree)
            continue
        assembled = assemble_action(G, table, (i,), cache)
        if not _is_two_transitive(assembled.group):
            continue
        res = _run_closure(assembled.group, budget, spent)
        if res is None:
            continue
        return ActionWitness(
            "two-transitive",
            f"2-transitive coset action of degree {degree} for stabilizer "
            f"class {i}; the closure is the full symmetric group",
            (i,), degree, assembled.group, res.closure.order(),
            res.certified)
    return None


def _new_spent():
    return {"closure_runs": 0, "closure_nodes": 0, "actions_enumerated": 0,
            "base_size_checks": 0, "pruned_subsets": 0,
            "resumed_subsets": 0}


def _merge_spent(first, second):
    merged = dict(first)
    for key, value in second.items():
        merged[key] = merged.get(key, 0) + value
    return merged


def _run_closure(group, budget, spent):
    """two_closure under the shared budget; None when the budget stops it
    before any certification is possible."""
    spent["closure_runs"] += 1
    try:
        res = two_closure(group, node_budget=budget.node_budget)
    except BudgetExceededError:
        return None
    spent["closure_nodes"] += res.nodes
    return res


def _descendant_classes(table, cls):
    """Classes strictly below cls in the covering relation."""
    children = {}
    for lo, hi in table.edges:
        children.setdefault(hi, set()).add(lo)
    out = set()
    stack = [cls]
    while stack:
        for child in children.get(stack.pop(), ()):
            if child not in out:
                out.add(child)
                stack.append(child)
    return out


def _maybe_prune(table, cls, assembled, budget, spent, pruned):
    """Record classes below cls as settled when the shortcut applies.

    If the coset action for a core-free class is 2-closed with base size
    at most 2, then the coset action of every subgroup below it is also
    2-closed: the larger cosets form an invariant partition on which the
    induced image is the 2-closed base-2 action, and that pins the
    closure down to the group itself.  Every subgroup of a core-free
    subgroup is core-free, so the skipped actions stay faithful.
    """
    if not table.core_free(cls):
        return
    spent["base_size_checks"] += 1
    report = exact_base_size(assembled.group, node_budget=budget.node_budget)
    if report.exact is not None and report.exact <= 2:
        for below in _descendant_classes(table, cls):
            pruned.setdefault(below, cls)


def representation_sweep(G, budget=None, table=None, prune=True,
                         completed=()):
    """Test every faithful pairwise-non-equivalent action of G.

    Yes when each streamed action is certified 2-closed; No at the first
    one whose closure strictly exceeds the image; Inconclusive when a
    budget stops the sweep or a search cannot certify.  With prune on,
    the base-size shortcut marks single-orbit actions below a core-free
    2-closed base-2 stabilizer as settled without re-testing them.
    completed lists class subsets already verified 2-closed by an earlier
    run (from a frontier's "completed" list); they are skipped, and the
    caller vouches for them.
    """
    budget = budget if budget is not None else TotalityBudget()
    if table is None:
        table = subgroup_classes(G, budget.subgroup_order_bound)
    if not table.complete:
        raise GroupError("the sweep needs a complete subgroup class table")
    done = {tuple(subset) for subset in completed}
    spent = _new_spent()
    tested = []
    unresolved = []
    pruned = {}
    cache = {}
    witness = None
    stopped_by = None
    pending = []

    for degree, subset in _faithful_subsets(G, table):
        spent["actions_enumerated"] += 1
        entry = {"classes": list(subset), "degree": degree}
        if degree > budget.max_degree:
            stopped_by = "degree"
            pending.append(entry)
            break
        if subset in done:
            entry["result"] = "resumed"
            spent["resumed_subsets"] += 1
            tested.append(entry)
            continue
        if len(subset) == 1 and subset[0] in pruned:
            entry["result"] = "pruned"
            entry["via"] = pruned[subset[0]]
            spent["pruned_subsets"] += 1
            tested.append(entry)
            continue
        if spent["closure_runs"] >= budget.max_actions:
            stopped_by = "actions"
            pending.append(entry)
            break
        assembled = assemble_action(G, table, subset, cache)
        res = _run_closure(assembled.group, budget, spent)
        if res is None:
            entry["result"] = "unresolved"
            tested.append(entry)
            unresolved.append(entry)
            continue
        image_order = assembled.group.order()
        if res.closure.order() > image_order:
            entry["result"] = "witness"
            tested.append(entry)
            witness = ActionWitness(
                "multi-orbit" if len(subset) > 1 else "transitive",
                f"faithful action on stabilizer classes {list(subset)} "
                f"of degree {degree}",
                subset, degree, assembled.group, res.closure.order(),
                res.certified)
            break
        if not res.certified:
            entry["result"] = "unresolved"
            tested.append(entry)
            unresolved.append(entry)
            continue
        entry["result"] = "closed"
        tested.append(entry)
        if prune and len(subset) == 1:
            _maybe_prune(table, subset[0], assembled, budget, spent, pruned)

    if witness is not None:
        return TotalityVerdict(
            NO, reason=witness.description, witness=witness,
            budget_spent=spent, tested=tuple(tested))
    if stopped_by is not None or unresolved:
        frontier = _build_frontier("multi-orbit sweep", stopped_by, tested,
                                   unresolved, pending)
        reason = ("a closure search could not be certified"
                  if stopped_by is None else
                  f"sweep stopped by the {stopped_by} budget")
        return TotalityVerdict(
            INCONCLUSIVE, reason=reason, frontier=frontier,
            budget_spent=spent, tested=tuple(tested))
    return TotalityVerdict(
        YES,
        reason="every faithful pairwise-non-equivalent action is 2-closed",
        budget_spent=spent, tested=tuple(tested))


def _build_frontier(stage, stopped_by, tested, unresolved, pending):
    completed = [entry["classes"] for entry in tested
                 if entry.get("result") in ("closed", "resumed", "pruned")]
    return {
        "stage": stage,
        "stopped_by": stopped_by,
        "completed": completed,
        "unresolved": [entry["classes"] for entry in unresolved],
        "pending": [entry["classes"] for entry in pending],
        "note": "enumeration continues in nondecreasing total degree",
    }


def _factor_witness(G, factors, idx, fact, budget, spent):
    """A faithful G-action that fails 2-closure, from a factorization of
    one simple factor.

    G acts on the two coset spaces of the factorization through the
    projection onto that factor; one regular orbit per remaining factor
    restores faithfulness.  An element acting as the extra closure of the
    projected part and trivially elsewhere preserves every pair orbit, so
    the closure is strictly larger than G.
    """
    others = [g for k, other in enumerate(factors) if k != idx
              for g in other.generators]
    stabilizers = [
        PermGroup(G.degree, list(fact.H.generators) + others, seed=G.seed),
        PermGroup(G.degree, list(fact.K.generators) + others, seed=G.seed),
    ]
    for j in range(len(factors)):
        if j == idx:
            continue
        gens = [g for k, other in enumerate(factors) if k != j
                for g in other.generators]
        stabilizers.append(PermGroup(G.degree, gens, seed=G.seed))
    actions = [coset_action(G, stab) for stab in stabilizers]
    group = _direct_sum(G, actions)
    res = _run_closure(group, budget, spent)
    if res is None:
        raise BudgetExceededError(
            "could not certify the factorization witness action within "
            "the node budget")
    if res.closure.order() == group.order():
        raise GroupError(
            "internal inconsistency: a factorization witness action "
            "computed as 2-closed")
    factor_order = factors[idx].order()
    return ActionWitness(
        "factorization",
        f"a direct factor of order {factor_order} factorizes as a product "
        f"of subgroups of orders {fact.H.order()} and {fact.K.order()}; "
        "the paired coset action, made faithful with regular orbits of "
        "the remaining factors, is not 2-closed",
        (), group.degree, group, res.closure.order(), res.certified)


def transitive_reduction_check(G, budget=None, assume_no_sections=False,
                               table=None):
    """Total 2-closure for a direct product of nonabelian simple groups.

    The reduction applies when no factor is isomorphic to a section of
    the others; a simple section of a direct product is a section of one
    factor, so pairwise testing suffices.  The test enumerates each
    factor's subgroups, and a factor beyond the enumeration budget raises
    unless assume_no_sections asserts the condition, the route meant for
    the named sporadic pairs recorded in SPORADIC_SECTION_PAIRS.

    Once the precondition holds, the group is totally 2-closed exactly
    when (a) no factor admits a nontrivial factorization and (b) every
    transitive action on more than one point, faithful or not, is
    2-closed.  Condition (b) sweeps the coset action of every proper
    subgroup class in ascending degree.
    """
    budget = budget if budget is not None else TotalityBudget()
    if not G.is_semisimple_product():
        raise GroupError(
            "the transitive reduction needs a direct product of "
            "nonabelian simple groups")
    factors = G.minimal_normal_subgroups()
    spent = _new_spent()

    if not assume_no_sections and len(factors) > 1:
        factor_subs = []
        for factor in factors:
            if factor.order() > budget.subgroup_order_bound:
                raise BudgetExceededError(
                    f"a factor of order {factor.order()} is too large for "
                    "the section test; pass assume_no_sections=True when "
                    "the condition is known from published data")
            factor_subs.append(all_subgroup_sets(
                factor, budget.subgroup_order_bound))
        for i, small in enumerate(factors):
            for j, big in enumerate(factors):
                if i == j or small.order() > big.order():
                    continue
                if has_section(big, small.order(), factor_subs[j], G.degree):
                    raise SectionObstructionError(
                        f"a factor of order {small.order()} is a section "
                        f"of a factor of order {big.order()}, so the "
                        "transitive-only reduction does not apply")

    # condition (a): no factor factorizes nontrivially
    for idx, factor in enumerate(factors):
        if factor.order() > budget.subgroup_order_bound:
            raise BudgetExceededError(
                f"a factor of order {factor.order()} is too large to "
                "search for factorizations")
        if len(factors) == 1 and table is not None and table.complete:
            ftable = table
        else:
            ftable = subgroup_classes(factor, budget.subgroup_order_bound)
        fact = factorization_disproof(factor, budget, table=ftable)
        if fact is not None:
            witness = _factor_witness(G, factors, idx, fact, budget, spent)
            return TotalityVerdict(
                NO,
                reason=f"factor {idx} admits a nontrivial factorization",
                witness=witness, budget_spent=spent,
                tested=({"classes": [], "degree": witness.degree,
                         "result": "witness"},))

    # condition (b): every transitive action of G is 2-closed
    if table is None:
        table = subgroup_classes(G, budget.subgroup_order_bound)
    if not table.complete:
        frontier = {
            "stage": "transitive sweep",
            "stopped_by": "subgroup enumeration",
            "completed": [], "unresolved": [], "pending": [],
            "note": f"group order {G.order()} exceeds the enumeration "
                    f"bound {budget.subgroup_order_bound}",
        }
        return TotalityVerdict(
            INCONCLUSIVE,
            reason="no factor factorizes, but the subgroup classes of the "
                   "product are unavailable within budget",
            frontier=frontier, budget_spent=spent)

    order = G.order()
    scan = sorted((order // table.orders[i], i)
                  for i in table.proper_classes())
    tested = []
    unresolved = []
    pending = []
    pruned = {}
    cache = {}
    witness = None
    stopped_by = None
    for degree, i in scan:
        spent["actions_enumerated"] += 1
        entry = {"classes": [i], "degree": degree}
        if degree > budget.max_degree:
            stopped_by = "degree"
            pending.append(entry)
            break
        if i in pruned:
            entry["result"] = "pruned"
            entry["via"] = pruned[i]
            spent["pruned_subsets"] += 1
            tested.append(entry)
            continue
        if spent["closure_runs"] >= budget.max_actions:
            stopped_by = "actions"
            pending.append(entry)
            break
        assembled = assemble_action(G, table, (i,), cache)
        res = _run_closure(assembled.group, budget, spent)
        if res is None:
            entry["result"] = "unresolved"
            tested.append(entry)
            unresolved.append(entry)
            continue
        if res.closure.order() > assembled.group.order():
            entry["result"] = "witness"
            tested.append(entry)
            witness = ActionWitness(
                "transitive",
                f"transitive action of degree {degree} for stabilizer "
                f"class {i} is not 2-closed",
                (i,), degree, assembled.group, res.closure.order(),
                res.certified)
            break
        if not res.certified:
            entry["result"] = "unresolved"
            tested.append(entry)
            unresolved.append(entry)
            continue
        entry["result"] = "closed"
        tested.append(entry)
        _maybe_prune(table, i, assembled, budget, spent, pruned)

    if witness is not None:
        return TotalityVerdict(
            NO, reason=witness.description, witness=witness,
            budget_spent=spent, tested=tuple(tested))
    if stopped_by is not None or unresolved:
        frontier = _build_frontier("transitive sweep", stopped_by, tested,
                                   unresolved, pending)
        reason = ("a closure search could not be certified"
                  if stopped_by is None else
                  f"transitive sweep stopped by the {stopped_by} budget")
        return TotalityVerdict(
            INCONCLUSIVE, reason=reason, frontier=frontier,
            budget_spent=spent, tested=tuple(tested))
    return TotalityVerdict(
        YES,
        reason="no factor factorizes and every transitive action is "
               "2-closed",
        budget_spent=spent, tested=tuple(tested))


def is_totally_two_closed(G, budget=None, completed=(), table=None):
    """Decide whether every faithful action of G is 2-closed.

    Runs, in order: the factorization disproof, the 2-transitive
    disproof, the transitive-only reduction when G is a direct product of
    nonabelian simple groups, and finally the general sweep over faithful
    actions with pairwise non-equivalent orbits.  Stops at the first No
    witness; answers Yes only when a sweep completes; otherwise returns
    Inconclusive with a frontier.  completed feeds a previous frontier's
    "completed" list back into the general sweep.
    """
    budget = budget if budget is not None else TotalityBudget()
    if G.order() == 1:
        return TotalityVerdict(
            YES, reason="the trivial group is 2-closed in every action")
    spent = _new_spent()
    if table is None:
        table = subgroup_classes(G, budget.subgroup_order_bound)

    if not table.complete:
        # Best effort without a class table: the defining action of G is
        # itself faithful, so its failure to be 2-closed already decides.
        res = _run_closure(G, budget, spent)
        if res is not None and res.closure.order() > G.order():
            witness = ActionWitness(
                "input-action",
                "the defining action of the group is not 2-closed",
                (), G.degree, G, res.closure.order(), res.certified)
            return TotalityVerdict(
                NO, reason=witness.description, witness=witness,
                budget_spent=spent,
                tested=({"classes": [], "degree": G.degree,
                         "result": "witness"},))
        frontier = {
            "stage": "subgroup enumeration",
            "stopped_by": "subgroup enumeration",
            "completed": [], "unresolved": [], "pending": [],
            "note": f"group order {G.order()} exceeds the enumeration "
                    f"bound {budget.subgroup_order_bound}",
        }
        return TotalityVerdict(
            INCONCLUSIVE,
            reason="subgroup classes unavailable within budget",
            frontier=frontier, budget_spent=spent)

    fact = factorization_disproof(G, budget, table=table)
    if fact is not None:
        assembled = assemble_action(G, table, (fact.h_class, fact.k_class))
        res = _run_closure(assembled.group, budget, spent)
        if res is None:
            raise BudgetExceededError(
                "could not certify the factorization witness action "
                "within the node budget")
        if res.closure.order() == assembled.group.order():
            raise GroupError(
                "internal inconsistency: a factorization witness action "
                "computed as 2-closed")
        witness = ActionWitness(
            "factorization",
            f"the group is the product of subgroup classes "
            f"{fact.h_class} and {fact.k_class} with trivially meeting "
            "cores; the paired coset action is not 2-closed",
            (fact.h_class, fact.k_class), assembled.degree,
            assembled.group, res.closure.order(), res.certified)
        return TotalityVerdict(
            NO, reason=witness.description, witness=witness,
            budget_spent=spent,
            tested=({"classes": list(witness.classes),
                     "degree": witness.degree, "result": "witness"},))

    wit = two_transitive_disproof(G, budget, table=table, _spent=spent)
    if wit is not None:
        return TotalityVerdict(
            NO, reason=wit.description, witness=wit, budget_spent=spent,
            tested=({"classes": list(wit.classes), "degree": wit.degree,
                     "result": "witness"},))

    if G.is_semisimple_product():
        try:
            verdict = transitive_reduction_check(G, budget, table=table)
        except (SectionObstructionError, BudgetExceededError):
            verdict = None
        if verdict is not None:
            return _with_merged_spent(verdict, spent)

    verdict = representation_sweep(G, budget, table=table, prune=True,
                                   completed=completed)
    return _with_merged_spent(verdict, spent)


def _with_merged_spent(verdict, earlier):
    merged = _merge_spent(earlier, verdict.budget_spent)
    return TotalityVerdict(
        verdict.status, reason=verdict.reason, witness=verdict.witness,
        frontier=verdict.frontier, budget_spent=merged,
        tested=verdict.tested)
