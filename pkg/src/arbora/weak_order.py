"""Weak order, increasing flips, h-vectors, and congruence diagnostics.

Fixing a base order turns the flip graph into a DAG (orient each flip by
the base positions of the exchanged arc endpoints).  The same data gives
the h-vector by counting ordered arcs per maximal spine, and the fiber
diagnostics that show when the sweep fibers fail to quotient the weak
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterable, Optional

from .errors import BoundExceeded, InvalidOrder, VerificationFailure
from .fans import fiber, kappa, _check_order
from .spines import enumerate_maximal_spines, flip_arc
from .trees import SignedTree


class Comparison(Enum):
    LE = "<="
    GE = ">="
    EQ = "="
    INCOMPARABLE = "incomparable"


def inversion_set(base: Iterable, order: Iterable) -> frozenset:
    """Ordered pairs (u, v) with u before v in the base but v before u here."""
    base = tuple(base)
    order = tuple(order)
    if set(base) != set(order) or len(base) != len(order):
        raise InvalidOrder("orders must permute the same set")
    pos = {v: i for i, v in enumerate(order)}
    return frozenset(
        (u, v)
        for i, u in enumerate(base)
        for v in base[i + 1 :]
        if pos[v] < pos[u]
    )


def weak_compare(base: Iterable, order_a: Iterable, order_b: Iterable) -> Comparison:
    inv_a = inversion_set(base, order_a)
    inv_b = inversion_set(base, order_b)
    if inv_a == inv_b:
        return Comparison.EQ
    if inv_a <= inv_b:
        return Comparison.LE
    if inv_a >= inv_b:
        return Comparison.GE
    return Comparison.INCOMPARABLE


@dataclass(frozen=True)
class FlipDigraph:
    spines: tuple
    arcs: tuple  # (source index, target index, (u, v)) triples
    source: int
    sink: int

    def out_degree(self, index: int) -> int:
        return sum(1 for a in self.arcs if a[0] == index)


def increasing_flip_digraph(tree: SignedTree, base: Iterable) -> FlipDigraph:
    """Orient every flip by the base order of its exchanged endpoints.

    The result is certified acyclic with the sweep of the base as unique
    source and the sweep of the reversed base as unique sink.
    """
    base = _check_order(tree, base)
    pos = {v: i for i, v in enumerate(base)}
    spines = enumerate_maximal_spines(tree)
    index = {s.key(): i for i, s in enumerate(spines)}
    arcs = set()
    for i, spine in enumerate(spines):
        for arc in spine.arcs:
            (u,) = arc[0]
            (v,) = arc[1]
            j = index[flip_arc(tree, spine, arc).key()]
            if pos[u] < pos[v]:
                arcs.add((i, j, (u, v)))
            else:
                arcs.add((j, i, (v, u)))
    arcs = tuple(sorted(arcs))

    indeg = {i: 0 for i in range(len(spines))}
    outdeg = {i: 0 for i in range(len(spines))}
    succs = {i: [] for i in range(len(spines))}
    for a, b, _ in arcs:
        indeg[b] += 1
        outdeg[a] += 1
        succs[a].append(b)
    sources = [i for i in indeg if indeg[i] == 0]
    sinks = [i for i in outdeg if outdeg[i] == 0]
    if len(sources) != 1 or len(sinks) != 1:
        raise VerificationFailure("flip digraph must have one source and one sink")
    # Kahn's algorithm certifies acyclicity
    remaining = dict(indeg)
    queue = [i for i in remaining if remaining[i] == 0]
    visited = 0
    while queue:
        node = queue.pop()
        visited += 1
        for succ in succs[node]:
            remaining[succ] -= 1
            if remaining[succ] == 0:
                queue.append(succ)
    if visited != len(spines):
        raise VerificationFailure("flip digraph has a directed cycle")
    if spines[sources[0]].key() != kappa(tree, base).key():
        raise VerificationFailure("source is not the sweep of the base order")
    if spines[sinks[0]].key() != kappa(tree, tuple(reversed(base))).key():
        raise VerificationFailure("sink is not the sweep of the reversed base")
    return FlipDigraph(spines, arcs, sources[0], sinks[0])


def h_vector(tree: SignedTree, base: Iterable) -> tuple:
    """h_l = number of maximal spines with exactly l base-ordered arcs."""
    base = _check_order(tree, base)
    pos = {v: i for i, v in enumerate(base)}
    counts = [0] * tree.nu
    for spine in enumerate_maximal_spines(tree):
        ordered = sum(
            1
            for arc in spine.arcs
            if pos[next(iter(arc[0]))] < pos[next(iter(arc[1]))]
        )
        counts[ordered] += 1
    return tuple(counts)


@dataclass(frozen=True)
class FiberReport:
    interval_failures: tuple  # (spine key index, reason) per failing fiber
    projection_down_failure: Optional[tuple]
    projection_up_failure: Optional[tuple]

    @property
    def is_order_congruence(self) -> bool:
        return (
            not self.interval_failures
            and self.projection_down_failure is None
            and self.projection_up_failure is None
        )


def congruence_diagnostics(
    tree: SignedTree,
    base: Iterable,
    max_nu: int = 8,
    first_witness_only: bool = False,
) -> FiberReport:
    """Check the sweep fibers against the base weak order.

    Reports fibers that are not weak-order intervals and adjacent order
    pairs on which the downward or upward fiber projections fail to be
    order preserving.  With `first_witness_only` the search stops at the
    first non-interval fiber.
    """
    if tree.nu > max_nu:
        raise BoundExceeded(f"nu = {tree.nu} exceeds the bound {max_nu}")
    base = _check_order(tree, base)
    vertices = sorted(tree.standard)
    base_pairs = [
        (u, v) for i, u in enumerate(base) for v in base[i + 1 :]
    ]
    pair_index = {p: i for i, p in enumerate(base_pairs)}

    def inv_mask(order: tuple) -> int:
        pos = {v: i for i, v in enumerate(order)}
        mask = 0
        for (u, v), i in pair_index.items():
            if pos[v] < pos[u]:
                mask |= 1 << i
        return mask

    all_orders = list(permutations(vertices))
    masks = {order: inv_mask(order) for order in all_orders}

    spines = enumerate_maximal_spines(tree)
    fibers = [fiber(tree, s) for s in spines]

    interval_failures = []
    fiber_min = {}
    fiber_max = {}
    for idx, fib in sorted(
        enumerate(fibers), key=lambda pair: -len(pair[1])
    ):
        meet = None
        join = None
        for order in fib:
            mask = masks[order]
            meet = mask if meet is None else meet & mask
            join = mask if join is None else join | mask
        bottom = [o for o in fib if masks[o] == meet]
        top = [o for o in fib if masks[o] == join]
        if not bottom or not top:
            interval_failures.append((idx, "no unique extremum"))
        else:
            fiber_min[idx] = bottom[0]
            fiber_max[idx] = top[0]
            members = sum(
                1 for o in all_orders if meet | masks[o] == masks[o] and masks[o] | join == join
            )
            if members != len(fib):
                interval_failures.append((idx, "misses interior orders"))
        if interval_failures and first_witness_only:
            return FiberReport(tuple(interval_failures), None, None)

    down_failure = None
    up_failure = None
    if len(fiber_min) == len(spines):
        owner = {}
        for idx, fib in enumerate(fibers):
            for order in fib:
                owner[order] = idx
        for order in all_orders:
            for i in range(len(order) - 1):
                swapped = list(order)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                other = tuple(swapped)
                if masks[order] | masks[other] != masks[other]:
                    continue  # keep only covers order <= other
                lo, hi = owner[order], owner[other]
                if down_failure is None:
                    a, b = masks[fiber_min[lo]], masks[fiber_min[hi]]
                    if a | b != b:
                        down_failure = (order, other)
                if up_failure is None:
                    a, b = masks[fiber_max[lo]], masks[fiber_max[hi]]
                    if a | b != b:
                        up_failure = (order, other)
            if down_failure and up_failure:
                break
    return FiberReport(tuple(interval_failures), down_failure, up_failure)
