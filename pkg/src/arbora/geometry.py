"""Exact coordinates and certificates for the three nested polytopes.

The permutahedron sits inside the signed tree associahedron, which sits
inside the parallelepiped spanned by its parallel facets.  Vertices of the
middle polytope are integer points counting paths in maximal spines; facets
are the half-spaces of the building blocks.  Everything here is exact:
integers for coordinates and right-hand sides, rationals for barycenters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional

from .blocks import enumerate_blocks
from .errors import (
    BoundExceeded,
    NotMaximal,
    RecursionMismatch,
)
from .spines import Spine, enumerate_maximal_spines, flip_arc, source_sets
from .trees import (
    Sign,
    SignedTree,
    boundary_neighbors,
    signed_isomorphism,
)


def perm_point(order: Iterable) -> dict:
    """The permutahedron vertex of a linear order: position by vertex."""
    order = tuple(order)
    return {v: i + 1 for i, v in enumerate(order)}


def vertex_point(tree: SignedTree, spine: Spine) -> dict:
    """Integer coordinates of the polytope vertex of a maximal spine.

    A negative vertex counts the simple spine paths through it that avoid
    its outgoing arc (trivial path included); a positive vertex takes the
    co-count nu + 1 - (same count with its incoming arc).  Computed by the
    branch-size formula 1 + sum + sum of pairwise products.
    """
    if not spine.is_maximal:
        raise NotMaximal("vertex coordinates need a maximal spine")
    nu = tree.nu
    coords = {}
    for node in spine.nodes:
        (v,) = node
        if v in tree.negatives:
            special = spine.outgoing(node)
        else:
            special = spine.incoming(node)
        avoid = special[0] if special else None
        branch_sizes = []
        for arc in spine._incident[node]:
            if arc == avoid:
                continue
            other = arc[0] if arc[1] == node else arc[1]
            size = len(_subspine_size(spine, node, other))
            branch_sizes.append(size)
        total = 1 + sum(branch_sizes)
        pairs = 0
        for i in range(len(branch_sizes)):
            for j in range(i + 1, len(branch_sizes)):
                pairs += branch_sizes[i] * branch_sizes[j]
        count = total + pairs
        coords[v] = count if v in tree.negatives else nu + 1 - count
    return coords


def _subspine_size(spine: Spine, root: frozenset, start: frozenset) -> frozenset:
    """Vertices of the subspine hanging off `root` through the node `start`."""
    seen = {root, start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for tail, head in spine._incident[cur]:
            for end in (tail, head):
                if end not in seen:
                    seen.add(end)
                    stack.append(end)
    seen.discard(root)
    return frozenset(v for label in seen for v in label)


@dataclass(frozen=True)
class HalfSpace:
    support: frozenset
    rhs: int  # sense: sum over support >= rhs


@dataclass(frozen=True)
class RealizationCertificate:
    passed: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class PolytopeDescription:
    vertices: tuple  # (spine, coords dict) pairs
    facets: tuple  # (block, HalfSpace) pairs
    certificate: RealizationCertificate


def realize_polytope(tree: SignedTree, max_nu: int = 10) -> PolytopeDescription:
    """Vertex and facet descriptions with a verification certificate."""
    if tree.nu > max_nu:
        raise BoundExceeded(f"nu = {tree.nu} exceeds the bound {max_nu}")
    vertices = tuple(
        (s, vertex_point(tree, s)) for s in enumerate_maximal_spines(tree)
    )
    facets = tuple(
        (block, HalfSpace(block, comb(len(block) + 1, 2)))
        for block in enumerate_blocks(tree)
    )
    return PolytopeDescription(vertices, facets, verify_realization(tree))


def verify_realization(tree: SignedTree) -> RealizationCertificate:
    """Certify the vertex/facet pairing of the realization.

    For every maximal spine: the coordinate sum is the full binomial, the
    blocks of its nested set meet their half-spaces with equality, all
    other relevant blocks strictly, and each flip moves the vertex by a
    positive integer multiple of e_u - e_v.
    """
    nu = tree.nu
    blocks = enumerate_blocks(tree)
    spines = enumerate_maximal_spines(tree)
    for spine in spines:
        point = vertex_point(tree, spine)
        if sum(point.values()) != comb(nu + 1, 2):
            return RealizationCertificate(False, ("total", spine.key()))
        nested = source_sets(spine)
        for block in blocks:
            value = sum(point[v] for v in block)
            bound = comb(len(block) + 1, 2)
            if block in nested:
                if value != bound:
                    return RealizationCertificate(False, ("tight", sorted(block)))
            elif value <= bound:
                return RealizationCertificate(False, ("strict", sorted(block)))
        for arc in spine.arcs:
            neighbor = flip_arc(tree, spine, arc)
            other = vertex_point(tree, neighbor)
            (u,) = arc[0]
            (v,) = arc[1]
            delta = {w: other[w] - point[w] for w in point}
            lam = delta[u]
            if lam <= 0 or delta[v] != -lam:
                return RealizationCertificate(False, ("flip", (u, v)))
            if any(delta[w] != 0 for w in delta if w not in (u, v)):
                return RealizationCertificate(False, ("flip-support", (u, v)))
    return RealizationCertificate(True)


def parallel_facets(tree: SignedTree) -> tuple:
    """The edge cuts, as complementary block pairs (the only parallel pairs)."""
    from .blocks import edge_blocks

    pairs = []
    for edge in tree.edges:
        pairs.append(edge_blocks(tree, edge))
    return tuple(sorted(pairs, key=lambda p: tuple(sorted(p[0]))))


@dataclass(frozen=True)
class ParaSummands:
    edge_weights: tuple  # (edge, weight) pairs
    z: tuple  # (subset, Fraction) pairs over nonempty subsets
    y: tuple  # (subset, Fraction) pairs, nonzero entries only


def para_summands(tree: SignedTree, max_nu: int = 12) -> ParaSummands:
    """Edge weights and the deformation data of the bounding parallelepiped.

    The weight of an edge is the number of tree paths through it, i.e. the
    product of the sizes of the two components it separates.
    """
    if tree.nu > max_nu:
        raise BoundExceeded(f"nu = {tree.nu} exceeds the bound {max_nu}")
    nu = tree.nu
    weights = {}
    for edge in tree.edges:
        u, v = edge
        side = tree.component_containing(frozenset({v}), u)
        weights[edge] = len(side) * (len(tree.vertices) - len(side))
    from itertools import combinations

    z = []
    vertices = sorted(tree.standard)
    for r in range(1, nu + 1):
        for combo in combinations(vertices, r):
            subset = frozenset(combo)
            crossing = Fraction(0)
            for edge, weight in weights.items():
                a, b = edge
                if (a in subset) != (b in subset):
                    crossing += Fraction(weight, 2)
            z.append((subset, Fraction(len(subset) * (nu + 1), 2) - crossing))
    y = []
    for v in vertices:
        incident = sum(
            Fraction(w, 2) for e, w in weights.items() if v in e
        )
        value = Fraction(nu + 1, 2) - incident
        if value:
            y.append((frozenset({v}), value))
    for edge, weight in sorted(weights.items()):
        y.append((frozenset(edge), Fraction(weight)))
    return ParaSummands(
        tuple(sorted(weights.items())),
        tuple(sorted(z, key=lambda kv: (len(kv[0]), tuple(sorted(kv[0]))))),
        tuple(sorted(y, key=lambda kv: (len(kv[0]), tuple(sorted(kv[0]))))),
    )


def common_vertices_para(tree: SignedTree) -> tuple:
    """Orientations of the tree that are spines: the vertices shared with Para.

    An orientation qualifies when negative vertices have out-degree at most
    one and positive vertices in-degree at most one.
    """
    edges = list(tree.edges)
    results = []
    for mask in range(1 << len(edges)):
        arcs = []
        outdeg = {v: 0 for v in tree.vertices}
        indeg = {v: 0 for v in tree.vertices}
        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                arcs.append((frozenset({u}), frozenset({v})))
                outdeg[u] += 1
                indeg[v] += 1
            else:
                arcs.append((frozenset({v}), frozenset({u})))
                outdeg[v] += 1
                indeg[u] += 1
        if any(outdeg[v] > 1 for v in tree.negatives):
            continue
        if any(indeg[v] > 1 for v in tree.positives):
            continue
        spine = Spine.make([frozenset({v}) for v in tree.vertices], arcs)
        results.append(spine)
    return tuple(sorted(results, key=lambda s: sorted(map(sorted, s.key()))))


def singleton_spines(tree: SignedTree) -> tuple:
    """Maximal spines that are directed paths, with their unique extensions."""
    from .fans import fiber

    results = []
    for spine in enumerate_maximal_spines(tree):
        if any(len(spine.outgoing(n)) > 1 or len(spine.incoming(n)) > 1 for n in spine.nodes):
            continue
        orders = fiber(tree, spine)
        if len(orders) == 1:
            results.append((spine, orders[0]))
    return tuple(sorted(results, key=lambda pair: pair[1]))


def singleton_count_recursive(tree: SignedTree) -> int:
    """Count the directed-path spines by the rooted boundary-walk recursion.

    A root vertex contributes the count of the tree re-rooted at each of
    its boundary neighbors with the old root phantomized; positive roots
    whose remaining standard vertices straddle several components
    contribute nothing.  The result is checked against direct enumeration.
    """
    total = sum(_xi_rooted(tree, root) for root in tree.standard)
    direct = len(singleton_spines(tree))
    if total != direct:
        raise RecursionMismatch(
            f"recursion gives {total}, direct enumeration {direct}"
        )
    return total


def _root_feasible(tree: SignedTree, root) -> bool:
    if root in tree.negatives:
        return True
    holding = [
        comp
        for comp in tree.components(frozenset({root}))
        if comp & tree.standard_set
    ]
    return len(holding) <= 1


@lru_cache(maxsize=None)
def _xi_rooted_cached(tree: SignedTree, root) -> int:
    if not _root_feasible(tree, root):
        return 0
    if tree.nu == 1:
        return 1
    dropped = _phantomize_vertex(tree, root)
    return sum(
        _xi_rooted_cached(dropped, v) for v in boundary_neighbors(tree, root)
    )


def _xi_rooted(tree: SignedTree, root) -> int:
    return _xi_rooted_cached(tree, root)


def _phantomize_vertex(tree: SignedTree, vertex) -> SignedTree:
    index = tree.vertices.index(vertex)
    return SignedTree(
        vertices=tree.vertices,
        signs=tuple(
            Sign.NEGATIVE if i == index else s for i, s in enumerate(tree.signs)
        ),
        phantoms=tuple(
            True if i == index else ph for i, ph in enumerate(tree.phantoms)
        ),
        edges=tree.edges,
    )


def barycenter(tree: SignedTree) -> dict:
    """Exact vertex barycenter of the realization."""
    spines = enumerate_maximal_spines(tree)
    totals = {v: Fraction(0) for v in tree.standard}
    for spine in spines:
        for v, value in vertex_point(tree, spine).items():
            totals[v] += value
    return {v: total / len(spines) for v, total in totals.items()}


def isometric(tree_a: SignedTree, tree_b: SignedTree) -> bool:
    """Isometry of the two realizations: (anti-)isomorphic up to leaf signs."""
    return (
        signed_isomorphism(tree_a, tree_b, "up_to_leaf_signs") is not None
        or signed_isomorphism(tree_a, tree_b, "anti_up_to_leaf_signs") is not None
    )
