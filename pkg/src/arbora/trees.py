"""Vertex-signed trees with optional phantom vertices.

The universal input of the toolkit: a finite tree whose vertices carry a
sign in {-, +}.  Phantom vertices have no sign and never enter vertex
subsets, labels or blocks; they only participate in connectivity.  All
values are immutable, so every operation in the package is a pure function
and trees can be used as cache keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import (
    DuplicateId,
    EmptyTree,
    NotATree,
    PreconditionViolated,
    RootIsPhantom,
    UnknownVertex,
)

VertexId = object  # any hashable with a total order among the ids of one tree


class Sign(Enum):
    NEGATIVE = "-"
    POSITIVE = "+"

    @property
    def opposite(self) -> "Sign":
        return Sign.POSITIVE if self is Sign.NEGATIVE else Sign.NEGATIVE

    @staticmethod
    def parse(value) -> "Sign":
        if isinstance(value, Sign):
            return value
        if value in ("-", "neg", "negative"):
            return Sign.NEGATIVE
        if value in ("+", "pos", "positive"):
            return Sign.POSITIVE
        raise PreconditionViolated(f"not a sign: {value!r}")


def canonical_edge(u: VertexId, v: VertexId) -> tuple:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class SignedTree:
    """A signed (phantom) tree with canonically ordered vertex data."""

    vertices: tuple
    signs: tuple  # Sign per vertex, aligned with `vertices`; phantoms store NEGATIVE
    phantoms: tuple  # bool per vertex, aligned with `vertices`
    edges: tuple  # canonical (min, max) pairs, sorted

    # -- basic accessors -------------------------------------------------

    @cached_property
    def _index(self) -> Mapping:
        return {v: i for i, v in enumerate(self.vertices)}

    def __contains__(self, v) -> bool:
        return v in self._index

    def sign_of(self, v) -> Sign:
        i = self._index.get(v)
        if i is None:
            raise UnknownVertex(f"unknown vertex {v!r}")
        if self.phantoms[i]:
            raise PreconditionViolated(f"phantom vertex {v!r} carries no sign")
        return self.signs[i]

    def is_phantom(self, v) -> bool:
        i = self._index.get(v)
        if i is None:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return self.phantoms[i]

    @cached_property
    def standard(self) -> tuple:
        return tuple(v for v, ph in zip(self.vertices, self.phantoms) if not ph)

    @property
    def nu(self) -> int:
        return len(self.standard)

    @cached_property
    def negatives(self) -> frozenset:
        return frozenset(
            v
            for v, s, ph in zip(self.vertices, self.signs, self.phantoms)
            if not ph and s is Sign.NEGATIVE
        )

    @cached_property
    def positives(self) -> frozenset:
        return frozenset(
            v
            for v, s, ph in zip(self.vertices, self.signs, self.phantoms)
            if not ph and s is Sign.POSITIVE
        )

    @cached_property
    def standard_set(self) -> frozenset:
        return frozenset(self.standard)

    @cached_property
    def adjacency(self) -> Mapping:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbors(self, v) -> tuple:
        ns = self.adjacency.get(v)
        if ns is None:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return ns

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    @cached_property
    def leaves(self) -> tuple:
        return tuple(v for v in self.vertices if len(self.adjacency[v]) <= 1)

    def is_leaf(self, v) -> bool:
        return self.degree(v) <= 1

    def has_edge(self, u, v) -> bool:
        return canonical_edge(u, v) in set(self.edges)

    # -- paths and components --------------------------------------------

    def path_between(self, u, v) -> tuple:
        """Vertices of the unique tree path from u to v, inclusive."""
        if u not in self._index or v not in self._index:
            raise UnknownVertex(f"unknown endpoint on path {u!r}-{v!r}")
        if u == v:
            return (u,)
        parent = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y in self.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        path = [v]
        while path[-1] != u:
            path.append(parent[path[-1]])
        return tuple(reversed(path))

    def components(self, deleted: Iterable = ()) -> tuple:
        """Vertex sets of the connected components of the tree minus `deleted`.

        Deletion removes the vertices and their incident edges; the result is
        a tuple of frozensets sorted by smallest member.
        """
        deleted = frozenset(deleted)
        seen = set(deleted)
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return tuple(sorted(comps, key=lambda c: sorted(c)[0] if c else None))

    def component_containing(self, deleted: Iterable, v) -> frozenset:
        deleted = frozenset(deleted)
        if v in deleted:
            raise PreconditionViolated(f"{v!r} was deleted")
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in comp and y not in deleted:
                    comp.add(y)
                    stack.append(y)
        return frozenset(comp)


def build_tree(vertex_specs: Iterable, edge_pairs: Iterable) -> SignedTree:
    """Validate and build a SignedTree.

    `vertex_specs` holds (id, sign) or (id, sign, phantom) entries; signs may
    be Sign values or the strings "-" / "+".  The edges must form a tree on
    all vertices and at least one vertex must be standard.
    """
    specs = list(vertex_specs)
    if not specs:
        raise EmptyTree("a tree needs at least one vertex")
    ids, signs, phantoms = [], {}, {}
    for spec in specs:
        if len(spec) == 2:
            vid, sign = spec
            phantom = False
        else:
            vid, sign, phantom = spec
        if vid in signs:
            raise DuplicateId(f"duplicate vertex id {vid!r}")
        ids.append(vid)
        # phantom vertices carry no sign; store NEGATIVE as the fixed filler
        signs[vid] = Sign.NEGATIVE if phantom else Sign.parse(sign)
        phantoms[vid] = bool(phantom)

    edges = []
    seen_edges = set()
    for u, v in edge_pairs:
        if u not in signs or v not in signs:
            raise UnknownVertex(f"edge {u!r}-{v!r} uses an unknown vertex")
        if u == v:
            raise NotATree(f"self-loop at {u!r}")
        e = canonical_edge(u, v)
        if e in seen_edges:
            raise NotATree(f"repeated edge {u!r}-{v!r}")
        seen_edges.add(e)
        edges.append(e)

    if len(edges) != len(ids) - 1:
        raise NotATree(f"{len(ids)} vertices need {len(ids) - 1} edges, got {len(edges)}")

    ids_sorted = tuple(sorted(ids))
    tree = SignedTree(
        vertices=ids_sorted,
        signs=tuple(signs[v] for v in ids_sorted),
        phantoms=tuple(phantoms[v] for v in ids_sorted),
        edges=tuple(sorted(edges)),
    )
    if len(ids) > 1 and len(tree.components()) != 1:
        raise NotATree("edge set is disconnected")
    if not tree.standard:
        raise EmptyTree("at least one standard vertex is required")
    return tree


# -- file format ----------------------------------------------------------


def tree_from_json(doc) -> SignedTree:
    """Parse the toolkit-wide tree file format (a JSON object or its text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        specs = [
            (v["id"], v.get("sign", "-"), bool(v.get("phantom", False)))
            for v in doc["vertices"]
        ]
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise NotATree(f"malformed tree document: {exc}") from exc
    return build_tree(specs, edges)


def tree_to_json(tree: SignedTree) -> dict:
    return {
        "vertices": [
            {"id": v, "sign": s.value, "phantom": ph}
            for v, s, ph in zip(tree.vertices, tree.signs, tree.phantoms)
        ],
        "edges": [list(e) for e in tree.edges],
    }


# -- sign-preserving transformations ---------------------------------------


@dataclass(frozen=True)
class FlipAllSigns:
    pass


@dataclass(frozen=True)
class Relabel:
    mapping: tuple  # tuple of (old, new) pairs

    @staticmethod
    def of(mapping: Mapping) -> "Relabel":
        return Relabel(tuple(sorted(mapping.items())))


@dataclass(frozen=True)
class FlipLeafSign:
    leaf: object


@dataclass(frozen=True)
class SwitchAdjacent:
    u: object
    v: object


def transform(tree: SignedTree, op) -> SignedTree:
    """Apply one of the complex-preserving tree operations.

    FlipAllSigns and FlipLeafSign are involutions; Relabel renames vertices;
    SwitchAdjacent exchanges the signs of two adjacent vertices of degree at
    most 2 carrying opposite signs.
    """
    if isinstance(op, FlipAllSigns):
        return SignedTree(
            vertices=tree.vertices,
            signs=tuple(
                s if ph else s.opposite
                for s, ph in zip(tree.signs, tree.phantoms)
            ),
            phantoms=tree.phantoms,
            edges=tree.edges,
        )
    if isinstance(op, Relabel):
        mapping = dict(op.mapping)
        if set(mapping) != set(tree.vertices):
            raise PreconditionViolated("relabeling must cover every vertex")
        if len(set(mapping.values())) != len(mapping):
            raise PreconditionViolated("relabeling must be a bijection")
        return build_tree(
            [
                (mapping[v], s, ph)
                for v, s, ph in zip(tree.vertices, tree.signs, tree.phantoms)
            ],
            [(mapping[u], mapping[v]) for u, v in tree.edges],
        )
    if isinstance(op, FlipLeafSign):
        leaf = op.leaf
        if tree.is_phantom(leaf):
            raise PreconditionViolated(f"{leaf!r} is a phantom")
        if tree.degree(leaf) > 1:
            raise PreconditionViolated(f"{leaf!r} is not a leaf")
        i = tree._index[leaf]
        signs = list(tree.signs)
        signs[i] = signs[i].opposite
        return SignedTree(tree.vertices, tuple(signs), tree.phantoms, tree.edges)
    if isinstance(op, SwitchAdjacent):
        u, v = op.u, op.v
        if not tree.has_edge(u, v):
            raise PreconditionViolated(f"{u!r} and {v!r} are not adjacent")
        if tree.degree(u) > 2 or tree.degree(v) > 2:
            raise PreconditionViolated("both switched vertices need degree <= 2")
        if tree.is_phantom(u) or tree.is_phantom(v):
            raise PreconditionViolated("cannot switch phantom vertices")
        if tree.sign_of(u) is tree.sign_of(v):
            raise PreconditionViolated("switch requires opposite signs (use Relabel)")
        iu, iv = tree._index[u], tree._index[v]
        signs = list(tree.signs)
        signs[iu], signs[iv] = signs[iv], signs[iu]
        return SignedTree(tree.vertices, tuple(signs), tree.phantoms, tree.edges)
    raise PreconditionViolated(f"unknown transform {op!r}")


PROP18_MODES = ("exact", "anti", "up_to_leaf_signs", "anti_up_to_leaf_signs")


def signed_isomorphism(tree_a: SignedTree, tree_b: SignedTree, mode: str = "exact") -> Optional[dict]:
    """Search for a tree isomorphism matching the requested sign condition.

    Modes: "exact" (signs agree), "anti" (signs opposite), and the two
    "*_up_to_leaf_signs" variants that only constrain internal vertices.
    Phantoms must map to phantoms.  Returns a vertex bijection or None.
    """
    if mode not in PROP18_MODES:
        raise PreconditionViolated(f"unknown isomorphism mode {mode!r}")
    if len(tree_a.vertices) != len(tree_b.vertices):
        return None
    if len(tree_a.standard) != len(tree_b.standard):
        return None

    anti = mode.startswith("anti")
    leaves_free = mode.endswith("up_to_leaf_signs")

    def sign_ok(u, w) -> bool:
        if tree_a.is_phantom(u) != tree_b.is_phantom(w):
            return False
        if tree_a.is_phantom(u):
            return True
        if leaves_free and tree_a.is_leaf(u) and tree_b.is_leaf(w):
            return True
        sa, sb = tree_a.sign_of(u), tree_b.sign_of(w)
        return (sa is not sb) if anti else (sa is sb)

    b_vertices = list(tree_b.vertices)

    def extend(assignment: dict, frontier: list) -> Optional[dict]:
        if not frontier:
            if len(assignment) == len(tree_a.vertices):
                return dict(assignment)
            # disconnected would have failed build_tree; all vertices reached
            return None
        u = frontier[0]
        placed = assignment[u]
        todo = [n for n in tree_a.adjacency[u] if n not in assignment]
        if not todo:
            return extend(assignment, frontier[1:])
        n = todo[0]
        for w in tree_b.adjacency[placed]:
            if w in assignment.values():
                continue
            if tree_a.degree(n) != tree_b.degree(w) or not sign_ok(n, w):
                continue
            assignment[n] = w
            result = extend(assignment, frontier + [n])
            if result is not None:
                return result
            del assignment[n]
        return None

    root = tree_a.vertices[0]
    for target in b_vertices:
        if tree_a.degree(root) != tree_b.degree(target) or not sign_ok(root, target):
            continue
        result = extend({root: target}, [root])
        if result is not None:
            return result
    return None


def phantom_split(tree: SignedTree, block: Iterable) -> tuple:
    """Split along a relevant building block into its two phantom trees.

    The first tree keeps the block standard and phantomizes the rest, the
    second does the opposite; the underlying unsigned tree never changes.
    """
    from . import blocks as _blocks

    block = frozenset(block)
    check = _blocks.is_building_block(tree, block)
    if not check:
        from .errors import NotABuildingBlock

        raise NotABuildingBlock(f"{sorted(block)} is not a building block: {check.failed}")
    if not block or block == tree.standard_set:
        from .errors import NotABuildingBlock

        raise NotABuildingBlock("phantom_split needs a relevant block")

    def phantomize(keep: frozenset) -> SignedTree:
        return SignedTree(
            vertices=tree.vertices,
            signs=tuple(
                Sign.NEGATIVE if (ph or v not in keep) else s
                for v, s, ph in zip(tree.vertices, tree.signs, tree.phantoms)
            ),
            phantoms=tuple(
                ph or (v not in keep)
                for v, ph in zip(tree.vertices, tree.phantoms)
            ),
            edges=tree.edges,
        )

    return phantomize(block), phantomize(tree.standard_set - block)


# -- boundary walk ----------------------------------------------------------

BOTTOM = "bottom"
TOP = "top"


@dataclass(frozen=True)
class BoundaryGraph:
    """Discrete model of the boundary of the thickened tree.

    Two copies of the tree (bottom and top) joined by a rung at every tree
    leaf.  A standard vertex is lifted to the bottom copy when negative and
    to the top copy when positive.
    """

    nodes: tuple
    edges: tuple
    lifts: tuple  # (vertex, node) pairs for standard vertices

    @cached_property
    def adjacency(self) -> Mapping:
        adj = {n: [] for n in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {n: tuple(ns) for n, ns in adj.items()}

    @cached_property
    def lift_of(self) -> Mapping:
        return dict(self.lifts)


def boundary_graph(tree: SignedTree) -> BoundaryGraph:
    nodes = [(v, side) for v in tree.vertices for side in (BOTTOM, TOP)]
    edges = []
    for u, v in tree.edges:
        edges.append(((u, BOTTOM), (v, BOTTOM)))
        edges.append(((u, TOP), (v, TOP)))
    for leaf in tree.leaves:
        edges.append(((leaf, BOTTOM), (leaf, TOP)))
    lifts = tuple(
        (v, (v, BOTTOM if tree.sign_of(v) is Sign.NEGATIVE else TOP))
        for v in tree.standard
    )
    return BoundaryGraph(tuple(nodes), tuple(edges), lifts)


def boundary_neighbors(tree: SignedTree, root) -> frozenset:
    """Standard vertices visible from the root along the boundary walk.

    The walk starts at the root's lift, stops whenever it reaches the lift
    of another standard vertex, and never passes through a lift.  The top
    copy of the boundary is opaque: the free point above another standard
    negative vertex cannot be crossed, while the bottom copy (under the
    positive vertices), phantom columns, and the root's own column are all
    traversable.  The asymmetry mirrors the bottom-up sweep that puts the
    root first; it is what makes the singleton recursion count correctly.
    """
    if root not in tree.standard_set:
        raise RootIsPhantom(f"root {root!r} must be a standard vertex")
    graph = boundary_graph(tree)
    start = graph.lift_of[root]
    lifted_nodes = {node: v for v, node in graph.lifts}

    reached = set()
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nxt in graph.adjacency[node]:
            if nxt in seen:
                continue
            hit = lifted_nodes.get(nxt)
            if hit is not None and hit != root:
                reached.add(hit)
                continue
            vertex, side = nxt
            if side == TOP and vertex != root and not tree.is_phantom(vertex):
                continue
            seen.add(nxt)
            stack.append(nxt)
    return frozenset(reached)
