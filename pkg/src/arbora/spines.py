"""The spine calculus.

A spine on a signed tree is a directed tree whose node labels partition the
standard vertices, subject to a local separation condition: at a node with
label U, the source sets of distinct incoming arcs live in distinct
components of the tree minus the negative part of U, and the sink sets of
distinct outgoing arcs in distinct components of the tree minus its
positive part.  Maximal spines (all labels singletons) are the facets of
the nested complex; contraction and splitting move between ranks; flips
move between adjacent facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional

from .blocks import Compatibility, compatibility, open_components
from .errors import (
    ImproperCut,
    InvalidSpine,
    NoOrientedPath,
    NotMaximal,
    NotNested,
    SingletonLabel,
    UnknownArc,
    VertexNotInLabel,
)
from .trees import SignedTree, canonical_edge


def _label_key(label: frozenset) -> tuple:
    return tuple(sorted(label))


def _arc_key(arc: tuple) -> tuple:
    return (_label_key(arc[0]), _label_key(arc[1]))


@dataclass(frozen=True)
class Spine:
    """A directed labeled tree; nodes are keyed by their label sets."""

    nodes: tuple  # frozenset labels, canonically sorted
    arcs: tuple  # (tail label, head label) pairs, canonically sorted

    @staticmethod
    def make(nodes: Iterable, arcs: Iterable) -> "Spine":
        nodes = tuple(sorted((frozenset(n) for n in nodes), key=_label_key))
        arcs = tuple(
            sorted(((frozenset(t), frozenset(h)) for t, h in arcs), key=_arc_key)
        )
        return Spine(nodes, arcs)

    @cached_property
    def node_of(self) -> Mapping:
        return {v: label for label in self.nodes for v in label}

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(v for label in self.nodes for v in label)

    @cached_property
    def _incident(self) -> Mapping:
        inc = {label: [] for label in self.nodes}
        for tail, head in self.arcs:
            inc[tail].append((tail, head))
            inc[head].append((tail, head))
        return {n: tuple(a) for n, a in inc.items()}

    def incoming(self, label: frozenset) -> tuple:
        return tuple(a for a in self._incident[label] if a[1] == label)

    def outgoing(self, label: frozenset) -> tuple:
        return tuple(a for a in self._incident[label] if a[0] == label)

    @cached_property
    def _side_sets(self) -> Mapping:
        """For each arc, the set of vertices on its tail side."""
        sides = {}
        for arc in self.arcs:
            tail, head = arc
            # collect node labels reachable from the tail without the arc
            seen = {tail}
            stack = [tail]
            while stack:
                label = stack.pop()
                for other in self._incident[label]:
                    if other == arc:
                        continue
                    for end in other:
                        if end not in seen:
                            seen.add(end)
                            stack.append(end)
            sides[arc] = frozenset(v for label in seen for v in label)
        return sides

    def source_set(self, arc: tuple) -> frozenset:
        sides = self._side_sets
        if arc not in sides:
            raise UnknownArc(f"no arc {arc!r}")
        return sides[arc]

    def sink_set(self, arc: tuple) -> frozenset:
        return self.vertices - self.source_set(arc)

    @cached_property
    def is_maximal(self) -> bool:
        return all(len(label) == 1 for label in self.nodes)

    def arc_by_source_set(self, source: frozenset) -> tuple:
        for arc in self.arcs:
            if self.source_set(arc) == source:
                return arc
        raise UnknownArc(f"no arc with source set {sorted(source)}")

    def key(self) -> frozenset:
        """Canonical identity: the family of arc source sets."""
        return frozenset(self._side_sets.values())

    def below(self, u, v) -> bool:
        """True when the spine path from u's node to v's node is directed u -> v."""
        walk = self._directed_reach(self.node_of[u])
        return self.node_of[v] in walk

    def _directed_reach(self, label: frozenset) -> frozenset:
        seen = {label}
        stack = [label]
        while stack:
            cur = stack.pop()
            for tail, head in self.outgoing(cur):
                if head not in seen:
                    seen.add(head)
                    stack.append(head)
        return frozenset(seen)


def one_node_spine(tree: SignedTree) -> Spine:
    return Spine.make([tree.standard_set], [])


@dataclass(frozen=True)
class SpineCheck:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_spine(tree: SignedTree, spine: Spine) -> SpineCheck:
    """Check the partition, tree shape, and local separation conditions."""
    labels = list(spine.nodes)
    if not labels:
        return SpineCheck(False, "no nodes")
    if any(not label for label in labels):
        return SpineCheck(False, "empty label")
    union = set()
    total = 0
    for label in labels:
        union |= label
        total += len(label)
    if total != len(union):
        return SpineCheck(False, "labels overlap")
    if union != tree.standard_set:
        return SpineCheck(False, "labels do not partition the standard vertices")
    if len(spine.arcs) != len(labels) - 1:
        return SpineCheck(False, "arc count is not node count minus one")
    label_set = set(labels)
    for tail, head in spine.arcs:
        if tail not in label_set or head not in label_set:
            return SpineCheck(False, "arc endpoint is not a node")
    # connectivity on nodes
    if labels:
        seen = {labels[0]}
        stack = [labels[0]]
        while stack:
            cur = stack.pop()
            for tail, head in spine._incident[cur]:
                for end in (tail, head):
                    if end not in seen:
                        seen.add(end)
                        stack.append(end)
        if len(seen) != len(labels):
            return SpineCheck(False, "arcs do not connect the nodes")

    for label in labels:
        neg = frozenset(v for v in label if v in tree.negatives)
        pos = frozenset(v for v in label if v in tree.positives)
        for arcs, deleted, side in (
            (spine.incoming(label), neg, "incoming"),
            (spine.outgoing(label), pos, "outgoing"),
        ):
            comps = tree.components(deleted)
            used = set()
            for arc in arcs:
                content = (
                    spine.source_set(arc) if side == "incoming" else spine.sink_set(arc)
                )
                homes = [i for i, c in enumerate(comps) if content <= c]
                if not homes:
                    return SpineCheck(
                        False,
                        f"{side} set at node {sorted(label)} spans several components",
                    )
                if homes[0] in used:
                    return SpineCheck(
                        False,
                        f"two {side} sets at node {sorted(label)} share a component",
                    )
                used.add(homes[0])
    return SpineCheck(True)


def source_sets(spine: Spine) -> frozenset:
    """The nested set of the spine: one source set per arc."""
    return spine.key()


def contract_arc(spine: Spine, arc: tuple) -> Spine:
    tail, head = (frozenset(arc[0]), frozenset(arc[1]))
    if (tail, head) not in set(spine.arcs):
        raise UnknownArc(f"no arc {arc!r}")
    merged = tail | head
    nodes = [merged] + [n for n in spine.nodes if n not in (tail, head)]
    arcs = []
    for t, h in spine.arcs:
        if (t, h) == (tail, head):
            continue
        t2 = merged if t in (tail, head) else t
        h2 = merged if h in (tail, head) else h
        arcs.append((t2, h2))
    return Spine.make(nodes, arcs)


def split_node(tree: SignedTree, spine: Spine, node: Iterable, vertex) -> Spine:
    """Split one vertex out of a label, keeping the spine valid.

    A negative vertex is pulled below the node and steals the incoming arcs
    whose source sets sit in components (of the tree minus the negative part
    of the label) adjacent to it; a positive vertex is pulled above,
    symmetrically.
    """
    node = frozenset(node)
    if node not in set(spine.nodes):
        raise UnknownArc(f"no node labeled {sorted(node)}")
    if len(node) < 2:
        raise SingletonLabel(f"cannot split singleton node {sorted(node)}")
    if vertex not in node:
        raise VertexNotInLabel(f"{vertex!r} not in label {sorted(node)}")

    rest = node - {vertex}
    negative = vertex in tree.negatives

    if negative:
        deleted = frozenset(v for v in node if v in tree.negatives)
        grabbed = []
        for arc in spine.incoming(node):
            content = spine.source_set(arc)
            comp = next(c for c in tree.components(deleted) if content <= c)
            if any(n == vertex for v in comp for n in tree.adjacency[v]):
                grabbed.append(arc)
        new_arcs = [((frozenset({vertex})), rest)]
    else:
        deleted = frozenset(v for v in node if v in tree.positives)
        grabbed = []
        for arc in spine.outgoing(node):
            content = spine.sink_set(arc)
            comp = next(c for c in tree.components(deleted) if content <= c)
            if any(n == vertex for v in comp for n in tree.adjacency[v]):
                grabbed.append(arc)
        new_arcs = [(rest, frozenset({vertex}))]

    nodes = [frozenset({vertex}), rest] + [n for n in spine.nodes if n != node]
    for t, h in spine.arcs:
        if (t, h) in grabbed:
            t2 = frozenset({vertex}) if t == node else t
            h2 = frozenset({vertex}) if h == node else h
        else:
            t2 = rest if t == node else t
            h2 = rest if h == node else h
        new_arcs.append((t2, h2))
    result = Spine.make(nodes, new_arcs)
    check = validate_spine(tree, result)
    if not check:
        raise InvalidSpine(f"split produced an invalid spine: {check.reason}")
    return result


def flip_arc(tree: SignedTree, spine: Spine, arc: tuple) -> Spine:
    """Exchange one arc of a maximal spine for the unique alternative.

    The arc u -> v is reversed; the incoming arc of u rooted on v's side of
    the tree (when present) is re-attached to v, and the outgoing arc of v
    sinking on u's side (when present) is re-attached to u.
    """
    if not spine.is_maximal:
        raise NotMaximal("flips are defined on maximal spines")
    tail, head = (frozenset(arc[0]), frozenset(arc[1]))
    if (tail, head) not in set(spine.arcs):
        raise UnknownArc(f"no arc {arc!r}")
    (u,) = tail
    (v,) = head

    comp_u_side = tree.component_containing(frozenset({v}), u)
    comp_v_side = tree.component_containing(frozenset({u}), v)

    # a positive node has a single incoming arc and it always moves; a
    # negative node moves the incoming arc rooted on v's side of the tree
    arc_i = None
    for cand in spine.incoming(tail):
        if u in tree.positives or spine.source_set(cand) <= comp_v_side:
            arc_i = cand
            break
    # dually: a negative node's unique outgoing arc always moves
    arc_o = None
    for cand in spine.outgoing(head):
        if v in tree.negatives or spine.sink_set(cand) <= comp_u_side:
            arc_o = cand
            break

    new_arcs = []
    for a in spine.arcs:
        if a == (tail, head):
            new_arcs.append((head, tail))
        elif arc_i is not None and a == arc_i:
            new_arcs.append((arc_i[0], head))
        elif arc_o is not None and a == arc_o:
            new_arcs.append((tail, arc_o[1]))
        else:
            new_arcs.append(a)
    result = Spine.make(spine.nodes, new_arcs)
    check = validate_spine(tree, result)
    if not check:
        raise InvalidSpine(f"flip produced an invalid spine: {check.reason}")
    return result


@lru_cache(maxsize=None)
def enumerate_maximal_spines(tree: SignedTree) -> tuple:
    """All maximal spines, by breadth-first search over flips.

    Seeded at the spine of the canonical vertex order; the flip graph is
    connected, so the search is exhaustive and output-linear.
    """
    from .fans import kappa

    seed = kappa(tree, tuple(sorted(tree.standard)))
    order = [seed]
    seen = {seed.key()}
    frontier = [seed]
    while frontier:
        nxt = []
        for spine in frontier:
            for arc in spine.arcs:
                neighbor = flip_arc(tree, spine, arc)
                if neighbor.key() not in seen:
                    seen.add(neighbor.key())
                    order.append(neighbor)
                    nxt.append(neighbor)
        frontier = sorted(nxt, key=lambda s: sorted(map(_arc_key, s.arcs)))
    return tuple(sorted(order, key=lambda s: sorted(map(_arc_key, s.arcs))))


# -- nested set <-> spine -----------------------------------------------------


def spine_of_nested_set(tree: SignedTree, nested: Iterable) -> Spine:
    """The unique spine whose arc source sets are the given nested set.

    Implemented through the sweep of ordered partitions: the level sets of
    the sum of sink-side indicator vectors single out the target cone, whose
    spine the sweep then reconstructs.
    """
    from .fans import kappa_extended

    nested = [frozenset(b) for b in nested]
    for i, a in enumerate(nested):
        for b in nested[i + 1 :]:
            if a == b:
                raise NotNested("repeated block")
            if compatibility(tree, a, b) is Compatibility.INCOMPATIBLE:
                raise NotNested(f"incompatible blocks {sorted(a)}, {sorted(b)}")
    depth = {v: sum(1 for b in nested if v not in b) for v in tree.standard}
    levels = sorted(set(depth.values()))
    partition = tuple(
        frozenset(v for v in tree.standard if depth[v] == lv) for lv in levels
    )
    if not partition:
        return one_node_spine(tree)
    spine = kappa_extended(tree, partition)
    if source_sets(spine) != frozenset(nested):
        raise NotNested("blocks do not form a nested set of this tree")
    return spine


def spine_of_nested_set_by_rules(tree: SignedTree, nested: Iterable) -> Spine:
    """Independent reconstruction of the spine by endpoint identification.

    Used as a cross-check of spine_of_nested_set: arcs (one per block) have
    their endpoints glued according to the nesting pattern, and the labels
    are recovered as the vertices missing from all adjacent source and sink
    sets.
    """
    nested = sorted((frozenset(b) for b in nested), key=_label_key)
    n = len(nested)
    if n == 0:
        return one_node_spine(tree)
    rel = {}
    blocks = set(nested)
    full = tree.standard_set
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a, b = nested[i], nested[j]
            if a < b:
                rel[(i, j)] = "sub"
            elif a > b:
                rel[(i, j)] = "sup"
            elif not (a & b) and (a | b) not in blocks and (a | b) != full:
                rel[(i, j)] = "bot"
            elif (a | b) == full and (a & b) not in blocks and (a & b):
                rel[(i, j)] = "top"
            else:
                raise NotNested(f"incompatible blocks {sorted(a)} and {sorted(b)}")

    # union-find on endpoint slots: (i, "head") and (i, "tail")
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for i in range(n):
        find((i, "head"))
        find((i, "tail"))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r = rel[(i, j)]
            if r == "sub" and not any(
                (rel.get((i, k)) == "sub" and rel.get((k, j)) == "sub")
                or (rel.get((i, k)) == "bot" and rel.get((k, j)) == "top")
                for k in range(n)
                if k not in (i, j)
            ):
                union((i, "head"), (j, "tail"))
            if r == "bot" and i < j and not any(
                (rel.get((i, k)) == "sub" and rel.get((k, j)) == "bot")
                or (rel.get((i, k)) == "bot" and rel.get((k, j)) == "sup")
                for k in range(n)
                if k not in (i, j)
            ):
                union((i, "head"), (j, "head"))
            if r == "top" and i < j and not any(
                (rel.get((i, k)) == "top" and rel.get((k, j)) == "sub")
                or (rel.get((i, k)) == "sup" and rel.get((k, j)) == "top")
                for k in range(n)
                if k not in (i, j)
            ):
                union((i, "tail"), (j, "tail"))

    slots = {}
    for i in range(n):
        for end in ("head", "tail"):
            slots.setdefault(find((i, end)), []).append((i, end))

    labels = {}
    for root, members in slots.items():
        incoming = [i for i, end in members if end == "head"]
        outgoing = [i for i, end in members if end == "tail"]
        label = set(full)
        for i in incoming:
            label -= nested[i]
        for i in outgoing:
            label -= full - nested[i]
        labels[root] = frozenset(label)

    arcs = [(labels[find((i, "tail"))], labels[find((i, "head"))]) for i in range(n)]
    spine = Spine.make(labels.values(), arcs)
    check = validate_spine(tree, spine)
    if not check:
        raise NotNested(f"identification produced an invalid spine: {check.reason}")
    return spine


# -- blossoms and cuts --------------------------------------------------------


@dataclass(frozen=True)
class NodeBlossoms:
    label: frozenset
    required_in: int
    required_out: int
    blossoms_in: int
    blossoms_out: int


def blossom_counts(tree: SignedTree, spine: Spine) -> tuple:
    """Pad each node to its required degrees.

    Required in-degree of a node is the number of open components of the
    tree minus the negative part of its label (fully deleted edges count);
    dually for out-degrees.  The paddings are the blossoms.
    """
    result = []
    for label in spine.nodes:
        neg = frozenset(v for v in label if v in tree.negatives)
        pos = frozenset(v for v in label if v in tree.positives)
        req_in = len(open_components(tree, neg))
        req_out = len(open_components(tree, pos))
        act_in = len(spine.incoming(label))
        act_out = len(spine.outgoing(label))
        if act_in > req_in or act_out > req_out:
            raise InvalidSpine(f"node {sorted(label)} exceeds its required degree")
        result.append(
            NodeBlossoms(label, req_in, req_out, req_in - act_in, req_out - act_out)
        )
    return tuple(result)


def cut_subtrees(tree: SignedTree, spine: Spine, source_nodes: Iterable) -> tuple:
    """Open subtrees crossed by a proper cut of the blossoming spine.

    `source_nodes` lists the node labels below the cut; it must be closed
    under taking arc tails.  The result lists the open components of the
    tree minus (positive part of the source side plus negative part of the
    sink side): one per cut arc or blossom.
    """
    ideal = {frozenset(n) for n in source_nodes}
    node_set = set(spine.nodes)
    if not ideal <= node_set:
        raise ImproperCut("cut names unknown nodes")
    for tail, head in spine.arcs:
        if head in ideal and tail not in ideal:
            raise ImproperCut(
                f"arc {sorted(tail)} -> {sorted(head)} runs against the cut"
            )
    sc = frozenset(v for label in ideal for v in label)
    sk = spine.vertices - sc
    deleted = (sc & tree.positives) | (sk & tree.negatives)
    pieces = open_components(tree, deleted)

    cut_arcs = [a for a in spine.arcs if a[0] in ideal and a[1] not in ideal]
    counts = blossom_counts(tree, spine)
    blossoms = sum(b.blossoms_in for b in counts if b.label not in ideal)
    blossoms += sum(b.blossoms_out for b in counts if b.label in ideal)
    if len(pieces) != len(cut_arcs) + blossoms:
        raise ImproperCut(
            f"cut crosses {len(cut_arcs)} arcs + {blossoms} blossoms "
            f"but leaves {len(pieces)} open components"
        )
    return pieces


def tree_orientation_of_spine(tree: SignedTree, spine: Spine) -> dict:
    """Orient every tree edge by the direction of the spine path joining it."""
    if not spine.is_maximal:
        raise NotMaximal("edge orientations need a maximal spine")
    orientation = {}
    for u, v in tree.edges:
        if tree.is_phantom(u) or tree.is_phantom(v):
            continue
        if spine.below(u, v):
            orientation[canonical_edge(u, v)] = (u, v)
        elif spine.below(v, u):
            orientation[canonical_edge(u, v)] = (v, u)
        else:
            raise NoOrientedPath(f"no directed spine path between {u!r} and {v!r}")
    return orientation


# -- serialization ------------------------------------------------------------


def spine_to_json(spine: Spine) -> dict:
    order = {label: i for i, label in enumerate(spine.nodes)}
    return {
        "nodes": [
            {"id": i, "label": sorted(label)} for label, i in sorted(order.items(), key=lambda kv: kv[1])
        ],
        "arcs": sorted([order[t], order[h]] for t, h in spine.arcs),
    }


def spine_from_json(doc) -> Spine:
    labels = {node["id"]: frozenset(node["label"]) for node in doc["nodes"]}
    arcs = [(labels[t], labels[h]) for t, h in doc["arcs"]]
    return Spine.make(labels.values(), arcs)


def spine_to_dot(spine: Spine) -> str:
    order = {label: i for i, label in enumerate(spine.nodes)}
    lines = ["digraph spine {"]
    for label, i in sorted(order.items(), key=lambda kv: kv[1]):
        text = ",".join(str(v) for v in sorted(label))
        lines.append(f'  n{i} [label="{text}"];')
    for t, h in spine.arcs:
        lines.append(f"  n{order[t]} -> n{order[h]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
