import pytest
from hypothesis import given, settings

from arbora.errors import (
    DuplicateId,
    EmptyTree,
    NotATree,
    PreconditionViolated,
    RootIsPhantom,
)
from arbora.trees import (
    FlipAllSigns,
    FlipLeafSign,
    Relabel,
    Sign,
    SwitchAdjacent,
    build_tree,
    boundary_graph,
    boundary_neighbors,
    phantom_split,
    signed_isomorphism,
    transform,
    tree_from_json,
    tree_to_json,
)

from conftest import signed_trees


class TestBuildTree:
    def test_tripod(self, tripod_neg):
        assert tripod_neg.nu == 4
        assert len(tripod_neg.edges) == 3
        assert tripod_neg.negatives == frozenset({1, 2, 3, 4})

    def test_single_vertex(self):
        tree = build_tree([(1, "-")], [])
        assert tree.nu == 1
        assert tree.leaves == (1,)

    def test_disconnected_rejected(self):
        with pytest.raises(NotATree):
            build_tree([(i, "-") for i in range(1, 5)], [(1, 2), (3, 4)])

    def test_cycle_rejected(self):
        with pytest.raises(NotATree):
            build_tree([(i, "-") for i in range(1, 4)], [(1, 2), (2, 3), (3, 1)])

    def test_duplicate_id(self):
        with pytest.raises(DuplicateId):
            build_tree([(1, "-"), (1, "+")], [])

    def test_empty(self):
        with pytest.raises(EmptyTree):
            build_tree([], [])

    def test_all_phantom_rejected(self):
        with pytest.raises(EmptyTree):
            build_tree([(1, "-", True)], [])

    def test_json_roundtrip(self, p3mix):
        assert tree_from_json(tree_to_json(p3mix)) == p3mix


class TestPathsComponents:
    def test_path(self, tripod_neg):
        assert tripod_neg.path_between(1, 3) == (1, 2, 3)
        assert tripod_neg.path_between(2, 2) == (2,)

    def test_components(self, tripod_neg):
        comps = tripod_neg.components({2})
        assert sorted(sorted(c) for c in comps) == [[1], [3], [4]]

    def test_component_containing(self, path4_neg):
        assert path4_neg.component_containing({3}, 1) == frozenset({1, 2})


class TestTransform:
    def test_flip_all(self, tripod_neg):
        flipped = transform(tripod_neg, FlipAllSigns())
        assert flipped.positives == frozenset({1, 2, 3, 4})
        assert transform(flipped, FlipAllSigns()) == tripod_neg

    def test_flip_leaf_preserves_blocks(self, tripod_neg):
        from arbora.blocks import enumerate_blocks

        flipped = transform(tripod_neg, FlipLeafSign(1))
        assert flipped.sign_of(1) is Sign.POSITIVE
        assert enumerate_blocks(flipped) == enumerate_blocks(tripod_neg)
        assert transform(flipped, FlipLeafSign(1)) == tripod_neg

    def test_flip_leaf_requires_leaf(self, tripod_neg):
        with pytest.raises(PreconditionViolated):
            transform(tripod_neg, FlipLeafSign(2))

    def test_switch_adjacent(self, p3mix):
        switched = transform(p3mix, SwitchAdjacent(1, 2))
        assert [switched.sign_of(i).value for i in (1, 2, 3)] == ["+", "-", "-"]

    def test_switch_requires_opposite_signs(self, tripod_neg):
        with pytest.raises(PreconditionViolated):
            transform(tripod_neg, SwitchAdjacent(1, 2))

    def test_switch_requires_low_degree(self, tripod_pos):
        with pytest.raises(PreconditionViolated):
            transform(tripod_pos, SwitchAdjacent(1, 2))

    def test_relabel(self, p3mix):
        relabeled = transform(p3mix, Relabel.of({1: 3, 2: 2, 3: 1}))
        assert relabeled.sign_of(3) is Sign.NEGATIVE
        assert relabeled.sign_of(2) is Sign.POSITIVE

    @given(signed_trees(max_nu=6))
    def test_flip_all_involution(self, tree):
        assert transform(transform(tree, FlipAllSigns()), FlipAllSigns()) == tree


class TestIsomorphism:
    def test_exact_identity(self, tripod_neg):
        assert signed_isomorphism(tripod_neg, tripod_neg, "exact") is not None

    def test_anti_with_global_flip(self, tripod_neg):
        flipped = transform(tripod_neg, FlipAllSigns())
        assert signed_isomorphism(tripod_neg, flipped, "anti") is not None

    def test_tripods_not_isomorphic_up_to_leaves(self, tripod_neg, tripod_pos):
        assert signed_isomorphism(tripod_neg, tripod_pos, "up_to_leaf_signs") is None

    def test_tripods_anti_isomorphic_up_to_leaves(self, tripod_neg, tripod_pos):
        assert (
            signed_isomorphism(tripod_neg, tripod_pos, "anti_up_to_leaf_signs")
            is not None
        )

    def test_mapping_preserves_edges(self, htree_eq):
        mapping = signed_isomorphism(htree_eq, htree_eq, "exact")
        for u, v in htree_eq.edges:
            assert htree_eq.has_edge(mapping[u], mapping[v])

    @given(signed_trees(max_nu=5))
    @settings(max_examples=40)
    def test_exact_self_isomorphism(self, tree):
        assert signed_isomorphism(tree, tree, "exact") is not None


class TestPhantomSplit:
    def test_singleton_block(self, tripod_neg):
        kept, dropped = phantom_split(tripod_neg, {1})
        assert kept.standard == (1,)
        assert dropped.standard == (2, 3, 4)
        assert kept.edges == tripod_neg.edges

    def test_p3mix_pair(self, p3mix):
        kept, dropped = phantom_split(p3mix, {1, 3})
        assert kept.standard == (1, 3)
        assert dropped.standard == (2,)

    def test_rejects_non_block(self, tripod_neg):
        from arbora.errors import NotABuildingBlock

        with pytest.raises(NotABuildingBlock):
            phantom_split(tripod_neg, {1, 3})


class TestBoundaryWalk:
    def test_p3_all_negative(self):
        tree = build_tree([(1, "-"), (2, "-"), (3, "-")], [(1, 2), (2, 3)])
        assert boundary_neighbors(tree, 2) == frozenset({1, 3})
        assert boundary_neighbors(tree, 1) == frozenset({2})

    def test_p3mix_root_one(self, p3mix):
        assert boundary_neighbors(p3mix, 1) == frozenset({2, 3})

    def test_single_vertex(self):
        tree = build_tree([(1, "-")], [])
        assert boundary_neighbors(tree, 1) == frozenset()

    def test_phantom_root_rejected(self, tripod_neg):
        kept, _ = phantom_split(tripod_neg, {1})
        with pytest.raises(RootIsPhantom):
            boundary_neighbors(kept, 2)

    def test_graph_connected(self, htree_diff):
        graph = boundary_graph(htree_diff)
        seen = {graph.nodes[0]}
        stack = [graph.nodes[0]]
        while stack:
            node = stack.pop()
            for nxt in graph.adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert len(seen) == len(graph.nodes)

    @given(signed_trees(max_nu=6))
    @settings(max_examples=40)
    def test_all_negative_walk_is_adjacency(self, tree):
        from arbora.trees import FlipAllSigns, transform

        negatives_only = tree
        if tree.positives:
            specs = [(v, "-") for v in tree.standard]
            negatives_only = build_tree(specs, tree.edges)
        for root in negatives_only.standard:
            assert boundary_neighbors(negatives_only, root) == frozenset(
                negatives_only.neighbors(root)
            )

    @given(signed_trees(max_nu=6))
    @settings(max_examples=40)
    def test_walk_stays_standard(self, tree):
        for root in tree.standard:
            reached = boundary_neighbors(tree, root)
            assert root not in reached
            assert reached <= tree.standard_set
