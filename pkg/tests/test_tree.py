"""Tree structure, enumeration, and graph6 round trips."""

import pytest

from oracles import count_free_trees_bruteforce
from treemult.tree import (
    LimitExceededError,
    MalformedGraph6Error,
    NotATreeError,
    Tree,
    canonical_code,
    canonical_tree,
    centroids,
    delete_vertex,
    emit_graph6,
    enumerate_trees,
    is_path,
    load_edge_json,
    major_count,
    parse_edge_text,
    parse_graph6,
    path_tree,
    pendant_count,
    pendant_vertices,
    spider_tree,
    star_tree,
)


class TestConstruction:
    def test_single_vertex(self):
        t = Tree.from_edges(1, [])
        assert t.n == 1 and t.edges == []

    def test_rejects_cycle(self):
        with pytest.raises(NotATreeError):
            Tree.from_edges(3, [(0, 1), (1, 2), (2, 0)])

    def test_rejects_disconnected(self):
        with pytest.raises(NotATreeError):
            Tree.from_edges(4, [(0, 1), (0, 1), (2, 3)])

    def test_rejects_wrong_edge_count(self):
        with pytest.raises(NotATreeError):
            Tree.from_edges(3, [(0, 1)])

    def test_adjacency_sorted_and_symmetric(self):
        t = Tree.from_edges(4, [(2, 0), (0, 1), (3, 0)])
        assert t.adj[0] == (1, 2, 3)
        for u in range(4):
            for v in t.adj[u]:
                assert u in t.adj[v]


class TestCounts:
    def test_single_vertex_pendant_convention(self):
        assert pendant_count(Tree.from_edges(1, [])) == 2

    def test_path_pendants(self):
        assert pendant_count(path_tree(5)) == 2
        assert pendant_count(path_tree(2)) == 2

    def test_star_pendants(self):
        assert pendant_count(star_tree(3)) == 3

    def test_major_counts(self):
        assert major_count(path_tree(7)) == 0
        assert major_count(star_tree(3)) == 1
        # two stars joined center-to-center: both centers reach degree 4
        t = Tree.from_edges(
            8, [(0, 2), (0, 3), (0, 4), (0, 1), (1, 5), (1, 6), (1, 7)]
        )
        assert t.degree(0) == 4 and t.degree(1) == 4
        assert major_count(t) == 2

    def test_pendant_major_degree_identity(self):
        for n in range(2, 10):
            for t in enumerate_trees(n):
                excess = sum(t.degree(v) - 2 for v in range(t.n) if t.degree(v) >= 3)
                assert pendant_count(t) == 2 + excess

    def test_pendant_count_properties(self):
        for n in range(1, 11):
            for t in enumerate_trees(n):
                p = pendant_count(t)
                assert p >= 2
                assert (p == 2) == is_path(t)
                assert (major_count(t) == 0) == (p == 2)


class TestDeleteVertex:
    def test_path_middle(self):
        dec = delete_vertex(path_tree(3), 1)
        assert len(dec.components) == 2
        for comp in dec.components:
            assert comp.tree.n == 1 and comp.attach == 0
        assert sorted(c.parent_ids[0] for c in dec.components) == [0, 2]

    def test_star_center(self):
        dec = delete_vertex(star_tree(3), 0)
        assert len(dec.components) == 3
        assert all(c.tree.n == 1 for c in dec.components)

    def test_spider_center(self):
        t = spider_tree(2, 2, 2)
        dec = delete_vertex(t, 0)
        assert len(dec.components) == 3
        for comp in dec.components:
            assert comp.tree.n == 2
            assert comp.tree.degree(comp.attach) == 1

    def test_partition_and_backmap(self):
        for n in range(2, 9):
            for t in enumerate_trees(n):
                for v in range(t.n):
                    dec = delete_vertex(t, v)
                    assert len(dec.components) == t.degree(v)
                    assert sum(c.tree.n for c in dec.components) == t.n - 1
                    ids = [u for c in dec.components for u in c.parent_ids]
                    assert sorted(ids + [v]) == list(range(t.n))
                    for c in dec.components:
                        assert c.parent_ids[c.attach] in t.adj[v]


class TestEnumeration:
    def test_tiny_counts(self):
        assert sum(1 for _ in enumerate_trees(1)) == 1
        assert sum(1 for _ in enumerate_trees(4)) == 2

    @pytest.mark.parametrize("n", range(1, 9))
    def test_counts_match_prufer_oracle(self, n):
        ours = sum(1 for _ in enumerate_trees(n))
        assert ours == count_free_trees_bruteforce(n)

    def test_no_isomorphic_duplicates(self):
        for n in range(1, 11):
            codes = [canonical_code(t) for t in enumerate_trees(n)]
            assert len(codes) == len(set(codes))

    def test_all_valid_trees(self):
        for t in enumerate_trees(9):
            assert t.n == 9
            assert len(t.edges) == 8

    def test_limit(self):
        with pytest.raises(LimitExceededError):
            next(enumerate_trees(21))
        with pytest.raises(LimitExceededError):
            next(enumerate_trees(6, limit=5))

    def test_deterministic_order(self):
        first = [emit_graph6(t) for t in enumerate_trees(8)]
        second = [emit_graph6(t) for t in enumerate_trees(8)]
        assert first == second


class TestCanonical:
    def test_relabeling_invariance(self):
        a = Tree.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        b = Tree.from_edges(4, [(3, 1), (3, 2), (3, 0)])
        assert canonical_code(a) == canonical_code(b)
        assert canonical_tree(a) == canonical_tree(b)

    def test_distinguishes_path_and_star(self):
        assert canonical_code(path_tree(4)) != canonical_code(star_tree(3))

    def test_centroids(self):
        assert centroids(path_tree(5)) == [2]
        assert centroids(path_tree(4)) == [1, 2]
        assert centroids(star_tree(5)) == [0]

    def test_pendant_vertices_single(self):
        assert pendant_vertices(Tree.from_edges(1, [])) == [0]


class TestGraph6:
    def test_single_vertex(self):
        assert emit_graph6(Tree.from_edges(1, [])) == "@"

    def test_round_trip_small(self):
        t = path_tree(3)
        back = parse_graph6(emit_graph6(t))
        assert canonical_code(back) == canonical_code(t)

    def test_round_trip_all_small_trees(self):
        for n in range(1, 11):
            for t in enumerate_trees(n):
                assert canonical_code(parse_graph6(emit_graph6(t))) == canonical_code(t)

    def test_emit_is_isomorphism_invariant(self):
        a = Tree.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        b = Tree.from_edges(5, [(4, 2), (2, 0), (0, 1), (1, 3)])
        assert emit_graph6(a) == emit_graph6(b)

    def test_cycle_rejected(self):
        # C4: edges 01, 12, 23, 03 -> bits x(0,1)=1 x(0,2)=0 x(1,2)=1
        # x(0,3)=1 x(1,3)=0 x(2,3)=1 -> 101101, padded: "Cr"
        cycle = chr(4 + 63) + chr(0b101101 + 63)
        with pytest.raises(NotATreeError):
            parse_graph6(cycle)

    def test_malformed_rejected(self):
        with pytest.raises(MalformedGraph6Error):
            parse_graph6("")
        with pytest.raises(MalformedGraph6Error):
            parse_graph6("D")  # truncated payload
        with pytest.raises(MalformedGraph6Error):
            parse_graph6("B\x1f")  # byte below 63

    def test_empty_graph_rejected(self):
        with pytest.raises(NotATreeError):
            parse_graph6("?")  # n = 0

    def test_header_accepted(self):
        t = path_tree(4)
        assert canonical_code(parse_graph6(">>graph6<<" + emit_graph6(t))) == canonical_code(t)


class TestTextFormats:
    def test_edge_text(self):
        t = parse_edge_text("0-1,0-2,0-3")
        assert canonical_code(t) == canonical_code(star_tree(3))

    def test_edge_text_rejects_cycles(self):
        with pytest.raises(NotATreeError):
            parse_edge_text("0-1,1-2,2-0")

    def test_json_round_trip(self):
        import json

        t = spider_tree(2, 1, 1)
        back = load_edge_json(json.dumps(t.to_json_dict()))
        assert back == t

    def test_json_rejects_garbage(self):
        with pytest.raises(NotATreeError):
            load_edge_json("{not json")
        with pytest.raises(NotATreeError):
            load_edge_json('{"n": 3, "edges": [[0, 1]]}')
