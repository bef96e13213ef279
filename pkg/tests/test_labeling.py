import random

from hypothesis import given, settings
from hypothesis import strategies as st

from roadmatch.graph import EmbeddedGraph
from roadmatch.labeling import (
    canonical_start_rotations,
    label_nodes,
    lexicographic_bfs,
)

from conftest import cycle_graph, embedded_graphs, path_graph, star_graph


def brute_min_rotations(g, v):
    """Independent enumeration of all cyclic rotations and their degree keys."""
    rot = g.rotation[v]
    d = len(rot)
    options = []
    for i in range(d):
        seq = tuple(rot[(i + j) % d] for j in range(d))
        options.append((tuple(g.degree(u) for u in seq), seq))
    best = min(key for key, _ in options)
    return [seq for key, seq in options if key == best]


class TestCanonicalStartRotations:
    def test_mixed_degrees_single_minimum(self):
        # Center whose neighbor degrees read (3,1,2,1) around the rotation:
        # minimal cyclic key is (1,2,1,3), achieved by exactly one rotation.
        g = EmbeddedGraph(
            (
                (1, 2, 3, 4),  # v=0, neighbor degrees 3,1,2,1
                (0, 5, 6),
                (0,),
                (0, 7),
                (0,),
                (1,),
                (1,),
                (3,),
            )
        )
        rots = canonical_start_rotations(g, 0)
        assert rots == brute_min_rotations(g, 0)
        assert len(rots) == 1
        assert tuple(g.degree(u) for u in rots[0]) == (1, 2, 1, 3)

    def test_all_equal_degrees_gives_every_rotation(self):
        g = star_graph(4)
        assert len(canonical_start_rotations(g, 0)) == 4

    def test_degree_one(self):
        g = path_graph(2)
        assert canonical_start_rotations(g, 0) == [(1,)]

    @given(embedded_graphs(min_vertices=2))
    def test_agrees_with_enumeration(self, g):
        for v in range(g.vertex_count):
            if g.degree(v) >= 1:
                assert canonical_start_rotations(g, v) == brute_min_rotations(g, v)


class TestLexicographicBfs:
    def test_k_zero_is_empty(self):
        assert lexicographic_bfs(path_graph(3), 1, 0) == []

    def test_star_center_k1(self):
        g = star_graph(3)
        order = lexicographic_bfs(g, 0, 1)
        assert sorted(order) == [1, 2, 3]
        assert len(order) == 3

    def test_path_end_k2(self):
        assert lexicographic_bfs(path_graph(3), 0, 2) == [1, 2]

    def test_stops_at_distance_k(self):
        assert lexicographic_bfs(path_graph(5), 0, 2) == [1, 2]

    def test_first_discovery_wins(self):
        g = cycle_graph(4)
        order = lexicographic_bfs(g, 0, 3)
        assert len(order) == len(set(order)) == 3


class TestLabelNodes:
    def test_four_cycle_k1(self):
        table, labels = label_nodes(cycle_graph(4), 1)
        assert labels == [(2, 2, 2)] * 4
        assert table == {(2, 2, 2): [0, 1, 2, 3]}

    def test_path3_k1(self):
        table, labels = label_nodes(path_graph(3), 1)
        assert labels == [(1, 2), (2, 1, 1), (1, 2)]
        assert set(table) == {(1, 2), (2, 1, 1)}

    def test_grid_interior_all_fours(self):
        # 5x5 lattice: the center vertex sees only degree-4 vertices at k=1.
        from roadmatch.generator import gen_irregular_grid

        g = gen_irregular_grid(5, 5, 0.0, 0)
        center = 12
        assert g.degree(center) == 4
        _, labels = label_nodes(g, 1)
        assert labels[center] == (4, 4, 4, 4, 4)

    def test_isolated_vertex(self):
        _, labels = label_nodes(EmbeddedGraph(((),)), 3)
        assert labels == [(0,)]

    def test_sizes_sum_to_n(self):
        g = path_graph(7)
        table, _ = label_nodes(g, 2)
        assert sum(len(v) for v in table.values()) == 7

    @given(embedded_graphs(min_vertices=2), st.integers(0, 3))
    @settings(max_examples=50)
    def test_renumbering_invariance(self, g, k):
        rng = random.Random(17)
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        rotation = [None] * g.vertex_count
        for v, rot in enumerate(g.rotation):
            rotation[perm[v]] = tuple(perm[u] for u in rot)
        h = EmbeddedGraph(tuple(rotation))
        _, lab_g = label_nodes(g, k)
        _, lab_h = label_nodes(h, k)
        assert sorted(lab_g) == sorted(lab_h)

    @given(embedded_graphs(min_vertices=2), st.integers(0, 3))
    @settings(max_examples=50)
    def test_storage_offset_invariance(self, g, k):
        # Cyclically rotating any stored adjacency must not change labels.
        rng = random.Random(3)
        rotation = []
        for rot in g.rotation:
            if rot:
                i = rng.randrange(len(rot))
                rotation.append(rot[i:] + rot[:i])
            else:
                rotation.append(rot)
        h = EmbeddedGraph(tuple(rotation))
        assert label_nodes(g, k)[1] == label_nodes(h, k)[1]

    def test_label_length_nondecreasing_in_k(self):
        from roadmatch.generator import gen_irregular_grid

        g = gen_irregular_grid(5, 6, 0.2, 4)
        prev = None
        for k in range(0, 6):
            _, labels = label_nodes(g, k)
            if prev is not None:
                assert all(len(a) >= len(b) for a, b in zip(labels, prev))
            prev = labels

    def test_same_label_means_same_degree(self):
        g = path_graph(6)
        table, _ = label_nodes(g, 2)
        for lab, verts in table.items():
            assert all(g.degree(v) == lab[0] for v in verts)
