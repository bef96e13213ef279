import random
from collections import deque
from copy import deepcopy

import pytest

from roadmatch.errors import ConfigurationError, InternalError
from roadmatch.generator import gen_irregular_grid, perturb, score_against_ground_truth
from roadmatch.graph import verify_conformal
from roadmatch.labeling import canonical_start_rotations, label_nodes
from roadmatch.matcher import MatchState, match, process_nodes, run_trial
from roadmatch.oracle import brute_force_max_conformal
from roadmatch.seed_index import build_seed_index
from roadmatch.cli import format_matching

from conftest import figure_star, path_graph, random_graph


def make_state_and_index(g1, g2, k=2, bound=10**6):
    mt1, _ = label_nodes(g1, k)
    mt2, _ = label_nodes(g2, k)
    idx = build_seed_index(mt1, mt2, bound)
    return MatchState(g1, g2), idx


def state_fingerprint(state, idx):
    return (
        tuple(state.matched1),
        tuple(state.matched2),
        tuple(state.total),
        idx.snapshot(),
    )


class TestProcessNodes:
    def test_figure_junction_enqueues_aligned_arms(self):
        g1 = figure_star((1, 4, 3, 2))
        names2 = {1: 1, 5: 2, 6: 3, 7: 4}
        g2 = figure_star(tuple(names2[x] for x in (1, 7, 6, 5)))
        state, idx = make_state_and_index(g1, g2, k=1)
        state.checkpoint()
        q = deque()
        # Centers reached through the matched arm named 1 on both sides.
        process_nodes(
            state, idx, 0, 0, q,
            g1.neighbors_clockwise_from(0, 1),
            g2.neighbors_clockwise_from(0, names2[1]),
        )
        back = {v: k for k, v in names2.items()}
        enqueued = [(v1, back[v2]) for v1, v2, _, _ in q]
        assert enqueued == [(4, 7), (3, 6), (2, 5)]

    def test_degree_one_pair_enqueues_nothing(self):
        g = path_graph(2)
        state, idx = make_state_and_index(g, g, k=1)
        state.checkpoint()
        q = deque()
        process_nodes(state, idx, 1, 1, q, (), ())
        assert not q

    def test_undo_restores_unmatched_and_reindexes(self):
        g = path_graph(3)
        state, idx = make_state_and_index(g, g, k=1)
        before = state_fingerprint(state, idx)
        state.checkpoint()
        q = deque()
        process_nodes(state, idx, 1, 1, q, (0, 2), (0, 2))
        assert state.matched1[1] == 1
        state.abort_trial(idx)
        assert state_fingerprint(state, idx) == before

    def test_matched_vertex_rejected(self):
        g = path_graph(3)
        state, idx = make_state_and_index(g, g, k=1)
        state.checkpoint()
        q = deque()
        process_nodes(state, idx, 1, 1, q, (0, 2), (0, 2))
        with pytest.raises(InternalError):
            process_nodes(state, idx, 1, 1, q, (0, 2), (0, 2))


class TestRunTrial:
    def test_identity_floods_whole_component(self):
        g = gen_irregular_grid(4, 4, 0.2, 3)
        state, idx = make_state_and_index(g, g)
        rot = canonical_start_rotations(g, 0)[0]
        state.checkpoint()
        assert run_trial(state, idx, 0, 0, rot, rot) == g.vertex_count

    def test_immediately_diverging_neighborhoods(self):
        # Equal-degree seeds whose neighbor degrees differ: only the seed
        # pair is matched.
        g1 = path_graph(5)  # vertex 0 has a degree-2 neighbor
        g2 = path_graph(2)  # vertex 0 has a degree-1 neighbor
        state, idx = make_state_and_index(g1, g2, k=0, bound=10**6)
        state.checkpoint()
        assert run_trial(state, idx, 0, 0, (1,), (1,)) == 1

    def test_p3_vs_p4_end_seeds(self):
        g1 = path_graph(3)
        g2 = path_graph(4)
        state, idx = make_state_and_index(g1, g2, k=0)
        state.checkpoint()
        # Ends match, middles match, then degree 1 vs 2 stops the branch.
        assert run_trial(state, idx, 0, 0, (1,), (1,)) == 2


class TestCheckpointCommitAbort:
    def test_abort_restores_exact_state(self):
        g = gen_irregular_grid(3, 4, 0.3, 1)
        state, idx = make_state_and_index(g, g)
        before = state_fingerprint(state, idx)
        state.checkpoint()
        rot = canonical_start_rotations(g, 2)[0]
        run_trial(state, idx, 2, 2, rot, rot)
        state.abort_trial(idx)
        assert state_fingerprint(state, idx) == before

    def test_commit_then_abort_errors(self):
        g = path_graph(2)
        state, idx = make_state_and_index(g, g)
        state.checkpoint()
        state.commit_trial()
        with pytest.raises(InternalError):
            state.abort_trial(idx)

    def test_commit_without_trial_errors(self):
        g = path_graph(2)
        state, _ = make_state_and_index(g, g)
        with pytest.raises(InternalError):
            state.commit_trial()

    def test_double_checkpoint_errors(self):
        g = path_graph(2)
        state, _ = make_state_and_index(g, g)
        state.checkpoint()
        with pytest.raises(InternalError):
            state.checkpoint()

    def test_random_trials_agree_with_snapshot_semantics(self):
        # 100 random trials with random abort/commit, checked against
        # deepcopy-snapshot reference behavior.
        rng = random.Random(42)
        g1 = gen_irregular_grid(4, 5, 0.3, 5)
        g2, _ = perturb(g1, 0.1, 0.05, 0.0, 6)
        state, idx = make_state_and_index(g1, g2, k=1)
        for _ in range(100):
            candidates = [
                (s1, s2)
                for s1 in range(g1.vertex_count)
                for s2 in range(g2.vertex_count)
                if state.matched1[s1] is None
                and state.matched2[s2] is None
                and g1.degree(s1) == g2.degree(s2) == 2
            ]
            if not candidates:
                break
            s1, s2 = rng.choice(candidates)
            r1 = canonical_start_rotations(g1, s1)[0]
            r2 = canonical_start_rotations(g2, s2)[0]
            snap_state, snap_idx = deepcopy((state, idx))
            state.checkpoint()
            run_trial(state, idx, s1, s2, r1, r2)
            if rng.random() < 0.5:
                state.abort_trial(idx)
                assert state_fingerprint(state, idx) == state_fingerprint(
                    snap_state, snap_idx
                )
            else:
                committed = list(state.trial)
                state.commit_trial()
                assert state.total == snap_state.total + committed


class TestMatch:
    def test_self_match_is_complete(self):
        g = gen_irregular_grid(5, 5, 0.2, 8)
        res = match(g, g, k=3, max_product=10**6)
        assert res.stats.matched == g.vertex_count
        assert not res.unmatched1 and not res.unmatched2
        assert all(v == w for v, w in res.pairs)

    def test_disjoint_label_sets_empty_matching(self):
        g1 = path_graph(3)
        g2 = figure_star((1, 2, 3, 4))
        res = match(g1, g2, k=1, max_product=24)
        assert res.pairs == []
        assert res.unmatched1 == [0, 1, 2]
        assert len(res.unmatched2) == 5

    def test_grid_with_deletions_identity_correct(self):
        g = gen_irregular_grid(10, 10, 0.15, 21)
        g2, gt = perturb(g, 0.05, 0.0, 0.0, 22)
        res = match(g, g2, k=3, max_product=10**4, rng_seed=0)
        score = score_against_ground_truth(res.pairs, gt)
        assert score.correct_fraction == 1.0
        assert res.stats.matched >= 0.5 * len(gt)
        ok, why = verify_conformal(g, g2, res.pairs)
        assert ok, why

    def test_matched_count_bounded_by_min_size(self):
        g1 = gen_irregular_grid(3, 4, 0.3, 2)
        g2, _ = perturb(g1, 0.2, 0.0, 0.0, 3)
        res = match(g1, g2, k=2, max_product=10**4)
        assert res.stats.matched <= min(g1.vertex_count, g2.vertex_count)

    def test_output_conformal_and_bounded_by_oracle_on_toy(self):
        g1 = random_graph(random.Random(5), 7, 0.35)
        g2 = random_graph(random.Random(6), 7, 0.35)
        res = match(g1, g2, k=2, max_product=10**4)
        ok, why = verify_conformal(g1, g2, res.pairs)
        assert ok, why
        card, _ = brute_force_max_conformal(g1, g2)
        assert res.stats.matched <= card

    def test_determinism_byte_identical(self):
        g1 = gen_irregular_grid(6, 6, 0.25, 13)
        g2, _ = perturb(g1, 0.08, 0.02, 0.02, 14)
        out1 = format_matching(match(g1, g2, k=2, max_product=10**4, rng_seed=7))
        out2 = format_matching(match(g1, g2, k=2, max_product=10**4, rng_seed=7))
        # Timings differ between runs; compare everything but the time lines.
        strip = lambda s: [l for l in s.splitlines() if "_time_s" not in l]
        assert strip(out1) == strip(out2)

    def test_product_over_bound_raises_retune_guidance(self):
        g = gen_irregular_grid(6, 6, 0.0, 0)  # regular grid, huge products
        with pytest.raises(ConfigurationError, match="tune-k"):
            match(g, g, k=1, max_product=2)
