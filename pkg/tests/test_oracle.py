import math

import numpy as np
import pytest

from islogic import ScoreRule, canonicalize, dominates, g_cross, g_value, null_is, perfect
from islogic.errors import DimensionMismatch
from islogic.generators import random_decision_score, random_pair
from islogic.oracle import (
    SimplexGrid,
    common_dominators,
    corollary_check,
    grid_min_g,
    lub_minimality_check,
    refine_min_g,
    theorem1_check,
)


class TestSimplexGrid:
    @pytest.mark.parametrize("d,n", [(2, 10), (3, 7), (4, 5)])
    def test_count_and_membership(self, d, n):
        g = SimplexGrid(d, n)
        pts = g.points
        assert len(g) == math.comb(n + d - 1, d - 1) == len(pts)
        np.testing.assert_allclose(pts.sum(axis=1), 1.0, atol=1e-12)
        assert pts.min() >= 0
        assert len(np.unique(np.round(pts * n).astype(int), axis=0)) == len(pts)

    def test_lexicographic(self):
        pts = (SimplexGrid(3, 4).points * 4).round().astype(int)
        assert [tuple(p) for p in pts] == sorted(tuple(p) for p in pts)


class TestGridMin:
    def test_full_binary_simplex_log_is_uniform(self):
        q = grid_min_g(ScoreRule.log(), [[1, 0], [0, 1]])
        np.testing.assert_allclose(q.probs, [0.5, 0.5], atol=1e-12)

    def test_singleton(self):
        q = grid_min_g(ScoreRule.quadratic(), [[0.2, 0.3, 0.5]])
        np.testing.assert_allclose(q.probs, [0.2, 0.3, 0.5])

    def test_segment_quadratic(self):
        q = grid_min_g(ScoreRule.quadratic(), [[0.9, 0.1], [0.1, 0.9]])
        np.testing.assert_allclose(q.probs, [0.5, 0.5], atol=1e-12)

    def test_full_simplex_three_dims(self):
        q = refine_min_g(ScoreRule.log(), np.eye(3))
        np.testing.assert_allclose(q.probs, [1 / 3] * 3, atol=1e-6)

    def test_refine_never_worse(self, rng):
        for _ in range(20):
            V = rng.dirichlet(np.ones(3), size=3)
            for S in (ScoreRule.log(), ScoreRule.quadratic()):
                assert g_value(S, refine_min_g(S, V, 50).probs) <= g_value(S, grid_min_g(S, V, 50).probs) + 1e-15

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            grid_min_g(ScoreRule.log(), [[0.5, 0.5], [0.2, 0.3, 0.5]])


class TestCorollary:
    def test_segment_through_uniform(self):
        rep = corollary_check(ScoreRule.log(), [[0.9, 0.1], [0.1, 0.9]])
        assert rep.holds
        np.testing.assert_allclose(rep.minimizer, [0.5, 0.5], atol=1e-9)

    def test_random_polytopes(self, rng):
        for _ in range(10):
            d = int(rng.integers(2, 5))
            V = rng.dirichlet(np.ones(d), size=int(rng.integers(1, 5)))
            for S in (ScoreRule.log(), ScoreRule.quadratic()):
                assert corollary_check(S, V, resolution=60, seed=1).holds

    def test_unrefined_grid_slack_is_grid_sized(self, rng):
        V = rng.dirichlet(np.ones(3), size=3)
        raw = corollary_check(ScoreRule.quadratic(), V, resolution=20, refine=False)
        fine = corollary_check(ScoreRule.quadratic(), V, resolution=20)
        assert fine.min_slack >= raw.min_slack - 1e-15

    def test_decision_score_counterexample(self):
        # G is flat-bottomed and kinked at (0.5, 0.5); the best action there
        # scores 0 when the other hypothesis is true, so P = (0.1, 0.9) loses
        S = ScoreRule.decision(np.eye(2))
        rep = corollary_check(S, [[0.9, 0.1], [0.1, 0.9]])
        np.testing.assert_allclose(rep.minimizer, [0.5, 0.5], atol=1e-9)
        assert g_cross(S, [0.1, 0.9], [0.5, 0.5]) == pytest.approx(0.1)
        assert not rep.holds

    def test_decision_score_interior_minimum_smooth_case(self):
        # if every vertex prefers the same action, G is linear on K and the corollary holds
        S = ScoreRule.decision(np.eye(2))
        assert corollary_check(S, [[0.9, 0.1], [0.7, 0.3]]).holds


class TestTheorem1:
    def test_decomposition_exact_everywhere(self, rng):
        for _ in range(30):
            d = int(rng.integers(2, 5))
            p, q = rng.dirichlet(np.ones(d), size=2)
            for S in (ScoreRule.log(), ScoreRule.quadratic(), random_decision_score(rng, d)):
                assert theorem1_check(S, p, q).decomposition_exact

    def test_minimizer_on_segment(self):
        S = ScoreRule.quadratic()
        rep = theorem1_check(S, [0.9, 0.1], [0.5, 0.5])
        assert rep.hypothesis_holds and rep.conclusion_holds
        assert rep.g_cross_at_q >= rep.g_q

    def test_hypothesis_fails_off_minimizer(self):
        rep = theorem1_check(ScoreRule.quadratic(), [0.5, 0.5], [0.9, 0.1])
        assert not rep.hypothesis_holds
        assert rep.conclusion_holds is None

    def test_log_with_certain_endpoint(self):
        rep = theorem1_check(ScoreRule.log(), [1.0, 0.0], [0.5, 0.5])
        assert rep.decomposition_exact
        assert rep.limit_value == pytest.approx(g_cross(ScoreRule.log(), [1.0, 0.0], [0.505, 0.495]))

    def test_log_infinite_cross_term(self):
        rep = theorem1_check(ScoreRule.log(), [0.5, 0.5], [1.0, 0.0])
        assert rep.decomposition_exact
        assert rep.g_cross_at_q == -math.inf

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            theorem1_check(ScoreRule.log(), [0.5, 0.5], [0.2, 0.3, 0.5])


class TestLub:
    def test_random_pairs(self, rng):
        for k in range(20):
            P, Q = random_pair(rng, obs_range=(2, 6))
            rep = lub_minimality_check(P, Q, n_dominators=40, seed=k)
            assert rep.holds and rep.n_checked == 42

    def test_dominators_dominate_both(self, rng):
        P, Q = random_pair(rng, obs_range=(2, 6))
        a, b = canonicalize(P), canonicalize(Q)
        for d in common_dominators(a, b, 50, rng):
            assert dominates(d, a) and dominates(d, b)

    def test_extreme_pair(self):
        assert lub_minimality_check(perfect([0.5, 0.5]), null_is([0.5, 0.5]), 20).holds
