"""Brute-force verifiers for the expected-score results.

These are deliberately simple (grids, sampling, explicit hulls) so that they
stay independent of the code paths they check.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize

from .canonical import (
    CanonicalCurve,
    canonicalize,
    dominates,
    join,
    perfect_curve,
    shared_prior,
    upper_hull,
)
from .core import SCORE_TOL, Distribution, InfoSystem, ScoreKind, ScoreRule, _vec, g_cross, g_value
from .errors import DimensionMismatch
from .generators import random_curve

COROLLARY_TOL = 1e-6
DECOMPOSITION_TOL = 1e-12
CONCLUSION_TOL = 1e-9


@functools.lru_cache(maxsize=16)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All non-negative integer vectors of length ``parts`` summing to ``total``, lexicographic."""
    # stars and bars: lexicographic bar positions give lexicographic compositions
    n_bars = parts - 1
    count = math.comb(total + n_bars, n_bars)
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(total + n_bars), n_bars)),
        dtype=np.int32,
        count=count * n_bars,
    ).reshape(count, n_bars)
    edges = np.column_stack(
        [np.full(count, -1, dtype=np.int32), bars, np.full(count, total + n_bars, dtype=np.int32)]
    )
    out = np.diff(edges, axis=1) - 1
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SimplexGrid:
    """Every point of the simplex whose coordinates are multiples of 1/resolution.

    ``points`` is an (N, dimension) array rather than a list of Distribution
    objects; at resolution 200 in four dimensions N is about 1.4 million.
    """

    dimension: int
    resolution: int

    @property
    def points(self) -> np.ndarray:
        return _compositions(self.resolution, self.dimension) / self.resolution

    def __len__(self) -> int:
        return len(_compositions(self.resolution, self.dimension))


def _vertex_matrix(K_vertices) -> np.ndarray:
    V = [_vec(v) for v in K_vertices]
    if not V:
        raise ValueError("K needs at least one vertex")
    if len({v.shape for v in V}) != 1:
        raise DimensionMismatch("K vertices have different dimensions")
    return np.vstack(V)


def _grid_argmin(S: ScoreRule, V: np.ndarray, resolution: int) -> np.ndarray:
    W = SimplexGrid(len(V), resolution).points
    vals = g_value(S, W @ V)
    return W[int(np.argmin(vals))]


def grid_min_g(S: ScoreRule, K_vertices, resolution: int = 200) -> Distribution:
    """Grid approximation to argmin of G over the convex hull of ``K_vertices``.

    Mixture weights range over a ``resolution``-step grid; ties go to the
    lexicographically smallest weight vector.
    """
    V = _vertex_matrix(K_vertices)
    return Distribution(_grid_argmin(S, V, resolution) @ V)


def _polish(S: ScoreRule, V: np.ndarray, w0: np.ndarray) -> np.ndarray:
    k = len(V)
    if k == 1:
        return np.ones(1)
    if S.kind is ScoreKind.DECISION:
        # min_w max_a (U V^T w)_a is a linear program
        A_ub = np.hstack([S.payoff @ V.T, -np.ones((S.payoff.shape[0], 1))])
        res = linprog(
            np.r_[np.zeros(k), 1.0],
            A_ub=A_ub,
            b_ub=np.zeros(S.payoff.shape[0]),
            A_eq=np.r_[np.ones(k), 0.0][None, :],
            b_eq=[1.0],
            bounds=[(0, None)] * k + [(None, None)],
            method="highs",
        )
        return np.clip(res.x[:k], 0, None) / np.clip(res.x[:k], 0, None).sum()

    def f(w):
        return g_value(S, w @ V)

    def grad(w):
        q = w @ V
        if S.kind is ScoreKind.LOGARITHMIC:
            return V @ (np.log(np.maximum(q, 1e-300)) + 1.0)
        return V @ (2.0 * q)

    res = minimize(
        f,
        w0,
        jac=grad,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * k,
        constraints=[{"type": "eq", "fun": lambda w: w.sum() - 1.0, "jac": lambda w: np.ones(k)}],
        options={"ftol": 1e-16, "maxiter": 500},
    )
    w = np.clip(res.x, 0.0, None)
    w /= w.sum()
    return w if f(w) <= f(w0) else w0


def refine_min_g(S: ScoreRule, K_vertices, resolution: int = 200) -> Distribution:
    """Grid minimizer polished by a continuous solver (SLSQP; an LP for decision scores)."""
    V = _vertex_matrix(K_vertices)
    return Distribution(_polish(S, V, _grid_argmin(S, V, resolution)) @ V)


@dataclass(frozen=True)
class CorollaryReport:
    minimizer: np.ndarray
    grid_minimizer: np.ndarray
    min_slack: float
    n_checked: int
    tol: float

    @property
    def holds(self) -> bool:
        return self.min_slack >= -self.tol


def corollary_check(
    S: ScoreRule,
    K_vertices,
    resolution: int = 200,
    n_samples: int = 200,
    seed: int = 0,
    tol: float = COROLLARY_TOL,
    refine: bool = True,
) -> CorollaryReport:
    """Check G(P, Q) >= G(Q) for P in K, where Q minimizes G over K.

    P ranges over the vertices of K, Q itself, and ``n_samples`` random
    mixtures. With ``refine`` the grid minimizer is polished first; the raw
    grid point is off the true minimizer by O(1/resolution), which shows up
    directly as negative slack of the same order.
    """
    V = _vertex_matrix(K_vertices)
    w_grid = _grid_argmin(S, V, resolution)
    w = _polish(S, V, w_grid) if refine else w_grid
    Q = w @ V
    rng = np.random.default_rng(seed)
    P = np.vstack([V, Q[None, :], rng.dirichlet(np.ones(len(V)), size=n_samples) @ V])
    slack = g_cross(S, P, Q) - g_value(S, Q)
    return CorollaryReport(Q, w_grid @ V, float(np.min(slack)), len(P), tol)


@dataclass(frozen=True)
class Theorem1Report:
    a_grid: np.ndarray
    decomposition_error: float
    hypothesis_holds: bool
    min_conclusion_slack: float | None
    limit_value: float
    g_cross_at_q: float
    g_q: float

    @property
    def decomposition_exact(self) -> bool:
        return self.decomposition_error <= DECOMPOSITION_TOL

    @property
    def conclusion_holds(self) -> bool | None:
        if self.min_conclusion_slack is None:
            return None
        return self.min_conclusion_slack >= -CONCLUSION_TOL


def _scaled(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    # keeps 0 * (-inf) at 0 for log scores at the segment ends
    with np.errstate(invalid="ignore"):
        return np.where(w == 0, 0.0, w * v)


def theorem1_check(S: ScoreRule, P, Q, a_steps: int = 100) -> Theorem1Report:
    """Walk R = aP + (1-a)Q and check the mixture argument for G(P, Q) >= G(Q).

    The identity G(R) = a G(P,R) + (1-a) G(Q,R) is checked at every grid point.
    If G(R) >= G(Q) along the whole grid, G(P, R) >= G(Q) is checked at every
    a > 0; ``limit_value`` is G(P, R) at the smallest positive a. For
    discontinuous (decision) scores that value is reported, not a limit.
    """
    p, q = _vec(P), _vec(Q)
    if p.shape != q.shape:
        raise DimensionMismatch("P and Q differ in dimension")
    a = np.linspace(0.0, 1.0, a_steps + 1)
    R = a[:, None] * p + (1 - a)[:, None] * q
    g_r = g_value(S, R)
    g_pr = g_cross(S, p, R)
    g_qr = g_cross(S, q, R)
    with np.errstate(invalid="ignore"):
        err = np.abs(g_r - (_scaled(a, g_pr) + _scaled(1 - a, g_qr)))
    err = np.where(np.isinf(g_r) & (g_r == _scaled(a, g_pr) + _scaled(1 - a, g_qr)), 0.0, err)
    g_q = g_value(S, q)
    hyp = bool(np.all(g_r >= g_q - SCORE_TOL))
    slack = float(np.min(g_pr[1:] - g_q)) if hyp and a_steps > 0 else None
    return Theorem1Report(
        a_grid=a,
        decomposition_error=float(np.max(err)),
        hypothesis_holds=hyp,
        min_conclusion_slack=slack,
        limit_value=float(g_pr[1]) if a_steps > 0 else float(g_pr[0]),
        g_cross_at_q=float(g_cross(S, p, q)),
        g_q=float(g_q),
    )


@dataclass(frozen=True)
class LubReport:
    n_checked: int
    violations: int
    upper_bound_violations: int

    @property
    def holds(self) -> bool:
        return self.violations == 0 and self.upper_bound_violations == 0


def common_dominators(
    a: CanonicalCurve, b: CanonicalCurve, n: int, rng: np.random.Generator
) -> list[CanonicalCurve]:
    """Random curves lying on or above both ``a`` and ``b``.

    Odd draws hull a random concave curve with both vertex sets. Even draws
    lift every vertex of a and b by a random amount and add random points
    above the pointwise maximum, then take the hull, so the result need not
    share any vertex with a or b.
    """
    out = []
    for k in range(n):
        if k % 2:
            r = random_curve(rng, int(rng.integers(1, 7)), edge_prob=0.2)
            out.append(CanonicalCurve(upper_hull(np.vstack([r.vertices, a.vertices, b.vertices]))))
            continue
        xs = np.concatenate([a.xs, b.xs, rng.random(int(rng.integers(0, 5)))])
        base = np.maximum(a.value_at(xs), b.value_at(xs))
        lift = np.where(rng.random(len(xs)) < 0.3, 0.0, rng.random(len(xs)) * 0.2)
        ys = np.minimum(base + lift * (1.0 - base), 1.0)
        pts = np.vstack([[0.0, 0.0], [1.0, 1.0], np.column_stack([xs, ys])])
        out.append(CanonicalCurve(upper_hull(pts)))
    return out


def lub_minimality_check(P: InfoSystem, Q: InfoSystem, n_dominators: int = 100, seed: int = 0) -> LubReport:
    """Every common upper bound of C(P) and C(Q) must dominate their join."""
    shared_prior(P, Q)
    a, b = canonicalize(P), canonicalize(Q)
    j = join(a, b)
    rng = np.random.default_rng(seed)
    doms = [perfect_curve(), j] + common_dominators(a, b, n_dominators, rng)
    upper_bad = sum(not (dominates(d, a) and dominates(d, b)) for d in doms)
    bad = sum(not dominates(d, j) for d in doms)
    return LubReport(len(doms), bad, upper_bad)
