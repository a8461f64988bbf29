"""Seeded random instances for property suites and oracle checks."""

from __future__ import annotations

import numpy as np

from .canonical import CanonicalCurve
from .core import InfoSystem, ScoreRule, _default_labels


def random_distribution(rng: np.random.Generator, d: int, alpha: float = 1.0) -> np.ndarray:
    return rng.dirichlet(np.full(d, alpha))


def random_prior(rng: np.random.Generator, d: int = 2, floor: float = 0.05) -> np.ndarray:
    p = floor + (1 - d * floor) * rng.dirichlet(np.ones(d))
    return p / p.sum()


def random_conditionals(
    rng: np.random.Generator, n_hyp: int, n_obs: int, alpha: float = 1.0, zero_prob: float = 0.0
) -> np.ndarray:
    """Row-stochastic P(i|e); with ``zero_prob`` some entries are forced to exactly 0."""
    cond = rng.dirichlet(np.full(n_obs, alpha), size=n_hyp)
    if zero_prob > 0 and n_obs > 1:
        mask = rng.random(cond.shape) < zero_prob
        for e in range(n_hyp):
            if mask[e].all():
                mask[e, rng.integers(n_obs)] = False
        cond = np.where(mask, 0.0, cond)
        cond /= cond.sum(axis=1, keepdims=True)
    return cond


def random_is(
    rng: np.random.Generator,
    n_hyp: int,
    n_obs: int,
    prior=None,
    alpha: float = 1.0,
    zero_prob: float = 0.0,
) -> InfoSystem:
    pr = random_prior(rng, n_hyp) if prior is None else np.asarray(prior, dtype=float)
    cond = random_conditionals(rng, n_hyp, n_obs, alpha, zero_prob)
    return InfoSystem(_default_labels("h", n_hyp), _default_labels("o", n_obs), pr[:, None] * cond)


def random_pair(
    rng: np.random.Generator, n_hyp: int = 2, obs_range: tuple[int, int] = (2, 8), **kwargs
) -> tuple[InfoSystem, InfoSystem]:
    """Two systems on a shared prior with independently drawn observation counts."""
    pr = random_prior(rng, n_hyp)
    lo, hi = obs_range
    return (
        random_is(rng, n_hyp, int(rng.integers(lo, hi + 1)), pr, **kwargs),
        random_is(rng, n_hyp, int(rng.integers(lo, hi + 1)), pr, **kwargs),
    )


def random_stochastic(rng: np.random.Generator, m: int, n: int, alpha: float = 1.0) -> np.ndarray:
    return rng.dirichlet(np.full(n, alpha), size=m)


def garble(P: InfoSystem, M: np.ndarray) -> InfoSystem:
    """Post-process P's observations through the row-stochastic matrix M."""
    return InfoSystem(P.hypothesis_labels, _default_labels("g", M.shape[1]), P.joint @ M)


def random_curve(rng: np.random.Generator, n_segments: int, edge_prob: float = 0.0) -> CanonicalCurve:
    """Concave curve from sorted random likelihood steps.

    With probability ``edge_prob`` each, the first segment is made vertical
    (a conclusive observation for e) and the last horizontal.
    """
    dx = rng.dirichlet(np.ones(n_segments))
    dy = rng.dirichlet(np.ones(n_segments))
    order = np.argsort(-dy / dx, kind="stable")
    dx, dy = dx[order], dy[order]
    if n_segments > 1 and rng.random() < edge_prob:
        dx[0] = 0.0
        dx /= dx.sum()
    if n_segments > 2 and rng.random() < edge_prob:
        dy[-1] = 0.0
        dy /= dy.sum()
    pts = np.vstack([[0.0, 0.0], np.column_stack([np.cumsum(dx), np.cumsum(dy)])])
    return CanonicalCurve(pts)


def random_decision_score(rng: np.random.Generator, n_hyp: int, n_actions: int | None = None) -> ScoreRule:
    if n_actions is None:
        n_actions = int(rng.integers(2, 5))
    return ScoreRule.decision(rng.uniform(-1.0, 1.0, size=(n_actions, n_hyp)))
