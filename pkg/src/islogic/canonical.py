"""Canonical curves of binary-hypothesis information systems.

For two hypotheses e and not-e, every observation i contributes a likelihood
vector (P(i|e), P(i|not-e)). Sorting these by decreasing likelihood ratio and
accumulating them traces a concave piecewise-linear curve from (0, 0) to
(1, 1), lying on or above the diagonal. Axis convention: x is the cumulative
P(i|not-e), y the cumulative P(i|e).

Only the upper boundary is stored; the diagonal is shared by every curve, so
containment of the enclosed regions reduces to comparing upper boundaries.
Dominance is containment, join is the upper concave envelope of both vertex
sets, and meet is the pointwise minimum.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import Distribution, InfoSystem, _default_labels, _vec, prior
from .errors import DegeneratePrior, LabelMismatch, NotBinary, PriorMismatch

GEOM_TOL = 1e-9
PRIOR_TOL = 1e-9


@dataclass(frozen=True)
class LikelihoodVector:
    p_e: float
    p_not_e: float

    def __post_init__(self) -> None:
        if self.p_e < 0 or self.p_not_e < 0:
            raise ValueError("likelihoods must be non-negative")
        if self.p_e == 0 and self.p_not_e == 0:
            raise ValueError("likelihood vector of a zero-probability observation")


def _height(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """Signed distance of b above the chord a -> c (positive means above)."""
    cx, cy = c[0] - a[0], c[1] - a[1]
    norm = np.hypot(cx, cy)
    if norm == 0.0:
        return 0.0
    return (cx * (b[1] - a[1]) - cy * (b[0] - a[0])) / norm


def upper_hull(points: Iterable[Sequence[float]], tol: float = GEOM_TOL) -> np.ndarray:
    """Upper concave envelope by monotone chain; vertices within ``tol`` of a chord are dropped."""
    pts = np.unique(np.asarray(list(points), dtype=float).reshape(-1, 2), axis=0)
    hull: list[np.ndarray] = []
    for p in pts:
        while len(hull) >= 2 and _height(hull[-2], hull[-1], p) <= tol:
            hull.pop()
        hull.append(p)
    return np.array(hull)


@dataclass(frozen=True, eq=False)
class CanonicalCurve:
    """Concave vertex chain from (0, 0) to (1, 1).

    Collinear and repeated vertices are merged on construction; a chain that
    is not concave (to within ``GEOM_TOL``) is rejected.
    """

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        if len(v) < 2:
            raise ValueError("a curve needs at least two vertices")
        if np.abs(v[0]).max() > GEOM_TOL or np.abs(v[-1] - 1.0).max() > GEOM_TOL:
            raise ValueError(f"curve must run from (0,0) to (1,1), got {v[0]} .. {v[-1]}")
        if np.any(np.diff(v[:, 0]) < -GEOM_TOL) or np.any(np.diff(v[:, 1]) < -GEOM_TOL):
            raise ValueError("curve coordinates must be non-decreasing")
        v[0], v[-1] = (0.0, 0.0), (1.0, 1.0)
        # absorb rounding from cumulative sums
        v = np.maximum.accumulate(np.clip(v, 0.0, 1.0), axis=0)
        step = np.abs(np.diff(v, axis=0)).max(axis=1)
        chain = v[np.concatenate([[True], step > 0])]
        for k in range(1, len(chain) - 1):
            if _height(chain[k - 1], chain[k], chain[k + 1]) < -GEOM_TOL:
                raise ValueError(f"vertex chain is not concave at {chain[k]}")
        hull = upper_hull(chain)
        if np.any(hull[:, 1] < hull[:, 0] - GEOM_TOL):
            raise ValueError("curve dips below the diagonal")
        hull.setflags(write=False)
        object.__setattr__(self, "vertices", hull)

    @property
    def xs(self) -> np.ndarray:
        return self.vertices[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.vertices[:, 1]

    def __len__(self) -> int:
        return len(self.vertices)

    def segments(self) -> np.ndarray:
        """Per-segment (dx, dy), i.e. (P(i|not-e), P(i|e)) for each merged observation."""
        return np.diff(self.vertices, axis=0)

    def slopes(self) -> np.ndarray:
        d = self.segments()
        with np.errstate(divide="ignore"):
            return np.where(d[:, 0] > 0, d[:, 1] / np.where(d[:, 0] > 0, d[:, 0], 1.0), np.inf)

    def value_at(self, x):
        return _interp_upper(self.vertices, x)

    def to_csv(self) -> str:
        lines = ["x,y"] + [f"{x:.12g},{y:.12g}" for x, y in self.vertices]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        pts = ", ".join(f"({x:.6g}, {y:.6g})" for x, y in self.vertices)
        return f"CanonicalCurve([{pts}])"


def _interp_upper(vertices: np.ndarray, x):
    # only the first segment can be vertical; at x = 0 take its upper end
    if len(vertices) > 1 and vertices[1, 0] == vertices[0, 0]:
        vertices = vertices[1:]
    return np.interp(x, vertices[:, 0], vertices[:, 1])


def diagonal() -> CanonicalCurve:
    return CanonicalCurve(np.array([[0.0, 0.0], [1.0, 1.0]]))


def perfect_curve() -> CanonicalCurve:
    return CanonicalCurve(np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]]))


def _require_binary(P: InfoSystem) -> None:
    if P.n_hypotheses != 2:
        raise NotBinary(f"expected 2 hypotheses, got {P.n_hypotheses}")


def likelihood_vectors(P: InfoSystem) -> list[LikelihoodVector]:
    """t-vectors of the positive-probability observations, in input order."""
    _require_binary(P)
    pr = prior(P).probs
    cond = P.joint / pr[:, None]
    keep = P.joint.sum(axis=0) > 0
    return [LikelihoodVector(float(a), float(b)) for a, b in zip(cond[0, keep], cond[1, keep])]


def _by_decreasing_ratio(s: LikelihoodVector, t: LikelihoodVector) -> int:
    lhs, rhs = s.p_e * t.p_not_e, t.p_e * s.p_not_e
    return -1 if lhs > rhs else (1 if lhs < rhs else 0)


def canonicalize(P: InfoSystem) -> CanonicalCurve:
    """C(P): cumulative likelihood vectors sorted by decreasing likelihood ratio."""
    ts = sorted(likelihood_vectors(P), key=functools.cmp_to_key(_by_decreasing_ratio))
    steps = np.array([[t.p_not_e, t.p_e] for t in ts])
    pts = np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])
    pts[-1] = (1.0, 1.0)
    return CanonicalCurve(pts)


def _check_prior(p, n: int | None = 2) -> np.ndarray:
    pr = Distribution(_vec(p)).probs
    if n is not None and pr.size != n:
        raise NotBinary(f"expected a prior over {n} hypotheses, got {pr.size}")
    if np.any(pr <= 0):
        raise DegeneratePrior(f"prior {pr.tolist()} is not strictly positive")
    return pr


def reconstruct(
    c: CanonicalCurve, prior_dist, hypothesis_labels: Sequence[str] | None = None
) -> InfoSystem:
    """Binary IS with one observation per curve segment (labels s1..sk)."""
    pr = _check_prior(prior_dist)
    d = c.segments()
    joint = np.vstack([pr[0] * d[:, 1], pr[1] * d[:, 0]])
    labels = tuple(hypothesis_labels) if hypothesis_labels is not None else _default_labels("h", 2)
    return InfoSystem(labels, _default_labels("s", len(d)), joint)


def join(a: CanonicalCurve, b: CanonicalCurve) -> CanonicalCurve:
    """P + Q: upper concave envelope of both vertex sets."""
    return CanonicalCurve(upper_hull(np.vstack([a.vertices, b.vertices])))


def _lines(c: CanonicalCurve) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    v = c.vertices
    d = np.diff(v, axis=0)
    ok = d[:, 0] > 0
    return v[:-1][ok, 0], v[:-1][ok, 1], d[ok, 1] / d[ok, 0]


def meet(a: CanonicalCurve, b: CanonicalCurve) -> CanonicalCurve:
    """P . Q: pointwise minimum of the two boundaries."""
    ax, ay, as_ = _lines(a)
    bx, by, bs = _lines(b)
    S, T = np.meshgrid(as_, bs, indexing="ij")
    num = (by[None, :] - bs[None, :] * bx[None, :]) - (ay[:, None] - as_[:, None] * ax[:, None])
    den = S - T
    with np.errstate(divide="ignore", invalid="ignore"):
        cross_x = np.where(den != 0, num / np.where(den != 0, den, 1.0), np.nan).ravel()
    cross_x = cross_x[np.isfinite(cross_x) & (cross_x > 0) & (cross_x < 1)]
    xs = np.unique(np.concatenate([a.xs, b.xs, cross_x]))
    ys = np.minimum(a.value_at(xs), b.value_at(xs))
    pts = np.vstack([[0.0, 0.0], np.column_stack([xs, ys])])
    return CanonicalCurve(upper_hull(pts))


def dominates(a: CanonicalCurve, b: CanonicalCurve, tol: float = GEOM_TOL) -> bool:
    """True iff every vertex of ``b`` lies on or below ``a``'s boundary."""
    return bool(np.all(b.ys <= a.value_at(b.xs) + tol))


def curve_equal(a: CanonicalCurve, b: CanonicalCurve, tol: float = GEOM_TOL) -> bool:
    return dominates(a, b, tol) and dominates(b, a, tol)


def perfect(prior_dist, hypothesis_labels: Sequence[str] | None = None) -> InfoSystem:
    """P*: one observation per hypothesis, each revealing it with certainty."""
    pr = _check_prior(prior_dist, n=None)
    labels = tuple(hypothesis_labels) if hypothesis_labels is not None else _default_labels("h", pr.size)
    return InfoSystem(labels, _default_labels("o", pr.size), np.diag(pr))


def null_is(prior_dist, n_obs: int = 1, hypothesis_labels: Sequence[str] | None = None) -> InfoSystem:
    """P0: prior times a uniform observation marginal; every posterior is the prior."""
    pr = _check_prior(prior_dist, n=None)
    labels = tuple(hypothesis_labels) if hypothesis_labels is not None else _default_labels("h", pr.size)
    joint = np.outer(pr, np.full(n_obs, 1.0 / n_obs))
    return InfoSystem(labels, _default_labels("o", n_obs), joint)


def shared_prior(P: InfoSystem, Q: InfoSystem, binary: bool = True) -> np.ndarray:
    """Check two systems describe the same uncertain event; return P's prior."""
    if binary:
        _require_binary(P)
        _require_binary(Q)
    if P.hypothesis_labels != Q.hypothesis_labels:
        raise LabelMismatch(f"hypothesis labels {P.hypothesis_labels} vs {Q.hypothesis_labels}")
    p, q = prior(P).probs, prior(Q).probs
    if np.abs(p - q).max() > PRIOR_TOL:
        raise PriorMismatch(f"priors {p.tolist()} and {q.tolist()} differ")
    return p
