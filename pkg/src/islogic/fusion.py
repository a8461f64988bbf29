"""Minimal composition of two information systems and its value guarantee.

``fuse`` builds P + Q, the least informative binary system that is at least
as informative as both inputs. Any actual joint composition R of the two
sources (a coupling of their per-hypothesis observation distributions)
dominates P + Q, so using P + Q in place of the unknown R never promises
more than it delivers: H(R, P+Q) >= H(P+Q) >= max(H(P), H(Q)).

The multi-hypothesis helpers (garbling feasibility, fixed-score ranking,
minimal dominators over a candidate set) work for any number of hypotheses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .canonical import canonicalize, join, reconstruct, shared_prior
from .core import (
    PROB_TOL,
    InfoSystem,
    ScoreRule,
    _posterior_rows,
    cross_matrix,
    g_cross,
    h_value,
)
from .errors import LabelMismatch, ValidationError

GUARANTEE_TOL = 1e-9
GARBLING_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Coupling:
    """A compatible composition R(e, i, j) of two systems P (over i) and Q (over j)."""

    joint: np.ndarray
    hypothesis_labels: tuple[str, ...]
    p_labels: tuple[str, ...]
    q_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        R = np.array(self.joint, dtype=float)
        if R.ndim != 3 or R.shape != (len(self.hypothesis_labels), len(self.p_labels), len(self.q_labels)):
            raise ValidationError(f"coupling shape {R.shape} does not match its labels")
        if np.any(R < 0):
            raise ValidationError("negative coupling entry")
        if abs(R.sum() - 1.0) > PROB_TOL:
            raise ValidationError(f"coupling sums to {R.sum()!r}")
        R.setflags(write=False)
        object.__setattr__(self, "joint", R)

    def p_joint(self) -> np.ndarray:
        return self.joint.sum(axis=2)

    def q_joint(self) -> np.ndarray:
        return self.joint.sum(axis=1)

    def is_compatible(self, P: InfoSystem, Q: InfoSystem, tol: float = PROB_TOL) -> bool:
        return (
            self.p_joint().shape == P.joint.shape
            and self.q_joint().shape == Q.joint.shape
            and np.abs(self.p_joint() - P.joint).max() <= tol
            and np.abs(self.q_joint() - Q.joint).max() <= tol
        )


def fuse(P: InfoSystem, Q: InfoSystem) -> InfoSystem:
    """P + Q as an information system on synthetic observations s1..sk."""
    pr = shared_prior(P, Q)
    return reconstruct(join(canonicalize(P), canonicalize(Q)), pr, P.hypothesis_labels)


def _northwest_corner(rows, cols) -> list[tuple[int, int, float]]:
    """Northwest-corner fill as (row, col, mass) triples; plain floats, the inputs are tiny."""
    r, c = list(rows), list(cols)
    out = []
    i = j = 0
    while i < len(r) and j < len(c):
        v = min(r[i], c[j])
        out.append((i, j, v))
        r[i] -= v
        c[j] -= v
        if r[i] <= c[j]:
            i += 1
        else:
            j += 1
    return out


def _orderings(m: int, n: int, budget: int, rng: np.random.Generator):
    if math.factorial(m) * math.factorial(n) <= budget:
        yield from itertools.product(itertools.permutations(range(m)), itertools.permutations(range(n)))
        return
    yield tuple(range(m)), tuple(range(n))
    yield tuple(range(m)), tuple(reversed(range(n)))
    for _ in range(budget - 2):
        yield tuple(rng.permutation(m)), tuple(rng.permutation(n))


def sample_couplings(
    P: InfoSystem, Q: InfoSystem, n: int, seed: int = 0, max_orderings: int = 5040
) -> list[Coupling]:
    """``n`` members of the compatible-composition set K.

    Order: the independence coupling; then extreme couplings from northwest-
    corner fills (the same row/column ordering applied to every hypothesis);
    then seeded fillers that alternate between independently chosen
    per-hypothesis extremes and random mixtures of them.
    """
    if n < 1:
        return []
    pr = shared_prior(P, Q, binary=False)
    cp = P.joint / pr[:, None]
    cq = Q.joint / pr[:, None]
    rng = np.random.default_rng(seed)
    labels = (P.hypothesis_labels, P.observation_labels, Q.observation_labels)

    def make(blocks) -> Coupling:
        return Coupling(pr[:, None, None] * np.stack(blocks), *labels)

    out = [make([np.outer(cp[e], cq[e]) for e in range(len(pr))])]
    per_hyp: list[dict[tuple, np.ndarray]] = [{} for _ in pr]
    seen: set[tuple] = set()
    extremes = []
    shape = (P.n_observations, Q.n_observations)
    cp_rows, cq_rows = cp.tolist(), cq.tolist()
    for sr, sc in _orderings(*shape, max_orderings, rng):
        fills = []
        for e in range(len(pr)):
            nw = [(sr[i], sc[j], v) for i, j, v in _northwest_corner([cp_rows[e][i] for i in sr], [cq_rows[e][j] for j in sc])]
            # keyed by the rounded matrix, independent of fill order
            cells = tuple(sorted((i, j, round(v, 12)) for i, j, v in nw if round(v, 12) != 0))
            fills.append(cells)
            if cells not in per_hyp[e]:
                x = np.zeros(shape)
                for i, j, v in nw:
                    x[i, j] = v
                per_hyp[e][cells] = x
        key = tuple(fills)
        if key not in seen:
            seen.add(key)
            extremes.append([per_hyp[e][cells] for e, cells in enumerate(fills)])
    out += [make(b) for b in extremes[: n - 1]]

    vertices = [list(d.values()) for d in per_hyp]
    for k in range(n - len(out)):
        blocks = []
        for V in vertices:
            if k % 2 == 0:
                blocks.append(V[rng.integers(len(V))])
            else:
                w = rng.dirichlet(np.full(len(V), 0.5))
                blocks.append(np.tensordot(w, np.stack(V), axes=1))
        out.append(make(blocks))
    return out


def coupling_as_is(R: Coupling) -> InfoSystem:
    """Flatten R onto the product observation space, labels ``"i×j"``."""
    h, m, n = R.joint.shape
    obs = tuple(f"{a}×{b}" for a in R.p_labels for b in R.q_labels)
    return InfoSystem(R.hypothesis_labels, obs, R.joint.reshape(h, m * n))


def fused_on(S: ScoreRule, fused: InfoSystem, R: InfoSystem) -> np.ndarray:
    """Attach the fused system's posteriors to R's observations.

    Each observation of R with positive probability receives the fused
    posterior with the highest expected score under R's own posterior, ties
    going to the earlier (higher likelihood ratio) fused segment. For binary
    systems this quantizes R's likelihood-ratio axis into one interval per
    fused segment, with cut points at the score's indifference ratios, which
    always fall between the slopes of adjacent fused segments.

    Returns one posterior row per observation of R (NaN where R gives the
    observation probability 0). This is a reporting rule, not an IS: with R's
    marginal it need not reproduce the prior, and a hypothesis can get zero
    mass everywhere.
    """
    m_f, post_f = _posterior_rows(fused.joint)
    post_f = post_f[m_f > 0]
    m_r, post_r = _posterior_rows(R.joint)
    keep = m_r > 0
    choice = np.argmax(cross_matrix(S, post_r[keep], post_f), axis=1)
    post = np.full_like(post_r, np.nan)
    post[keep] = post_f[choice]
    return post


def realized_value(S: ScoreRule, fused: InfoSystem, R: InfoSystem) -> float:
    """H(R, P+Q): R is the truth, P+Q's posteriors are reported via ``fused_on``."""
    m_r, post_r = _posterior_rows(R.joint)
    keep = m_r > 0
    return float(np.dot(m_r[keep], g_cross(S, post_r[keep], fused_on(S, fused, R)[keep])))


@dataclass(frozen=True)
class ScoreValues:
    score: str
    h_p: float
    h_q: float
    h_fused: float
    realized: tuple[float, ...]
    tol: float = GUARANTEE_TOL

    @property
    def min_realized(self) -> float:
        return min(self.realized) if self.realized else math.inf

    @property
    def guarantee_holds(self) -> bool:
        return self.min_realized >= self.h_fused - self.tol and self.h_fused >= max(self.h_p, self.h_q) - self.tol


@dataclass(frozen=True)
class ValueReport:
    entries: tuple[ScoreValues, ...]

    @property
    def guarantee_holds(self) -> bool:
        return all(v.guarantee_holds for v in self.entries)

    def to_csv(self) -> str:
        lines = ["score,h_p,h_q,h_fused,min_realized,n_couplings,guarantee_holds"]
        for v in self.entries:
            lines.append(
                f"{v.score},{v.h_p:.12g},{v.h_q:.12g},{v.h_fused:.12g},{v.min_realized:.12g},"
                f"{len(v.realized)},{str(v.guarantee_holds).lower()}"
            )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = f"{'score':<10}{'H(P)':>20}{'H(Q)':>20}{'H(P+Q)':>20}{'min H(R,P+Q)':>20}{'n':>6}  ok"
        rows = [head]
        for v in self.entries:
            rows.append(
                f"{v.score:<10}{v.h_p:>20.12g}{v.h_q:>20.12g}{v.h_fused:>20.12g}"
                f"{v.min_realized:>20.12g}{len(v.realized):>6}  {'yes' if v.guarantee_holds else 'NO'}"
            )
        rows.append(f"guarantee holds: {'yes' if self.guarantee_holds else 'NO'}")
        return "\n".join(rows) + "\n"


def verify_guarantee(
    P: InfoSystem, Q: InfoSystem, scores: Sequence[ScoreRule], n: int = 50, seed: int = 0
) -> ValueReport:
    """Evaluate H(P), H(Q), H(P+Q) and H(R, P+Q) for ``n`` sampled compositions R."""
    fused = fuse(P, Q)
    systems = [coupling_as_is(R) for R in sample_couplings(P, Q, n, seed)]
    entries = []
    for S in scores:
        realized = tuple(realized_value(S, fused, R) for R in systems)
        entries.append(ScoreValues(S.name, h_value(S, P), h_value(S, Q), h_value(S, fused), realized))
    return ValueReport(tuple(entries))


def garbling_residual(P: InfoSystem, Q: InfoSystem) -> tuple[float, np.ndarray]:
    """Smallest max-norm error of P_joint @ M = Q_joint over row-stochastic M.

    Solved as a linear program in (M, t): minimize t subject to
    -t <= P M - Q <= t elementwise. Returns the residual of the cleaned-up
    solution (clipped to >= 0, rows renormalized) together with M.
    """
    shared_prior(P, Q, binary=False)
    A, B = P.joint, Q.joint
    h, m = A.shape
    n = B.shape[1]
    coef = np.kron(A, np.eye(n))
    ones = np.ones((h * n, 1))
    A_ub = np.vstack([np.hstack([coef, -ones]), np.hstack([-coef, -ones])])
    b_ub = np.concatenate([B.ravel(), -B.ravel()])
    A_eq = np.hstack([np.kron(np.eye(m), np.ones((1, n))), np.zeros((m, 1))])
    c = np.zeros(m * n + 1)
    c[-1] = 1.0
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=np.ones(m),
        bounds=[(0, None)] * (m * n + 1),
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        raise RuntimeError(f"garbling LP failed: {res.message}")
    M = np.clip(res.x[:-1].reshape(m, n), 0.0, None)
    M /= M.sum(axis=1, keepdims=True)
    return float(np.abs(A @ M - B).max()), M


def garbling_dominates(P: InfoSystem, Q: InfoSystem, tol: float = GARBLING_TOL) -> bool:
    """True iff Q is a garbling of P, i.e. P_joint @ M = Q_joint for some stochastic M."""
    return garbling_residual(P, Q)[0] <= tol


def fallback_compare(S: ScoreRule, systems: Sequence[InfoSystem]) -> list[tuple[int, float]]:
    """(index, H) pairs in descending H under a single score; stable on ties."""
    if systems:
        labels = systems[0].hypothesis_labels
        for k, P in enumerate(systems):
            if P.hypothesis_labels != labels:
                raise LabelMismatch(f"system {k} has hypothesis labels {P.hypothesis_labels}")
    values = [(k, h_value(S, P)) for k, P in enumerate(systems)]
    return sorted(values, key=lambda kv: -kv[1])


def minimal_dominators(
    candidates: Sequence[InfoSystem], P: InfoSystem, Q: InfoSystem
) -> list[InfoSystem]:
    """Candidates that dominate both P and Q but strictly dominate no other such candidate."""
    shared_prior(P, Q, binary=False)
    for C in candidates:
        shared_prior(C, P, binary=False)
    upper = [C for C in candidates if garbling_dominates(C, P) and garbling_dominates(C, Q)]

    def strictly_above(A: InfoSystem, B: InfoSystem) -> bool:
        return garbling_dominates(A, B) and not garbling_dominates(B, A)

    return [C for C in upper if not any(strictly_above(C, D) for D in upper if D is not C)]
