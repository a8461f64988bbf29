"""Information systems, proper scoring rules and their expected values.

An information system (IS) is a joint distribution over hypotheses (rows) and
observations (columns). The three score rules are the logarithmic (natural
log), quadratic and decision-matrix scores. ``g_value``/``g_cross`` are the
expected self-score and cross-score of distributions; ``h_value``/``h_cross``
are their observation-averaged analogues for information systems.

The ``g_*`` functions accept a single distribution (1-D) or a stack of them
(2-D, one per row) and return a float or an array accordingly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import xlogy

from .errors import (
    DimensionMismatch,
    EmptyAxis,
    NegativeEntry,
    ObservationSpaceMismatch,
    SumNotOne,
    UndefinedPosterior,
    ValidationError,
    ZeroPriorRow,
    ZeroProbabilityObservation,
)

PROB_TOL = 1e-9
SCORE_TOL = 1e-12
# decimal inputs sitting exactly on the boundary (e.g. a sum of 0.999999999)
# land a few ulps outside it after binary rounding
_SUM_SLACK = 64 * np.finfo(float).eps


def _sum_ok(total: float) -> bool:
    return abs(total - 1.0) <= PROB_TOL + _SUM_SLACK


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability vector over hypotheses."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = _frozen(self.probs)
        if p.ndim != 1 or p.size == 0:
            raise EmptyAxis("a distribution needs a non-empty 1-D vector")
        if not np.all(np.isfinite(p)):
            raise ValidationError("non-finite probability")
        if np.any(p < 0):
            raise NegativeEntry(f"negative probability at index {int(np.argmin(p))}")
        if not _sum_ok(p.sum()):
            raise SumNotOne(f"probabilities sum to {p.sum():.12g}")
        object.__setattr__(self, "probs", p)

    @classmethod
    def _unchecked(cls, p: np.ndarray) -> "Distribution":
        # sums of an already validated joint; a second sum check could disagree by rounding
        d = object.__new__(cls)
        object.__setattr__(d, "probs", _frozen(p))
        return d

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, i):
        return self.probs[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)


def _vec(x) -> np.ndarray:
    if isinstance(x, Distribution):
        return x.probs
    return np.asarray(x, dtype=float)


def _default_labels(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{k + 1}" for k in range(n))


@dataclass(frozen=True, eq=False)
class InfoSystem:
    """Joint distribution P(e, i); rows are hypotheses, columns observations."""

    hypothesis_labels: tuple[str, ...]
    observation_labels: tuple[str, ...]
    joint: np.ndarray

    def __post_init__(self) -> None:
        joint = _frozen(self.joint)
        if joint.ndim != 2:
            raise ValidationError("joint must be a 2-D matrix")
        n_h, n_o = joint.shape
        if n_h < 2:
            raise EmptyAxis(f"need at least 2 hypotheses, got {n_h}")
        if n_o < 1:
            raise EmptyAxis("need at least 1 observation")
        if not np.all(np.isfinite(joint)):
            raise ValidationError("non-finite entry in joint")
        neg = np.argwhere(joint < 0)
        if len(neg):
            r, c = neg[0]
            raise NegativeEntry(f"row {r} col {c}")
        total = joint.sum()
        if not _sum_ok(total):
            raise SumNotOne(f"joint sums to {total:.12g}")
        zero_rows = np.flatnonzero(joint.sum(axis=1) <= 0)
        if len(zero_rows):
            raise ZeroPriorRow(f"row {zero_rows[0]}")
        hyp = tuple(str(s) for s in self.hypothesis_labels)
        obs = tuple(str(s) for s in self.observation_labels)
        if len(hyp) != n_h or len(obs) != n_o:
            raise ValidationError(
                f"label counts ({len(hyp)}, {len(obs)}) do not match joint shape {joint.shape}"
            )
        object.__setattr__(self, "joint", joint)
        object.__setattr__(self, "hypothesis_labels", hyp)
        object.__setattr__(self, "observation_labels", obs)

    @property
    def n_hypotheses(self) -> int:
        return self.joint.shape[0]

    @property
    def n_observations(self) -> int:
        return self.joint.shape[1]

    def __repr__(self) -> str:
        return (
            f"InfoSystem(hypotheses={list(self.hypothesis_labels)}, "
            f"observations={list(self.observation_labels)}, joint={self.joint.tolist()})"
        )


def validate_is(
    matrix: Sequence[Sequence[float]],
    hypothesis_labels: Sequence[str] | None = None,
    observation_labels: Sequence[str] | None = None,
) -> InfoSystem:
    """Build an InfoSystem from a raw matrix, raising on any invariant violation."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        raise EmptyAxis("empty matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValidationError("matrix is not rectangular")
    joint = np.asarray(rows, dtype=float)
    if hypothesis_labels is None:
        hypothesis_labels = _default_labels("h", joint.shape[0])
    if observation_labels is None:
        observation_labels = _default_labels("o", joint.shape[1])
    return InfoSystem(tuple(hypothesis_labels), tuple(observation_labels), joint)


def prior(P: InfoSystem) -> Distribution:
    return Distribution._unchecked(P.joint.sum(axis=1))


def marginal(P: InfoSystem) -> Distribution:
    return Distribution._unchecked(P.joint.sum(axis=0))


def posterior(P: InfoSystem, i: int) -> Distribution:
    col = P.joint[:, i]
    m = col.sum()
    if m <= 0:
        raise ZeroProbabilityObservation(f"observation {i} ({P.observation_labels[i]}) has probability 0")
    return Distribution(col / m)


def _posterior_rows(joint: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Marginals and posteriors (one row per observation); zero columns give NaN rows."""
    m = joint.sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        post = (joint / m).T
    return m, post


class ScoreKind(enum.Enum):
    LOGARITHMIC = "log"
    QUADRATIC = "quad"
    DECISION = "decision"


@dataclass(frozen=True, eq=False)
class ScoreRule:
    kind: ScoreKind
    payoff: np.ndarray | None = field(default=None)

    def __post_init__(self) -> None:
        if self.kind is ScoreKind.DECISION:
            if self.payoff is None:
                raise ValueError("decision score needs a payoff matrix")
            U = _frozen(self.payoff)
            if U.ndim != 2 or U.shape[0] < 1 or U.shape[1] < 1:
                raise ValueError("payoff must be a non-empty actions x hypotheses matrix")
            object.__setattr__(self, "payoff", U)
        elif self.payoff is not None:
            raise ValueError(f"{self.kind.value} score takes no payoff matrix")

    @classmethod
    def log(cls) -> ScoreRule:
        return cls(ScoreKind.LOGARITHMIC)

    @classmethod
    def quadratic(cls) -> ScoreRule:
        return cls(ScoreKind.QUADRATIC)

    @classmethod
    def decision(cls, payoff) -> ScoreRule:
        return cls(ScoreKind.DECISION, np.asarray(payoff, dtype=float))

    @property
    def name(self) -> str:
        return self.kind.value

    def __repr__(self) -> str:
        if self.payoff is None:
            return f"ScoreRule({self.name})"
        return f"ScoreRule(decision, payoff={self.payoff.tolist()})"


def _check_dim(S: ScoreRule, d: int) -> None:
    if S.kind is ScoreKind.DECISION and S.payoff.shape[1] != d:
        raise DimensionMismatch(f"payoff has {S.payoff.shape[1]} hypothesis columns, distribution has {d}")


def best_action(S: ScoreRule, Q) -> np.ndarray | int:
    """Optimal action(s) under a decision score; ties go to the lowest index."""
    q = _vec(Q)
    _check_dim(S, q.shape[-1])
    return np.argmax(q @ S.payoff.T, axis=-1)


def score(S: ScoreRule, Q, e: int) -> float:
    """S(Q, e): the payoff for reporting Q when hypothesis ``e`` occurs."""
    q = _vec(Q)
    _check_dim(S, q.size)
    if not 0 <= e < q.size:
        raise DimensionMismatch(f"hypothesis index {e} out of range for dimension {q.size}")
    if S.kind is ScoreKind.LOGARITHMIC:
        return float(np.log(q[e])) if q[e] > 0 else -np.inf
    if S.kind is ScoreKind.QUADRATIC:
        return float(2.0 * q[e] - np.dot(q, q))
    return float(S.payoff[best_action(S, q), e])


def g_cross(S: ScoreRule, P, Q):
    """G(P, Q) = sum_e P(e) S(Q, e), row-wise for stacked inputs."""
    p, q = _vec(P), _vec(Q)
    if p.shape[-1] != q.shape[-1]:
        raise DimensionMismatch(f"dimensions {p.shape[-1]} and {q.shape[-1]} differ")
    _check_dim(S, p.shape[-1])
    p, q = np.broadcast_arrays(p, q)
    if S.kind is ScoreKind.LOGARITHMIC:
        out = xlogy(p, q).sum(axis=-1)
    elif S.kind is ScoreKind.QUADRATIC:
        out = 2.0 * (p * q).sum(axis=-1) - (q * q).sum(axis=-1)
    else:
        # same expected-payoff vector for both, so G(P) >= G(P, Q) holds bit-exactly
        a = np.argmax(q @ S.payoff.T, axis=-1)
        out = np.take_along_axis(p @ S.payoff.T, np.expand_dims(a, -1), axis=-1)[..., 0]
    return float(out) if np.ndim(out) == 0 else out


def g_value(S: ScoreRule, P):
    """G(P), the expected score of P under itself (0 log 0 = 0)."""
    return g_cross(S, P, P)


def cross_matrix(S: ScoreRule, P_rows: np.ndarray, Q_rows: np.ndarray) -> np.ndarray:
    """All pairwise G(P_a, Q_b); shape (len(P_rows), len(Q_rows))."""
    P_rows = np.atleast_2d(P_rows)
    Q_rows = np.atleast_2d(Q_rows)
    if P_rows.shape[1] != Q_rows.shape[1]:
        raise DimensionMismatch("dimension mismatch")
    _check_dim(S, P_rows.shape[1])
    if S.kind is ScoreKind.LOGARITHMIC:
        return xlogy(P_rows[:, None, :], Q_rows[None, :, :]).sum(axis=-1)
    if S.kind is ScoreKind.QUADRATIC:
        return 2.0 * P_rows @ Q_rows.T - (Q_rows * Q_rows).sum(axis=1)[None, :]
    a = np.argmax(Q_rows @ S.payoff.T, axis=1)
    return (P_rows @ S.payoff.T)[:, a]


def h_value(S: ScoreRule, P: InfoSystem) -> float:
    """H(P): observation-weighted average of the posteriors' expected scores."""
    m, post = _posterior_rows(P.joint)
    keep = m > 0
    return float(np.dot(m[keep], g_value(S, post[keep])))


def _aligned_columns(P: InfoSystem, Q: InfoSystem) -> np.ndarray:
    if P.n_hypotheses != Q.n_hypotheses:
        raise ObservationSpaceMismatch(
            f"hypothesis counts differ ({P.n_hypotheses} vs {Q.n_hypotheses})"
        )
    if P.observation_labels == Q.observation_labels:
        return Q.joint
    if len(set(P.observation_labels)) == P.n_observations and set(P.observation_labels) == set(
        Q.observation_labels
    ) and len(set(Q.observation_labels)) == Q.n_observations:
        index = {lab: k for k, lab in enumerate(Q.observation_labels)}
        return Q.joint[:, [index[lab] for lab in P.observation_labels]]
    raise ObservationSpaceMismatch("observation label sets differ")


def h_cross(S: ScoreRule, P: InfoSystem, Q: InfoSystem) -> float:
    """H(P, Q): expected value when Q's posteriors are used but P is the truth."""
    q_joint = _aligned_columns(P, Q)
    m_p, post_p = _posterior_rows(P.joint)
    m_q, post_q = _posterior_rows(q_joint)
    keep = m_p > 0
    bad = keep & (m_q <= 0)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise UndefinedPosterior(f"observation {P.observation_labels[k]!r} has Q-probability 0")
    return float(np.dot(m_p[keep], g_cross(S, post_p[keep], post_q[keep])))
