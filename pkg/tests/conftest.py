import math
from pathlib import Path

import numpy as np
import pytest

from islogic import ScoreRule, validate_is

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def sym():
    """Symmetric binary channel with 90% accuracy."""
    return validate_is([[0.45, 0.05], [0.05, 0.45]], ["disease", "healthy"], ["pos", "neg"])


@pytest.fixture
def all_scores():
    return [ScoreRule.log(), ScoreRule.quadratic(), ScoreRule.decision([[1.0, 0.0], [0.0, 1.0]])]


def brute_h_log(joint):
    """H(P) for the log score by explicit double summation."""
    total = 0.0
    for i in range(len(joint[0])):
        m = sum(joint[e][i] for e in range(len(joint)))
        if m == 0:
            continue
        for e in range(len(joint)):
            if joint[e][i] > 0:
                total += joint[e][i] * math.log(joint[e][i] / m)
    return total


def brute_upper_envelope(points, xs):
    """Upper concave envelope of a point set at each x, by checking all point pairs."""
    pts = [tuple(p) for p in points]
    out = []
    for x in xs:
        best = -math.inf
        for (x0, y0) in pts:
            if x0 == x:
                best = max(best, y0)
            for (x1, y1) in pts:
                if x0 < x < x1:
                    best = max(best, y0 + (y1 - y0) * (x - x0) / (x1 - x0))
        out.append(best)
    return np.array(out)


def brute_curve_value(vertices, xs):
    """Upper boundary of a vertex chain, by scanning segments one at a time."""
    return brute_upper_envelope([tuple(v) for v in vertices], xs)
