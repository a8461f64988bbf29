"""Inductive logic of information systems.

Proper scoring rules and expected values (``core``), canonical curves and
the dominance lattice for binary hypotheses (``canonical``), minimal
composition with its value guarantee (``fusion``) and brute-force
verifiers (``oracle``).
"""

from .canonical import (
    CanonicalCurve,
    LikelihoodVector,
    canonicalize,
    curve_equal,
    diagonal,
    dominates,
    join,
    meet,
    null_is,
    perfect,
    perfect_curve,
    reconstruct,
)
from .core import (
    Distribution,
    InfoSystem,
    ScoreKind,
    ScoreRule,
    g_cross,
    g_value,
    h_cross,
    h_value,
    marginal,
    posterior,
    prior,
    score,
    validate_is,
)
from .fusion import (
    Coupling,
    ValueReport,
    coupling_as_is,
    fallback_compare,
    fuse,
    garbling_dominates,
    minimal_dominators,
    sample_couplings,
    verify_guarantee,
)

__version__ = "0.1.0"
