"""Text formats: IS files, payoff matrices, curve CSV and SVG.

IS file (``is v1``)::

    is v1
    <hypothesis labels, tab-separated>
    <observation labels, tab-separated>
    <one tab-separated row of joint probabilities per hypothesis>

Lines starting with ``#`` are comments; blank lines are ignored. Numbers are
written with 12 significant digits.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .canonical import CanonicalCurve
from .core import InfoSystem, validate_is
from .errors import ParseError

HEADER = "is v1"


def fmt(x: float) -> str:
    return f"{x + 0.0:.12g}"


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        out.append((lineno, line))
    return out


def _floats(lineno: int, fields: list[str]) -> list[float]:
    try:
        return [float(f) for f in fields]
    except ValueError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None


def parse_is(text: str) -> InfoSystem:
    lines = _content_lines(text)
    if not lines or lines[0][1].strip() != HEADER:
        raise ParseError(f"missing '{HEADER}' header")
    if len(lines) < 4:
        raise ParseError("expected header, two label lines and at least one matrix row")
    hyp = [s.strip() for s in lines[1][1].split("\t")]
    obs = [s.strip() for s in lines[2][1].split("\t")]
    rows = []
    for lineno, line in lines[3:]:
        row = _floats(lineno, line.strip().split("\t"))
        if len(row) != len(obs):
            raise ParseError(f"line {lineno}: {len(row)} entries for {len(obs)} observations")
        rows.append(row)
    if len(rows) != len(hyp):
        raise ParseError(f"{len(rows)} matrix rows for {len(hyp)} hypotheses")
    return validate_is(rows, hyp, obs)


def read_is(path: str | Path) -> InfoSystem:
    return parse_is(Path(path).read_text(encoding="utf-8"))


def format_is(P: InfoSystem) -> str:
    lines = [HEADER, "\t".join(P.hypothesis_labels), "\t".join(P.observation_labels)]
    lines += ["\t".join(fmt(x) for x in row) for row in P.joint]
    return "\n".join(lines) + "\n"


def read_payoff(path: str | Path) -> np.ndarray:
    """Actions x hypotheses matrix, whitespace-separated, ``#`` comments."""
    rows = [_floats(n, line.split()) for n, line in _content_lines(Path(path).read_text(encoding="utf-8"))]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ParseError(f"{path}: payoff matrix must be non-empty and rectangular")
    return np.asarray(rows)


def parse_distribution(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",")])
    except ValueError as exc:
        raise ParseError(f"bad distribution {text!r}: {exc}") from None


def curve_svg(c: CanonicalCurve, size: int = 320, margin: int = 20) -> str:
    """Unit square with the diagonal and the curve's vertex chain."""
    span = size - 2 * margin

    def px(x: float, y: float) -> str:
        return f"{margin + x * span:.3f},{margin + (1 - y) * span:.3f}"

    pts = " ".join(px(x, y) for x, y in c.vertices)
    dots = "\n".join(f'  <circle cx="{px(x, y).split(",")[0]}" cy="{px(x, y).split(",")[1]}" r="3"/>' for x, y in c.vertices)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
        f'  <rect x="{margin}" y="{margin}" width="{span}" height="{span}" fill="none" stroke="#999"/>\n'
        f'  <line x1="{margin}" y1="{margin + span}" x2="{margin + span}" y2="{margin}" stroke="#999" stroke-dasharray="4 3"/>\n'
        f'  <polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="2"/>\n'
        f"{dots}\n"
        "</svg>\n"
    )
