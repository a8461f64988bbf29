"""Command-line front end.

Exit codes: 0 success, 2 validation, 3 prior mismatch, 4 arity/binary
violation, 5 guarantee violation, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import canonical, fusion, oracle
from .core import ScoreRule, g_value, h_value, marginal, prior
from .errors import GuaranteeViolation, ISLogicError, MissingPayoff
from .fileio import curve_svg, fmt, format_is, parse_distribution, read_is, read_payoff


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _score_rules(names: list[str] | None, payoff: str | None, default: list[str]) -> list[ScoreRule]:
    rules = []
    for name in names or default:
        if name == "log":
            rules.append(ScoreRule.log())
        elif name == "quad":
            rules.append(ScoreRule.quadratic())
        else:
            if payoff is None:
                raise MissingPayoff("decision score needs --payoff")
            rules.append(ScoreRule.decision(read_payoff(payoff)))
    return rules


def cmd_validate(args) -> int:
    P = read_is(args.path)
    print(f"hypotheses: {P.n_hypotheses}")
    print(f"observations: {P.n_observations}")
    print("prior: " + " ".join(f"{h}={fmt(p)}" for h, p in zip(P.hypothesis_labels, prior(P).probs)))
    print("marginal: " + " ".join(f"{o}={fmt(p)}" for o, p in zip(P.observation_labels, marginal(P).probs)))
    return 0


def cmd_canon(args) -> int:
    c = canonical.canonicalize(read_is(args.path))
    if args.svg:
        Path(args.svg).write_text(curve_svg(c), encoding="utf-8")
    if args.out:
        Path(args.out).write_text(c.to_csv(), encoding="utf-8")
        print(f"vertices: {len(c)}")
    else:
        sys.stdout.write(c.to_csv())
    return 0


def _pair(args):
    P, Q = read_is(args.a), read_is(args.b)
    canonical.shared_prior(P, Q)
    return P, Q, prior(P if args.prior_from == "A" else Q).probs


def cmd_join(args) -> int:
    P, Q, pr = _pair(args)
    c = canonical.join(canonical.canonicalize(P), canonical.canonicalize(Q))
    _emit(format_is(canonical.reconstruct(c, pr, P.hypothesis_labels)), args.out)
    return 0


def cmd_meet(args) -> int:
    P, Q, pr = _pair(args)
    c = canonical.meet(canonical.canonicalize(P), canonical.canonicalize(Q))
    _emit(format_is(canonical.reconstruct(c, pr, P.hypothesis_labels)), args.out)
    return 0


def cmd_dominates(args) -> int:
    P, Q = read_is(args.a), read_is(args.b)
    if args.method == "garbling":
        ab, ba = fusion.garbling_dominates(P, Q), fusion.garbling_dominates(Q, P)
    else:
        canonical.shared_prior(P, Q)
        a, b = canonical.canonicalize(P), canonical.canonicalize(Q)
        ab, ba = canonical.dominates(a, b), canonical.dominates(b, a)
    print({(True, True): "P=Q", (True, False): "P>=Q", (False, True): "Q>=P"}.get((ab, ba), "incomparable"))
    return 0


def cmd_value(args) -> int:
    P = read_is(args.path)
    pr = prior(P)
    rules = _score_rules(args.score, args.payoff, ["log"])
    print("score\tH\tG_prior\tgain")
    for S in rules:
        h, g = h_value(S, P), g_value(S, pr)
        print(f"{S.name}\t{fmt(h)}\t{fmt(g)}\t{fmt(h - g)}")
    return 0


def cmd_fuse(args) -> int:
    _emit(format_is(fusion.fuse(read_is(args.a), read_is(args.b))), args.out)
    return 0


def cmd_verify(args) -> int:
    P, Q = read_is(args.a), read_is(args.b)
    default = ["log", "quad"] + (["decision"] if args.payoff else [])
    report = fusion.verify_guarantee(P, Q, _score_rules(args.score, args.payoff, default), args.samples, args.seed)
    sys.stdout.write(report.to_text())
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    if not report.guarantee_holds:
        raise GuaranteeViolation("H(R, P+Q) >= H(P+Q) >= max(H(P), H(Q)) failed")
    return 0


def cmd_rank(args) -> int:
    systems = [read_is(p) for p in args.paths]
    S = _score_rules([args.score], args.payoff, ["log"])[0]
    print("rank\tH\tpath")
    for rank, (k, h) in enumerate(fusion.fallback_compare(S, systems), start=1):
        print(f"{rank}\t{fmt(h)}\t{args.paths[k]}")
    return 0


def cmd_corollary(args) -> int:
    S = _score_rules([args.score], args.payoff, ["log"])[0]
    K = [parse_distribution(v) for v in args.vertex]
    rep = oracle.corollary_check(S, K, args.resolution, args.samples, args.seed, refine=not args.no_refine)
    print("minimizer: " + ",".join(fmt(x) for x in rep.minimizer))
    print("grid minimizer: " + ",".join(fmt(x) for x in rep.grid_minimizer))
    print(f"points checked: {rep.n_checked}")
    print(f"min slack: {fmt(rep.min_slack)}")
    print(f"holds: {'yes' if rep.holds else 'no'}")
    return 0


def cmd_theorem1(args) -> int:
    S = _score_rules([args.score], args.payoff, ["log"])[0]
    rep = oracle.theorem1_check(S, parse_distribution(args.p), parse_distribution(args.q), args.steps)
    print(f"decomposition error: {fmt(rep.decomposition_error)}")
    print(f"G(R) >= G(Q) on grid: {'yes' if rep.hypothesis_holds else 'no'}")
    if rep.min_conclusion_slack is not None:
        print(f"min G(P,R) - G(Q), a > 0: {fmt(rep.min_conclusion_slack)}")
    print(f"G(P,R) at smallest a: {fmt(rep.limit_value)}")
    print(f"G(P,Q): {fmt(rep.g_cross_at_q)}")
    print(f"G(Q): {fmt(rep.g_q)}")
    return 0


def cmd_lub(args) -> int:
    rep = oracle.lub_minimality_check(read_is(args.a), read_is(args.b), args.dominators, args.seed)
    print(f"dominators checked: {rep.n_checked}")
    print(f"not dominating the join: {rep.violations}")
    print(f"holds: {'yes' if rep.holds else 'no'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="islogic", description="Information-system logic toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an IS file and print priors and marginals")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("canon", help="canonical curve of a binary IS as CSV")
    p.add_argument("path")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_canon)

    for name, func in (("join", cmd_join), ("meet", cmd_meet)):
        p = sub.add_parser(name, help=f"{name} of two binary systems, as an IS file")
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--prior-from", choices=("A", "B"), default="A")
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("dominates", help="compare two systems")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--method", choices=("curve", "garbling"), default="curve")
    p.set_defaults(func=cmd_dominates)

    p = sub.add_parser("value", help="H(P), G(prior) and the information gain")
    p.add_argument("path")
    p.add_argument("--score", action="append", choices=("log", "quad", "decision"))
    p.add_argument("--payoff")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("fuse", help="minimal composition P+Q")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("verify", help="check the fusion value guarantee on sampled compositions")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--score", action="append", choices=("log", "quad", "decision"))
    p.add_argument("--payoff")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank", help="order systems by H under one score")
    p.add_argument("paths", nargs="+")
    p.add_argument("--score", choices=("log", "quad", "decision"), default="log")
    p.add_argument("--payoff")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("corollary", help="check G(P,Q) >= G(Q) over a polytope K")
    p.add_argument("--vertex", action="append", required=True, help="comma-separated distribution")
    p.add_argument("--score", choices=("log", "quad", "decision"), default="log")
    p.add_argument("--payoff")
    p.add_argument("--resolution", type=int, default=200)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-refine", action="store_true")
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("theorem1", help="mixture-path check between two distributions")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--score", choices=("log", "quad", "decision"), default="log")
    p.add_argument("--payoff")
    p.add_argument("--steps", type=int, default=100)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("lub", help="check that random common dominators dominate the join")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--dominators", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lub)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ISLogicError as exc:
        print(f"{type(exc).__name__} {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
