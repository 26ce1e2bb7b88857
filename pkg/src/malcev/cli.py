"""Command-line interface.

Exit codes: 0 success (or predicate true), 1 predicate false or verification
violations, 2 usage or input errors, 3 internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cayley import (
    build_ball,
    codeterminism_violations,
    export_dot,
    indegree_violations,
)
from .congruence import CapExceeded, left_divides, partition_agreement
from .group_derivation import (
    OccurrenceMismatch,
    certificate_text,
    verify_obstruction,
)
from .ideals import (
    DEFAULT_SEED,
    AlignmentViolation,
    intersect_principal,
    verify_alignment,
)
from .presentation import (
    PresentationError,
    build_presentation,
    format_word,
    parse_word,
)
from .rewriting import cancellativity_violations, left_normal_form

__all__ = ["main", "run"]

SUITES = ("nf-oracle", "cancellative", "codet", "indegree", "alignment")


def _add_common(sub):
    sub.add_argument("-n", type=int, required=True, help="family index (n >= 1)")
    sub.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub.add_argument("--output", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="malcev",
        description="Normal forms, Cayley graphs, ideal intersections and "
        "group-derivation certificates for the monoid family M_n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print generators, relations and derived sets")
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("nf", help="left normal form of a word")
    _add_common(p)
    p.add_argument("-w", "--word", required=True, help="space-separated tokens")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("eq", help="decide equality of two words")
    _add_common(p)
    p.add_argument(
        "-w",
        "--word",
        action="append",
        required=True,
        help="give twice: the two words to compare",
    )
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("divides", help="left divisibility with witness")
    _add_common(p)
    p.add_argument("-p", required=True, help="candidate divisor")
    p.add_argument("-q", required=True, help="candidate multiple")
    p.set_defaults(func=cmd_divides)

    p = sub.add_parser("intersect", help="intersect two principal right ideals")
    _add_common(p)
    p.add_argument("-p", required=True)
    p.add_argument("-q", required=True)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("ball", help="Cayley graph ball around a root")
    _add_common(p)
    p.add_argument("--root", default="1", help="root word (default identity)")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dot", help="write DOT here ('-' for stdout)")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_common(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-len", type=int, required=True, help="element length bound")
    p.add_argument("--window", type=int, help="oracle window (alignment suite)")
    p.add_argument("--samples", type=int, default=50, help="oracle sample size")
    p.add_argument(
        "--seed", type=int, help="sampling seed (default MALCEV_SEED or 1729)"
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("obstruct", help="emit the group-derivation certificate")
    _add_common(p)
    p.set_defaults(func=cmd_obstruct)

    return parser


def _emit(args, command, result, violations, text) -> None:
    if args.format == "json":
        doc = {
            "command": command,
            "n": args.n,
            "result": result,
            "violations": list(violations),
        }
        payload = json.dumps(doc, indent=2)
    else:
        payload = text
    if args.output:
        Path(args.output).write_text(payload + "\n")
    else:
        print(payload)


def cmd_gen(args) -> int:
    pres = build_presentation(args.n)
    in_order = lambda s: [g.token for g in pres.generators if g in s]
    relations = [(format_word(r.left), format_word(r.right)) for r in pres.relations]
    result = {
        "generators": [g.token for g in pres.generators],
        "relations": [{"left": l, "right": r} for l, r in relations],
        "P": in_order(pres.p_set),
        "Q": in_order(pres.q_set),
        "L": [format_word(r.left) for r in pres.relations],
        "R": [format_word(r.right) for r in pres.relations],
    }
    lines = [f"n: {args.n}", "generators: " + " ".join(result["generators"])]
    lines.append("relations:")
    lines += [f"  {l} = {r}" for l, r in relations]
    lines.append("P: " + " ".join(result["P"]))
    lines.append("Q: " + " ".join(result["Q"]))
    lines.append("L: " + "; ".join(result["L"]))
    lines.append("R: " + "; ".join(result["R"]))
    _emit(args, "gen", result, [], "\n".join(lines))
    return 0


def cmd_nf(args) -> int:
    pres = build_presentation(args.n)
    e = left_normal_form(parse_word(args.word, pres), pres)
    _emit(
        args,
        "nf",
        {"input": args.word, "normal_form": str(e)},
        [],
        str(e),
    )
    return 0


def cmd_eq(args) -> int:
    if len(args.word) != 2:
        raise PresentationError("eq needs exactly two -w words")
    pres = build_presentation(args.n)
    nf1 = left_normal_form(parse_word(args.word[0], pres), pres)
    nf2 = left_normal_form(parse_word(args.word[1], pres), pres)
    same = nf1 == nf2
    result = {"equal": same, "nf1": str(nf1), "nf2": str(nf2)}
    _emit(args, "eq", result, [], "true" if same else "false")
    return 0 if same else 1


def cmd_divides(args) -> int:
    pres = build_presentation(args.n)
    p = parse_word(args.p, pres)
    q = parse_word(args.q, pres)
    witness = left_divides(p, q, pres)
    found = witness is not None
    result = {"divides": found, "witness": format_word(witness) if found else None}
    _emit(args, "divides", result, [], format_word(witness) if found else "none")
    return 0 if found else 1


def cmd_intersect(args) -> int:
    pres = build_presentation(args.n)
    p = left_normal_form(parse_word(args.p, pres), pres)
    q = left_normal_form(parse_word(args.q, pres), pres)
    res = intersect_principal(p, q, pres)
    result = {
        "kind": res.kind,
        "provenance": res.provenance,
        "generators": [str(g) for g in res.generators],
    }
    lines = [f"kind: {res.kind}", f"provenance: {res.provenance}"]
    if res.generators:
        lines.append("generators:")
        lines += [f"  {g}" for g in res.generators]
    _emit(args, "intersect", result, [], "\n".join(lines))
    return 0


def cmd_ball(args) -> int:
    pres = build_presentation(args.n)
    root = left_normal_form(parse_word(args.root, pres), pres)
    ball = build_ball(root, args.radius, pres)
    dot = export_dot(ball)
    dot_path = None
    if args.dot and args.dot != "-":
        Path(args.dot).write_text(dot)
        dot_path = args.dot
    result = {
        "root": str(root),
        "radius": args.radius,
        "vertex_count": len(ball.vertices),
        "edge_count": len(ball.edges),
        "dot_path": dot_path,
    }
    if args.dot == "-":
        result["dot"] = dot
        text = dot.rstrip("\n")
    else:
        text = (
            f"root: {root}\nradius: {args.radius}\n"
            f"vertices: {len(ball.vertices)}\nedges: {len(ball.edges)}"
        )
        if dot_path:
            text += f"\ndot: {dot_path}"
    _emit(args, "ball", result, [], text)
    return 0


def cmd_verify(args) -> int:
    pres = build_presentation(args.n)
    max_len = args.max_len
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("MALCEV_SEED", DEFAULT_SEED))
    summary = {"suite": args.suite, "max_len": max_len}
    if args.suite == "nf-oracle":
        violations = partition_agreement(pres, max_len)
    elif args.suite == "cancellative":
        violations = cancellativity_violations(pres, max_len, max(1, max_len - 1))
        summary["factor_len"] = max(1, max_len - 1)
    elif args.suite == "codet":
        violations = codeterminism_violations(pres, max_len)
    elif args.suite == "indegree":
        violations = indegree_violations(pres, max_len)
    else:
        window = args.window if args.window is not None else max_len + 3
        report = verify_alignment(
            pres, max_len, args.samples, window, seed=seed
        )
        violations = list(report.mismatches)
        if report.max_generators > report.bound:
            violations.append(
                f"max generator count {report.max_generators} exceeds "
                f"bound {report.bound}"
            )
        summary.update(report.to_dict())
    ok = not violations
    lines = [f"suite: {args.suite}", f"n: {args.n}", f"max_len: {max_len}"]
    if args.suite == "alignment":
        lines.append(f"pairs: {summary['pair_count']}")
        lines.append(f"max generators: {summary['max_generators']}")
        lines.append(f"non-principal pairs: {len(summary['non_principal'])}")
        for entry in summary["non_principal"]:
            lines.append(
                f"  ({entry['p']}; {entry['q']}) -> "
                + ", ".join(entry["generators"])
            )
        lines.append(
            f"oracle: {summary['sampled']} sampled pairs, window "
            f"{summary['window']}, seed {summary['seed']}"
        )
    lines += [f"violation: {v}" for v in violations]
    lines.append(f"violations: {len(violations)}")
    _emit(args, "verify", summary, violations, "\n".join(lines))
    return 0 if ok else 1


def cmd_obstruct(args) -> int:
    pres = build_presentation(args.n)
    cert = verify_obstruction(pres)
    _emit(args, "obstruct", cert.to_dict(), [], certificate_text(cert, pres))
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (AlignmentViolation, CapExceeded, OccurrenceMismatch) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        # PresentationError, WindowTooSmall, bad radius or seed
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
