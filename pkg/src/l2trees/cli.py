"""Command-line front end.

Three subcommands:

  analyze-presentation <text|file>   torsion-presentation pipeline, with an
                                     optional coset-enumeration oracle run
  analyze-gog <file>                 graph-of-groups pipeline (chi, b1,
                                     stable-letter rank, class-C statuses),
                                     plus the quotient criteria when
                                     --normal-generators is given
  census <dir | --builtin>           batch mode over presentation files, or
                                     the built-in triangle-group census

Reports are plain text by default and JSON with --json; every invariant is
printed as an exact rational "p/q" (or "p"), never a float.  Exit codes:
0 for any verdict (conclusive or not), 2 for input errors, 3 when a
completed enumeration contradicts a criteria conclusion whose hypotheses
it verified (which would indicate a defect in the tool, not in the input).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .criteria import (
    HYP_CLASS_C,
    HYP_COCOMPACT,
    HYP_N_FREE,
    STATUS_ASSERTED,
    STATUS_UNDETERMINED,
    STATUS_VERIFIED,
    STATUS_VIOLATED,
    Verdict,
    corollary_notes,
    evaluate_quotient,
    evaluate_torsion_presentation,
)
from .coset import (
    DEFAULT_LIMIT,
    CosetTable,
    LimitExceeded,
    element_order,
    enumerate_cosets,
    verify_torsion_hypothesis,
)
from .descriptors import InsufficientDataError, is_in_class_C
from .graphs import (
    GraphOfGroups,
    HypothesisError,
    b1_l2_fundamental,
    chi_l2_fundamental,
    stable_letter_rank,
    validate,
)
from .presentations import (
    PresentationError,
    TorsionPresentation,
    parse_presentation_with_log,
)
from .rationals import format_rat

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CONTRADICTION = 3

_TOOL = "l2trees"


def _tool_header() -> dict:
    return {"tool": _TOOL, "version": __version__}


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(human_lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fail(args, message: str) -> int:
    sys.stderr.write(f"{_TOOL}: error: {message}\n")
    return EXIT_INPUT_ERROR


def _verdict_lines(v: Verdict) -> list[str]:
    lines = [
        f"k = {format_rat(v.k)}",
        f"classification: {v.classification}",
        f"b1 lower bound: {format_rat(v.b1_lower_bound)}",
    ]
    if v.order_lower_bound is not None:
        lines.append(f"order lower bound (if G is finite): "
                     f"{format_rat(v.order_lower_bound)}")
    for name in sorted(v.hypotheses):
        lines.append(f"hypothesis {name}: {v.hypotheses[name]}")
    for flag in v.assumptions:
        lines.append(f"assumption: {flag}")
    for note in v.notes:
        lines.append(f"note: {note}")
    for note in corollary_notes(v):
        lines.append(f"corollary: {note}")
    return lines


def _oracle_run(
    tp: TorsionPresentation, limit: int
) -> tuple[dict, CosetTable | None]:
    result = enumerate_cosets(tp, limit=limit)
    if isinstance(result, LimitExceeded):
        return (
            {
                "status": "inconclusive",
                "detail": f"enumeration exceeded the {result.limit} coset limit",
                "limit": result.limit,
            },
            None,
        )
    statuses = verify_torsion_hypothesis(tp, result)
    relators = []
    for i, rel in enumerate(tp.relators):
        relators.append(
            {
                "relator": rel.root.format(tp.generators),
                "stated_order": rel.exponent,
                "actual_order": element_order(result, rel.root),
                "status": statuses[i],
            }
        )
    section = {
        "status": "complete",
        "order": result.n,
        "relators": relators,
        "table": result.to_json_dict(),
    }
    return section, result


def _presentation_report(
    tp: TorsionPresentation,
    normalization: list[str],
    args,
) -> tuple[dict, list[str], int]:
    verdict = evaluate_torsion_presentation(tp)
    oracle_section = None
    exit_code = EXIT_OK
    contradiction = None
    if args.enumerate:
        oracle_section, table = _oracle_run(tp, args.limit)
        if table is not None:
            all_verified = all(
                r["status"] == "verified" for r in oracle_section["relators"]
            )
            torsion_status = STATUS_VERIFIED if all_verified else STATUS_VIOLATED
            verdict = evaluate_torsion_presentation(tp, torsion_status=torsion_status)
            if all_verified:
                if verdict.k > 0 and table.n < 1 / verdict.k:
                    contradiction = (
                        f"enumerated order {table.n} is below the bound "
                        f"{format_rat(1 / verdict.k)} despite verified hypotheses"
                    )
                elif verdict.k <= 0:
                    contradiction = (
                        f"group of order {table.n} enumerated although k = "
                        f"{format_rat(verdict.k)} <= 0 forces an infinite group"
                    )
                if contradiction:
                    exit_code = EXIT_CONTRADICTION

    payload = {
        **_tool_header(),
        "input": tp.to_text(),
        "invariants": dict(verdict.engine),
        "normalization": normalization,
        "verdict": verdict.to_json_dict(),
        "corollaries": corollary_notes(verdict),
    }
    if oracle_section is not None:
        payload["oracle"] = oracle_section
    if contradiction:
        payload["contradiction"] = contradiction

    lines = [f"input: {tp.to_text()}"]
    eng = verdict.engine
    lines.append(
        f"n = {eng['n']}, m = {eng['m']}, sum(1/k_i) = {eng['sum_reciprocal_k']}"
    )
    lines.append(f"chi(F) = {eng['chi_F']}")
    lines.extend(f"normalization: {entry}" for entry in normalization)
    lines.extend(_verdict_lines(verdict))
    if oracle_section is not None:
        if oracle_section["status"] == "complete":
            lines.append(f"oracle: |G| = {oracle_section['order']}")
            for r in oracle_section["relators"]:
                lines.append(
                    f"oracle: order of {r['relator']} is {r['actual_order']} "
                    f"(stated {r['stated_order']}): {r['status']}"
                )
        else:
            lines.append(f"oracle inconclusive: {oracle_section['detail']}")
    if contradiction:
        lines.append(f"THEOREM CONTRADICTION: {contradiction}")
    return payload, lines, exit_code


def cmd_analyze_presentation(args) -> int:
    source = args.source
    if source.lstrip().startswith("<"):
        text = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            return _fail(args, f"cannot read {source!r}: {exc}")
    try:
        tp, events = parse_presentation_with_log(text)
    except PresentationError as exc:
        return _fail(args, str(exc))
    normalization = [e.describe() for e in events]
    payload, lines, exit_code = _presentation_report(tp, normalization, args)
    _emit(args, payload, lines)
    return exit_code


def cmd_analyze_gog(args) -> int:
    path = Path(args.file)
    try:
        raw = path.read_bytes()
        data = json.loads(raw.decode("utf-8"))
    except (OSError, ValueError) as exc:
        return _fail(args, f"cannot read graph file {args.file!r}: {exc}")
    try:
        graph = GraphOfGroups.from_json_dict(data)
    except ValueError as exc:
        return _fail(args, f"invalid graph of groups: {exc}")
    violations = validate(graph)
    if violations:
        return _fail(
            args,
            "graph violates invariants: " + "; ".join(str(v) for v in violations),
        )

    digest = hashlib.sha256(raw).hexdigest()
    class_statuses = {}
    undetermined = False
    any_false = False
    for vid, d in graph.vertices.items():
        outcome = is_in_class_C(d)
        class_statuses[f"vertex {vid}"] = outcome
    for e in graph.edges:
        class_statuses[f"edge {e.id}"] = is_in_class_C(e.group)
    for outcome in class_statuses.values():
        if outcome.status is None:
            undetermined = True
        elif outcome.status is False:
            any_false = True

    invariants: dict = {}
    lines = [f"input: {args.file} (sha256 {digest})"]
    chi = None
    try:
        chi = chi_l2_fundamental(graph)
        invariants["chi"] = format_rat(chi)
        lines.append(f"chi of the fundamental group: {format_rat(chi)}")
    except InsufficientDataError as exc:
        invariants["chi_error"] = str(exc)
        lines.append(f"chi not derivable: {exc}")
    try:
        b1 = b1_l2_fundamental(graph)
        invariants["b1"] = format_rat(b1.value)
        invariants["b1_assumptions"] = list(b1.assumptions)
        flags = f" [{', '.join(b1.assumptions)}]" if b1.assumptions else ""
        lines.append(f"b1 of the fundamental group: {format_rat(b1.value)}{flags}")
    except (HypothesisError, InsufficientDataError) as exc:
        invariants["b1_error"] = str(exc)
        lines.append(f"b1 not derivable: {exc}")
    rank = stable_letter_rank(graph)
    invariants["stable_letter_rank"] = rank
    lines.append(f"stable letter rank: {rank}")

    class_section = {}
    for where, outcome in class_statuses.items():
        entry = {
            "status": {True: "true", False: "false", None: "undetermined"}[
                outcome.status
            ],
            "reason": outcome.reason,
        }
        if outcome.missing:
            entry["missing"] = list(outcome.missing)
        class_section[where] = entry
        lines.append(f"class C [{where}]: {entry['status']} ({outcome.reason})")

    payload = {
        **_tool_header(),
        "input": {"file": args.file, "sha256": digest},
        "invariants": invariants,
        "class_C": class_section,
    }

    exit_code = EXIT_OK
    if args.normal_generators is not None:
        if chi is None:
            return _fail(
                args,
                "cannot evaluate the quotient criteria: chi of the graph "
                "is not derivable",
            )
        if any_false:
            class_c_status = STATUS_VIOLATED
        elif undetermined:
            class_c_status = (
                STATUS_ASSERTED if args.assume_class_c else STATUS_UNDETERMINED
            )
        else:
            class_c_status = STATUS_VERIFIED
        verdict = evaluate_quotient(
            chi,
            args.normal_generators,
            hypotheses={
                HYP_CLASS_C: class_c_status,
                HYP_N_FREE: STATUS_ASSERTED,
                HYP_COCOMPACT: STATUS_VERIFIED,
            },
            engine={"m": args.normal_generators, "chi_F": format_rat(chi)},
        )
        payload["verdict"] = verdict.to_json_dict()
        payload["corollaries"] = corollary_notes(verdict)
        lines.extend(_verdict_lines(verdict))

    _emit(args, payload, lines)
    return exit_code


def _builtin_census_inputs() -> list[tuple[str, str]]:
    """The (2..6)^3 ordered triangle triples plus the (2,3,7) instance."""
    triples = sorted(
        {
            (p, q, r)
            for p in range(2, 7)
            for q in range(p, 7)
            for r in range(q, 7)
        }
        | {(2, 3, 7)}
    )
    return [
        (
            f"triangle({p},{q},{r})",
            f"< x, y | x^{p}, y^{q}, (x*y)^{r} >",
        )
        for p, q, r in triples
    ]


def cmd_census(args) -> int:
    if args.builtin:
        inputs = _builtin_census_inputs()
    elif args.dir:
        base = Path(args.dir)
        if not base.is_dir():
            return _fail(args, f"not a directory: {args.dir!r}")
        inputs = []
        for path in sorted(base.glob("*.txt")):
            try:
                inputs.append((path.name, path.read_text(encoding="utf-8")))
            except OSError as exc:
                inputs.append((path.name, exc))
    else:
        return _fail(args, "census needs a directory or --builtin")

    rows = []
    lines = []
    summary: dict[str, int] = {}
    exit_code = EXIT_OK
    for label, text in inputs:
        try:
            if isinstance(text, OSError):
                raise ValueError(f"cannot read file: {text}")
            tp, events = parse_presentation_with_log(text)
            payload, _, row_exit = _presentation_report(
                tp, [e.describe() for e in events], args
            )
            classification = payload["verdict"]["classification"]
            summary[classification] = summary.get(classification, 0) + 1
            rows.append({"label": label, "report": payload})
            line = (
                f"{label}: {classification} "
                f"k={payload['verdict']['k']} "
                f"b1>={payload['verdict']['b1_lower_bound']}"
            )
            if "oracle" in payload and payload["oracle"]["status"] == "complete":
                line += f" |G|={payload['oracle']['order']}"
            lines.append(line)
            if row_exit == EXIT_CONTRADICTION:
                exit_code = EXIT_CONTRADICTION
                lines.append(f"{label}: THEOREM CONTRADICTION: "
                             f"{payload['contradiction']}")
        except (PresentationError, ValueError) as exc:
            summary["error"] = summary.get("error", 0) + 1
            rows.append({"label": label, "error": str(exc)})
            lines.append(f"{label}: error: {exc}")

    lines.append(
        "summary: "
        + ", ".join(f"{k}={v}" for k, v in sorted(summary.items()))
        + f" (total {len(rows)})"
    )
    payload = {
        **_tool_header(),
        "rows": rows,
        "summary": {k: summary[k] for k in sorted(summary)},
        "total": len(rows),
    }
    _emit(args, payload, lines)
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=_TOOL,
        description="Exact invariants and quotient criteria for groups "
        "acting on trees.",
    )
    parser.add_argument("--version", action="version", version=f"{_TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--out", metavar="FILE", help="write the report to FILE")

    p = sub.add_parser(
        "analyze-presentation",
        help="classify a presentation with torsion relators",
    )
    p.add_argument("source", help="presentation text (starting with '<') or a file")
    p.add_argument(
        "--enumerate",
        action="store_true",
        help="run the coset-enumeration oracle on the presentation",
    )
    p.add_argument(
        "--limit",
        type=int,
        default=DEFAULT_LIMIT,
        metavar="N",
        help=f"cap on defined cosets for the oracle (default {DEFAULT_LIMIT})",
    )
    common(p)
    p.set_defaults(func=cmd_analyze_presentation)

    p = sub.add_parser("analyze-gog", help="analyze a graph-of-groups JSON file")
    p.add_argument("file", help="graph-of-groups JSON file")
    p.add_argument(
        "--normal-generators",
        type=int,
        metavar="M",
        help="also evaluate the quotient criteria for a subgroup normally "
        "generated by M elements",
    )
    p.add_argument(
        "--assume-class-C",
        dest="assume_class_c",
        action="store_true",
        help="treat undetermined class-C checks as asserted",
    )
    common(p)
    p.set_defaults(func=cmd_analyze_gog)

    p = sub.add_parser(
        "census", help="batch-analyze a directory of presentations"
    )
    p.add_argument("dir", nargs="?", help="directory of *.txt presentation files")
    p.add_argument(
        "--builtin",
        action="store_true",
        help="run the built-in triangle-group census",
    )
    p.add_argument(
        "--enumerate",
        action="store_true",
        help="run the coset-enumeration oracle on every row",
    )
    p.add_argument(
        "--limit",
        type=int,
        default=DEFAULT_LIMIT,
        metavar="N",
        help=f"cap on defined cosets for the oracle (default {DEFAULT_LIMIT})",
    )
    common(p)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "normal_generators", None) is not None and args.normal_generators < 0:
        return _fail(args, "--normal-generators must be >= 0")
    if getattr(args, "limit", 1) < 1:
        return _fail(args, "--limit must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
