"""Command-line surface.

Exit codes: 0 = ran and every verdict matched its expectation (commands
without baked-in expectations exit 0 on completion), 1 = a checked verdict
failed, 2 = usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .algebra import (BUILTIN_SPECS, builtin, dump_algebra, read_algebra)
from .amalgamation import applications, classify_ap, decide_amalgamation, diagram
from .congruence import check_sc, classify, congruence_lattice
from .errors import AgkitError
from .morphisms import enumerate_homs
from .report import Record, Report, markdown_table
from .terms import parse_sentence
from .variety import all_varieties, free_algebra, lemma_suite, quasi_identity_holds, variety
from .verify import verify_paper


def _resolve_algebra(token: str):
    if token in BUILTIN_SPECS:
        return builtin(token)
    if os.path.exists(token):
        return read_algebra(token)
    raise AgkitError(f"no builtin algebra or file named {token!r}")


def _emit(report: Report, text: str, as_json: bool, out: str | None = None) -> None:
    payload = report.to_json()
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    if as_json:
        sys.stdout.write(payload)
    else:
        print(text)


def _pretty_algebra(algebra) -> str:
    lines = [f"algebra {algebra.name} (size {algebra.size})",
             "elements: " + " ".join(algebra.labels)]
    header = [" "] + list(algebra.labels)
    for op in ("join", "meet"):
        rows = [[algebra.labels[x]] + [algebra.labels[v] for v in getattr(algebra, op)[x]]
                for x in algebra.elements()]
        lines.append(f"{op}:")
        lines.append(markdown_table(header, rows))
    for op in ("star", "quote"):
        table = getattr(algebra, op)
        lines.append(f"{op}:  " + "  ".join(
            f"{algebra.labels[x]}->{algebra.labels[table[x]]}" for x in algebra.elements()))
    lines.append("canonical: " + dump_algebra(algebra))
    return "\n".join(lines)


def _cmd_algebra(args, report: Report) -> str:
    algebra = _resolve_algebra(args.target)
    report.add(Record(id=f"algebra/{algebra.name}", label="algebra",
                      verdict="ok", detail=algebra.spec_dict()))
    return _pretty_algebra(algebra)


def _cmd_check(args, report: Report) -> str:
    v = variety(args.variety)
    sentence = parse_sentence(args.sentence)
    verdict = quasi_identity_holds(v, sentence)
    detail = {}
    if verdict.countermodel:
        si_name, witness = verdict.countermodel
        detail = {"countermodel": {
            "algebra": si_name,
            "witness": {k: builtin(si_name).labels[i] for k, i in witness.items()}}}
    report.add(Record(id=f"check/{args.variety}", label=str(sentence),
                      verdict=verdict.holds, detail=detail))
    text = f"{sentence}  in {v.name}: {'valid' if verdict.holds else 'fails'}"
    if detail:
        text += f"  (countermodel {detail['countermodel']['algebra']}, " \
                f"{detail['countermodel']['witness']})"
    return text


def _cmd_homs(args, report: Report) -> str:
    source, target = _resolve_algebra(args.source), _resolve_algebra(args.target)
    homs = enumerate_homs(source, target)
    report.add(Record(id=f"homs/{source.name}/{target.name}", label="homomorphisms",
                      verdict=len(homs), detail={"maps": [h.as_dict() for h in homs]}))
    lines = [f"{len(homs)} homomorphism(s) {source.name} -> {target.name}"]
    for h in homs:
        arrow = " ".join(f"{source.labels[x]}->{target.labels[h(x)]}"
                         for x in source.elements())
        lines.append("  " + arrow + ("  [embedding]" if h.injective else ""))
    return "\n".join(lines)


def _cmd_congruences(args, report: Report) -> str:
    algebra = _resolve_algebra(args.target)
    lattice = congruence_lattice(algebra)
    report.add(Record(id=f"congruences/{algebra.name}", label="congruence lattice",
                      verdict=len(lattice),
                      detail={"congruences": [list(p.blocks) for p in lattice]}))
    lines = [f"{len(lattice)} congruence(s) of {algebra.name} (finest first)"]
    for p in lattice:
        classes = " | ".join(
            "{" + ",".join(algebra.labels[x] for x in cls) + "}" for cls in p.classes())
        lines.append(f"  {list(p.blocks)}  {classes}")
    return "\n".join(lines)


def _cmd_classify(args, report: Report) -> str:
    algebra = _resolve_algebra(args.target)
    result = classify(algebra)
    sc = check_sc(algebra)
    detail = {
        "simple": result.simple,
        "subdirectly_irreducible": result.subdirectly_irreducible,
        "directly_indecomposable": result.directly_indecomposable,
        "sc": sc.sc,
        "sc_join_variant": sc.join_variant,
    }
    if result.monolith:
        detail["monolith"] = list(result.monolith.blocks)
    report.add(Record(id=f"classify/{algebra.name}", label="classification",
                      verdict=detail["simple"] and detail["subdirectly_irreducible"],
                      detail=detail))
    return "\n".join(f"{key}: {value}" for key, value in detail.items())


def _cmd_amalgamate(args, report: Report) -> str:
    v = variety(args.variety)
    d = diagram(_resolve_algebra(args.base), _resolve_algebra(args.left),
                _resolve_algebra(args.right))
    result = decide_amalgamation(v, d)
    report.add(Record(id=f"amalgamate/{v.name}", label=d.describe(),
                      verdict="amalgam" if result.amalgamable else "obstruction",
                      detail=result.as_dict()))
    if result.amalgamable:
        return (f"{d.describe()} amalgamable in {v.name}: "
                f"D = {result.product.name} ({result.product.size} elements)")
    return (f"{d.describe()} NOT amalgamable in {v.name}: side={result.side} "
            f"pair={result.pair} census={result.hom_census}")


def _ap_rows(reports) -> list[list[str]]:
    ordered = sorted(reports, key=lambda r: (-variety(r.variety_name).level, r.variety_name))
    return [[r.variety_name,
             ",".join(sorted(variety(r.variety_name).si_names)),
             "yes" if r.has_ap else "no",
             "ok" if r.preconditions_ok else "FAILED"]
            for r in ordered]


def _cmd_classify_ap(args, report: Report) -> str:
    if args.all:
        targets = list(all_varieties())
    elif args.variety:
        targets = [variety(args.variety)]
    else:
        raise AgkitError("classify-ap needs --variety <V> or --all")
    results = []
    for v in targets:
        ap = classify_ap(v)
        results.append(ap)
        report.add(Record(
            id=f"ap/{v.name}", label="amalgamation property",
            verdict=ap.has_ap,
            detail={"preconditions_ok": ap.preconditions_ok,
                    "diagrams": len(ap.diagrams),
                    "obstructed": [
                        [d.base_name, d.left_name, d.right_name]
                        for d in ap.obstructed()]}))
    # rows follow the subvariety lattice top-down, like the Hasse diagram
    return markdown_table(["variety", "SI members", "AP", "preconditions"],
                          _ap_rows(results))


def _cmd_lemmas(args, report: Report) -> str:
    suite = lemma_suite(variety(args.variety) if args.variety else None)
    rows = []
    for result in suite.results:
        report.add(Record(
            id=f"lemma/{result.record.id}", label=result.record.label,
            verdict=result.verdict.holds, expected=result.record.expected,
            detail={"variety": result.record.variety_name,
                    "sentence": str(result.record.sentence)}))
        rows.append([result.record.id, result.record.variety_name,
                     "pass" if result.ok else "FAIL"])
    return markdown_table(["lemma", "variety", "status"], rows)


def _cmd_applications(args, report: Report) -> str:
    v = variety(args.variety)
    app = applications(v)
    detail = {
        "tp": app.tp, "ei": app.ei,
        "embedding_property": app.embedding_property,
        "model_companion": app.model_companion,
        "two_in_amal": app.two_in_amal,
        "jep_on_si_pairs": {f"{a},{b}": ok for (a, b), ok in
                            ((r.pair, r.embeddable) for r in app.jep_on_si_pairs)},
    }
    report.add(Record(id=f"applications/{v.name}", label="applications",
                      verdict=app.has_ap, detail=detail))
    lines = [f"applications for {v.name} (has_ap={app.has_ap}):"]
    lines.extend(f"  {key}: {value}" for key, value in detail.items()
                 if key != "jep_on_si_pairs")
    lines.append("  joint embeddings: " + ", ".join(
        f"({a},{b})={'yes' if ok else 'no'}"
        for (a, b), ok in ((r.pair, r.embeddable) for r in app.jep_on_si_pairs)))
    return "\n".join(lines)


def _cmd_free(args, report: Report) -> str:
    v = variety(args.variety)
    free = free_algebra(v, args.n, args.cap)
    report.add(Record(
        id=f"free/{v.name}/{args.n}", label="free algebra",
        verdict=free.algebra.size,
        detail={"generators": list(free.generators)}))
    return (f"free algebra of {v.name} on {args.n} generator(s): "
            f"{free.algebra.size} elements; generators at indices {list(free.generators)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agkit",
        description="finite-algebra workbench for the Almost Gautama subvarieties")
    parser.add_argument("--version", action="version", version=f"agkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="inspect an algebra")
    algebra_sub = p.add_subparsers(dest="algebra_command", required=True)
    p_show = algebra_sub.add_parser("show", help="print tables and canonical form")
    p_show.add_argument("target", help="builtin name or spec file path")
    p_show.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="decide a sentence in a variety")
    p.add_argument("--variety", required=True)
    p.add_argument("--sentence", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("homs", help="enumerate homomorphisms")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("congruences", help="congruence lattice")
    p.add_argument("target")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="simple / SI / DI / (SC)")
    p.add_argument("target")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("amalgamate", help="decide one diagram")
    p.add_argument("--variety", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify-ap", help="decide AP per variety")
    p.add_argument("--variety")
    p.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lemmas", help="run the lemma suite")
    p.add_argument("--variety")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("applications", help="derived properties for a variety")
    p.add_argument("--variety", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("free", help="free algebra on n generators")
    p.add_argument("--variety", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-paper", help="run the full verification pipeline")
    p.add_argument("--out", default=None, help="write the JSON report here")
    return parser


_HANDLERS = {
    "algebra": _cmd_algebra,
    "check": _cmd_check,
    "homs": _cmd_homs,
    "congruences": _cmd_congruences,
    "classify": _cmd_classify,
    "amalgamate": _cmd_amalgamate,
    "classify-ap": _cmd_classify_ap,
    "lemmas": _cmd_lemmas,
    "applications": _cmd_applications,
    "free": _cmd_free,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "verify-paper":
            result = verify_paper(["verify-paper"] + argv[1:])
            for record in result.records:
                if not record.ok:
                    print(f"FAIL {record.id} [{record.label}]: got {record.verdict!r}, "
                          f"expected {record.expected!r}")
            summary = result.summary()
            print(f"{summary['checks']} checks, {summary['failed']} failed -> "
                  f"{'OK' if summary['ok'] else 'MISMATCH'}")
            if args.out:
                with open(args.out, "w", encoding="utf-8") as handle:
                    handle.write(result.to_json())
            return 0 if result.ok else 1

        report = Report([args.command] + argv[1:], __version__)
        text = _HANDLERS[args.command](args, report)
        _emit(report, text, getattr(args, "json", False))
        if args.command == "lemmas" and not report.ok:
            return 1
        return 0
    except AgkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
