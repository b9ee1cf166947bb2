"""Command-line interface: analyze, involution, hilbert, inverse, purity, examples.

Reports are plain text by default or deterministic JSON (`--report json`):
for a fixed input and seed the serialized report is byte-identical across
runs.  Exit codes: 0 success, 1 analysis inconclusive within the window,
2 corpus mismatch, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus as corpus_mod
from . import jetspace as js
from .completion import characteristic_matrix, codimension, complete, involutive_order
from .hilbert import compare, hilbert_function, principal_class_series
from .inverse import SPENCER_SIGN_NOTE, generating_sections, socle, top_generators
from .parser import ParseError, digest, parse
from .pdesystem import LinearSystem, stable_dimension
from .purity import is_pure, localize, localized_generators
from .spencer import cohomology, is_involutive_symbol

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_CORPUS_MISMATCH = 2
EXIT_PARSE_ERROR = 3


def _load(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return text, parse(text)


def _frame_rows(frame) -> list:
    return [[str(x) for x in row] for row in frame.matrix]


def _involution_dict(res) -> dict:
    return {
        "involutive": res.involutive,
        "order": res.tableau.order,
        "beta": list(res.tableau.beta),
        "alpha": list(res.tableau.alpha),
        "frame": _frame_rows(res.tableau.frame),
        "certificate": {
            "method": res.certificate.method,
            "frames_tried": res.certificate.frames_tried,
            "dim_next_symbol": res.certificate.dim_next_symbol,
            "multiplicative_sum": res.certificate.multiplicative_sum,
            "window": res.certificate.window,
            "window_limited": res.certificate.window_limited,
            "nonzero_cohomology": [list(t) for t in res.certificate.nonzero_cohomology],
        },
    }


def build_report(text: str, sys_: LinearSystem, seed: int = 0, trunc: int | None = None) -> dict:
    """Full analysis of one system as a JSON-ready dictionary."""
    notes = [SPENCER_SIGN_NOTE, "characteristic minors are emitted un-radicalized"]
    report: dict = {"input": {"digest": digest(text), "n": sys_.n, "m": sys_.m, "order": sys_.order}}
    completion = complete(sys_)
    report["completion"] = {
        "verdict": completion.verdict,
        "steps": completion.steps,
        "gained": [
            [js.jet_name(e.leading_jet(), sys_.m) for e in step.gained] for step in completion.trace
        ],
        "acyclic_order": completion.acyclic_order,
        "projection_surjective": [list(f) for f in completion.projection_flags],
        "window_limited": completion.window_limited,
    }
    if not completion.integrable:
        report["notes"] = notes + ["completion inconclusive within the window"]
        return report
    final = completion.final_system
    q = max(final.order, 1)
    if trunc is None:
        trunc = 2 * q + final.n + 1
    inv = is_involutive_symbol(final, seed=seed)
    report["involution"] = _involution_dict(inv)
    acyclicity = {}
    for s in range(1, final.n + 1):
        acyclicity[str(s)] = {
            str(o): cohomology(final, s, o).dim_cohomology for o in range(q, q + final.n + 1)
        }
    report["acyclicity"] = acyclicity
    try:
        if not inv.involutive:
            order, res = involutive_order(final, seed=seed)
            report["involution"]["involutive_prolongation_order"] = order
        report["codimension"] = codimension(final, seed=seed)
    except ValueError as exc:
        report["codimension"] = None
        report["inconclusive"] = True
        report["notes"] = notes + [str(exc)]
        return report
    counted = hilbert_function(final, trunc)
    report["hilbert"] = {"function": list(counted.coefficients), "truncation": trunc}
    degrees = sorted((e.order for e in sys_.equations), reverse=True)
    if sys_.m == 1 and len(degrees) == report["codimension"] and degrees:
        series = principal_class_series(degrees, sys_.n, trunc)
        cmp_result = compare(counted, series)
        report["hilbert"]["principal_class_series"] = list(series.coefficients)
        report["hilbert"]["generator_degrees"] = degrees
        report["hilbert"]["series_matches"] = cmp_result.agrees
        report["hilbert"]["first_mismatch"] = cmp_result.first_mismatch
        if not cmp_result.agrees:
            notes.append("counted Hilbert function differs from the generator-degree series")
    if final.equations:
        cm = characteristic_matrix(final)
        report["characteristic_ideal"] = [str(p.primitive()) for p in cm.minors]
    else:
        report["characteristic_ideal"] = []
    try:
        dim = stable_dimension(final)
        gens = generating_sections(final)
        soc = socle(final)
        report["inverse"] = {
            "finite_dimension": dim,
            "generators": [g.body() for g in gens],
            "socle_dimension": len(soc),
        }
    except ValueError:
        report["inverse"] = {"finite_dimension": None}
        notes.append("inverse system is infinite dimensional; apply relative localization")
    try:
        purity = is_pure(sys_, seed=seed)
        report["purity"] = {
            "codimension": purity.codimension,
            "localized_dimension": purity.localized_dimension,
            "torsion": [str(t) for t in purity.torsion],
            "pure": purity.pure,
            "alpha_crosscheck": purity.alpha_crosscheck,
        }
        notes.extend(purity.notes)
    except ValueError as exc:
        report["purity"] = {"codimension": report["codimension"], "pure": None}
        report["inconclusive"] = True
        notes.append(f"purity undecided: {exc}")
    r = report["purity"]["codimension"]
    if r is not None and r != final.n and report["inverse"].get("finite_dimension") is None:
        try:
            loc = localize(final, r)
            report["inverse"]["localized_generators"] = [g.body() for g in localized_generators(loc)]
        except ValueError:
            pass
    report["notes"] = notes
    return report


def _emit(report: dict, mode: str) -> None:
    if mode == "json":
        print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False))
        return
    _emit_text(report)


def _emit_text(report: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key in report:
        value = report[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _emit_text(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (dict,)):
            print(f"{pad}{key}:")
            for item in value:
                _emit_text(item, indent + 1)
        else:
            print(f"{pad}{key}: {value}")


def cmd_analyze(args) -> int:
    text, doc = _load(args.file)
    report = build_report(text, doc.system, seed=args.seed, trunc=args.trunc)
    _emit(report, args.report)
    if report["completion"]["verdict"] == "window_inconclusive" or report.get("inconclusive"):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_involution(args) -> int:
    text, doc = _load(args.file)
    res = is_involutive_symbol(doc.system, order=args.order, seed=args.seed)
    _emit({"involution": _involution_dict(res)}, args.report)
    if res.certificate.window_limited:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_hilbert(args) -> int:
    if args.file:
        text, doc = _load(args.file)
        completion = complete(doc.system)
        counted = hilbert_function(completion.final_system, args.trunc)
        out = {"function": list(counted.coefficients)}
        if args.degrees:
            degrees = [int(d) for d in args.degrees.split(",")]
            series = principal_class_series(degrees, doc.system.n, args.trunc)
            out["series"] = list(series.coefficients)
            out["matches"] = compare(counted, series).agrees
        _emit(out, args.report)
        return EXIT_OK
    if not args.vars or not args.degrees:
        print("hilbert needs --file or both --vars and --degrees", file=sys.stderr)
        return EXIT_PARSE_ERROR
    degrees = [int(d) for d in args.degrees.split(",")]
    series = principal_class_series(degrees, args.vars, args.trunc)
    if args.report == "json":
        _emit({"series": list(series.coefficients)}, "json")
    else:
        print(str(series))
    return EXIT_OK


def cmd_inverse(args) -> int:
    text, doc = _load(args.file)
    completion = complete(doc.system)
    final = completion.final_system
    out: dict = {}
    try:
        out["finite_dimension"] = stable_dimension(final)
        out["generators"] = [g.body() for g in generating_sections(final)]
        out["top_generators"] = [g.body() for g in top_generators(final)]
        out["socle_dimension"] = len(socle(final))
    except ValueError:
        r = codimension(final, seed=args.seed)
        out["finite_dimension"] = None
        out["codimension"] = r
        loc = localize(final, r)
        out["localized_generators"] = [g.body() for g in localized_generators(loc)]
    out["note"] = SPENCER_SIGN_NOTE
    _emit(out, args.report)
    return EXIT_OK


def cmd_purity(args) -> int:
    text, doc = _load(args.file)
    purity = is_pure(doc.system, seed=args.seed)
    out = {
        "codimension": purity.codimension,
        "localized_dimension": purity.localized_dimension,
        "torsion": [str(t) for t in purity.torsion],
        "pure": purity.pure,
        "alpha_crosscheck": purity.alpha_crosscheck,
        "notes": list(purity.notes),
    }
    _emit(out, args.report)
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.action == "list":
        for name in corpus_mod.ENTRIES:
            print(f"{name}: {corpus_mod.SOURCES[name]}")
        return EXIT_OK
    names = None if args.name in (None, "all") else [args.name]
    try:
        results = corpus_mod.run_corpus(names, seed=args.seed)
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE_ERROR
    failed = False
    payload = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        if args.report == "text":
            print(f"{status} {res.name}  [{res.source}]")
            for check in res.checks:
                if not check.ok:
                    print(f"  value {check.key} ({check.provenance}):")
                    print(f"    expected {check.expected!r}")
                    print(f"    actual   {check.actual!r}")
            for note in res.notes:
                print(f"  note: {note}")
        payload.append(
            {
                "name": res.name,
                "source": res.source,
                "passed": res.passed,
                "notes": list(res.notes),
                "checks": [
                    {
                        "key": c.key,
                        "provenance": c.provenance,
                        "ok": c.ok,
                        "expected": repr(c.expected),
                        "actual": repr(c.actual),
                    }
                    for c in res.checks
                ],
            }
        )
        failed = failed or not res.passed
    if args.report == "json":
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    return EXIT_CORPUS_MISMATCH if failed else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formalpde",
        description="Exact analysis of linear constant-coefficient PDE systems",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for the frame search")
    parser.add_argument("--report", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report: completion, involution, Hilbert, purity")
    p.add_argument("file")
    p.add_argument("--trunc", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("involution", help="involution test of the symbol")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_involution)

    p = sub.add_parser("hilbert", help="principal-class series / counted Hilbert function")
    p.add_argument("--file")
    p.add_argument("--vars", type=int)
    p.add_argument("--degrees")
    p.add_argument("--trunc", type=int, default=8)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("inverse", help="inverse-system generators and socle")
    p.add_argument("file")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("purity", help="relative localization and purity verdict")
    p.add_argument("file")
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("examples", help="run the built-in corpus")
    p.add_argument("action", choices=("run", "list"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
