"""Command-line front end (``pcs``).

Exit codes: 0 success, 1 verification failure, 2 input/parse error,
3 enumeration budget exceeded, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import golden
from . import lp as lp_mod
from . import report as rep
from .errors import PCSError, PNotBelowPstar, PNotInRange
from .instance import load_instance
from .pipeline import Pipeline

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _check_p(p: float) -> float:
    if not 0 < p < 1:
        raise PNotInRange(f"--p must lie in (0, 1), got {p!r}")
    return p


def _load(path) -> tuple[Pipeline, rep.ReportDocument, list]:
    instance = load_instance(path)
    pipe = Pipeline(instance)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pipe.validation
    return pipe, instance, [str(w.message) for w in caught]


def _finish(pipe: Pipeline, doc: rep.ReportDocument) -> rep.ReportDocument:
    doc.timings = {k: round(v, 6) for k, v in sorted(pipe.timings.items())}
    return doc


def cmd_analyze(path, verbose: bool = False) -> rep.ReportDocument:
    pipe, instance, warns = _load(path)
    doc = rep.ReportDocument.for_instance("analyze", instance)
    doc.warnings = warns
    cert = pipe.certificate
    doc.certificate = rep.certificate_to_dict(cert)
    doc.l0_solutions = rep.l0_to_dict(pipe.l0_set)
    if verbose and not cert.degenerate:
        doc.pseudo_extreme_points = rep.vertex_set_to_list(pipe.vset)
    return _finish(pipe, doc)


def cmd_solve(path, problem: str, p: float | None = None, method: str = "exact", restarts: int = 32,
              seed: int = 0, irls: dict | None = None) -> rep.ReportDocument:
    pipe, instance, warns = _load(path)
    doc = rep.ReportDocument.for_instance("solve", instance)
    doc.warnings = warns
    if problem == "l0":
        doc.l0_solutions = rep.l0_to_dict(pipe.l0_set)
        return _finish(pipe, doc)
    if p is None:
        raise PNotInRange("--p is required for --problem lp")
    _check_p(p)
    if method == "exact":
        res = pipe.lp_exact(p)
    else:
        res = pipe.lp_heuristic(p, restarts=restarts, seed=seed, **(irls or {}))
        doc.warnings.append("heuristic result: no optimality guarantee")
    doc.lp_results = [rep.lp_to_dict(res)]
    return _finish(pipe, doc)


def cmd_verify(path, ps) -> tuple[rep.ReportDocument, bool]:
    for p in ps:
        _check_p(p)
    pipe, instance, warns = _load(path)
    doc = rep.ReportDocument.for_instance("verify", instance)
    doc.warnings = warns
    doc.certificate = rep.certificate_to_dict(pipe.certificate)
    all_pass = True
    for p in ps:
        try:
            vr = pipe.verify(p)
        except PNotBelowPstar as exc:
            doc.verification.append({"p": p, "status": "REFUSED", "reason": "PNotBelowPstar",
                                     "detail": str(exc)})
            all_pass = False
            continue
        doc.lp_results.append(rep.lp_to_dict(pipe.lp_exact(p)))
        doc.verification.append(rep.verification_to_dict(vr))
        all_pass &= vr.passed
    return _finish(pipe, doc), all_pass


def check_example(name: str, entry: dict) -> list[tuple[str, str, str, bool]]:
    """Compare one built-in instance against its expected values; rows of (field, expected, got, ok)."""
    exp = entry["expected"]
    pipe = Pipeline(entry["instance"])
    cert = pipe.certificate
    rows = []

    def row(fieldname, want, got, ok=None):
        rows.append((fieldname, str(want), str(got), want == got if ok is None else ok))

    for key in ("s", "c0", "c1", "r0", "rm"):
        row(key, exp[key], getattr(cert, key))
    row("pstar", repr(exp["pstar"]), repr(cert.pstar), abs(cert.pstar - exp["pstar"]) <= golden.PSTAR_TOL)
    row("l0_solutions", _fmt_set(exp["l0_solutions"]), _fmt_set(pipe.l0_set.solutions),
        sorted(exp["l0_solutions"]) == pipe.l0_set.solutions)
    res = pipe.lp_exact(exp["lp_p"])
    row(f"lp_solutions(p={exp['lp_p']})", _fmt_set(exp["lp_solutions"]), _fmt_set(res.solutions),
        sorted(exp["lp_solutions"]) == res.solutions)
    row(f"lp_value(p={exp['lp_p']})", repr(exp["lp_value"]), repr(res.optimal_value),
        abs(res.optimal_value - exp["lp_value"]) <= golden.LP_VALUE_TOL)
    if "pext_reference" in exp:
        # the enumerator may find more true vertices than the reference list; only containment is required
        found = set(pipe.vset.points)
        ref = set(exp["pext_reference"])
        extra = len(found - ref)
        row("pext_contains_reference", f"{len(ref)} points", f"{len(found)} points ({extra} extra)",
            ref <= found)
    return rows


def _fmt_set(points) -> str:
    return "{" + ", ".join("(" + ", ".join(str(v) for v in x) + ")" for x in sorted(points)) + "}"


def cmd_paper_examples(examples: dict | None = None, out=None) -> int:
    out = out or sys.stdout
    examples = golden.EXAMPLES if examples is None else examples
    ok_all = True
    header = ("example", "field", "expected", "got", "match")
    lines = []
    for name, entry in examples.items():
        for fieldname, want, got, ok in check_example(name, entry):
            lines.append((f"Example {name}", fieldname, want, got, "ok" if ok else "MISMATCH"))
            ok_all &= ok
    widths = [max(len(r[i]) for r in [header] + lines) for i in range(len(header))]
    for r in [header] + lines:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)
    print("ALL MATCH" if ok_all else "MISMATCH FOUND", file=out)
    return EXIT_OK if ok_all else EXIT_FAIL


def _emit(doc: rep.ReportDocument, out_path=None):
    text = rep.dumps_report(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcs", description="Exact l0/lp equivalence analysis for |Phi x| = b")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="certify the equivalence threshold p*")
    a.add_argument("file")
    a.add_argument("--out")
    a.add_argument("--verbose", action="store_true", help="include every pseudo-extreme point")

    s = sub.add_parser("solve", help="run one solver")
    s.add_argument("file")
    s.add_argument("--problem", choices=("l0", "lp"), required=True)
    s.add_argument("--p", type=float)
    s.add_argument("--method", choices=("exact", "heuristic"), default="exact")
    s.add_argument("--restarts", type=int, default=32)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delta0", type=float, default=lp_mod.IRLS_DELTA0)
    s.add_argument("--delta-factor", type=float, default=lp_mod.IRLS_DELTA_FACTOR)
    s.add_argument("--stages", type=int, default=lp_mod.IRLS_STAGES)
    s.add_argument("--inner", type=int, default=lp_mod.IRLS_INNER)
    s.add_argument("--out")

    v = sub.add_parser("verify", help="check lp optima against l0 optima for p < p*")
    v.add_argument("file")
    v.add_argument("--p", type=float, action="append", required=True)
    v.add_argument("--out")

    sub.add_parser("paper-examples", help="reproduce the two built-in reference instances")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            _emit(cmd_analyze(args.file, args.verbose), args.out)
            return EXIT_OK
        if args.command == "solve":
            irls = dict(delta0=args.delta0, delta_factor=args.delta_factor, stages=args.stages, inner=args.inner)
            _emit(cmd_solve(args.file, args.problem, args.p, args.method, args.restarts, args.seed, irls),
                  args.out)
            return EXIT_OK
        if args.command == "verify":
            doc, ok = cmd_verify(args.file, args.p)
            _emit(doc, args.out)
            return EXIT_OK if ok else EXIT_FAIL
        return cmd_paper_examples()
    except PCSError as exc:
        print(f"pcs: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"pcs: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"pcs: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
