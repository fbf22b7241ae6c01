"""Command line front end.

Exit status: 0 on success or solution, 1 on non-solution or mismatch, 2 on
input errors. Documents go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bialgebra import is_triangular
from .classify import classify
from .errors import CYBEError, ParseError
from .fields import parse_field
from .io import dumps, parse_algebra, parse_grid, parse_params, parse_tensor
from .lie import eigen_normalize, recognize_canonical_form
from .oracle.enumerate import EnumerationJob
from .oracle.equivalence import equivalence_report
from .tensors import cybe_residual

OK, FAIL, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _field(args):
    return parse_field(args.field) if args.field else None


def _algebra(args):
    return parse_algebra(args.algebra, _field(args))


def cmd_check(args):
    alg = _algebra(args)
    r = parse_tensor(args.tensor, alg.field, alg.algebra.dim)
    nonzero = cybe_residual(alg.algebra, r).nonzero()
    first = None
    if nonzero:
        (i, j, m), v = nonzero[0]
        first = {"slot": f"e{i + 1}e{j + 1}e{m + 1}", "value": str(v)}
    doc = {"solution": not nonzero, "first_nonzero": first, "nonzero_components": len(nonzero)}
    return doc, OK if not nonzero else FAIL


def cmd_classify(args):
    alg = _algebra(args)
    r = parse_tensor(args.tensor, alg.field)
    source = alg.params if alg.params is not None else alg.algebra
    verdict = classify(source, r)
    return verdict.to_dict(), OK if verdict.is_solution else FAIL


def cmd_bialgebra(args):
    alg = _algebra(args)
    if alg.params is None:
        raise InputError("bialgebra needs canonical parameters (canonical:a,b,c,d)")
    verdict = is_triangular(alg.params, parse_tensor(args.tensor, alg.field))
    return verdict.to_dict(), OK if verdict.coboundary else FAIL


def cmd_normalize(args):
    alg = _algebra(args)
    basis, params = recognize_canonical_form(alg.algebra)
    doc = {
        "basis": [[str(c) for c in row] for row in basis],
        "params": [str(c) for c in params.as_tuple()],
        "eigen": eigen_normalize(params).to_dict(),
    }
    return doc, OK


def _job(field, params, args, shape="all"):
    return EnumerationJob(field, params, shape, None, args.sample, args.seed, args.budget)


def cmd_enumerate(args):
    field = parse_field(args.field or "q")
    if args.params:
        params = [parse_params(p, field) for p in args.params]
    elif args.all_tuples:
        params = None
    else:
        raise InputError("enumerate needs --all-tuples or at least one --params")
    predicate = args.predicate or ("thm3.1" if field.characteristic == 2 else "thm2.1")
    report = equivalence_report(_job(field, params, args, args.shape), predicate,
                                args.exhaustive, args.workers)
    return report.to_dict(), OK if report.ok else FAIL


def cmd_report(args):
    runs = parse_grid(args.grid, _field(args))
    reports = []
    for run in runs:
        job = EnumerationJob(run.field, run.params, run.shape, None, run.sample, run.seed,
                             args.budget)
        reports.append(equivalence_report(job, run.predicate, args.exhaustive, args.workers))
    total = sum(r.mismatch_count for r in reports)
    doc = {"reports": [r.to_dict() for r in reports], "mismatch_count": total}
    return doc, OK if total == 0 else FAIL


def _table(doc, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_table(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}: ({len(val)})")
            for item in val:
                lines.extend(_table(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{key:<20} {val}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cybe", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cybe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algebra=True, tensor=True):
        p.add_argument("--field", help="q, gf:p, gf:p^2:modulus=c0,c1 (default q)")
        p.add_argument("--format", choices=("json", "table"), default="json")
        if algebra:
            p.add_argument("--algebra", default="canonical:1,0,0,1",
                           help="canonical:a,b,c,d or a JSON document/file")
        if tensor:
            p.add_argument("--tensor", default="0", help="0, p=1,q=-1 or a JSON document/file")

    def sweep(p):
        p.add_argument("--sample", type=int, help="draw this many parameter tuples")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, help="tensors per tuple (default 10**7 or CYBE_BUDGET)")
        p.add_argument("--exhaustive", action="store_true",
                       help="evaluate the predicate on every tensor")
        p.add_argument("--workers", type=int, default=1)

    common(sub.add_parser("check", help="evaluate the CYBE residual"))
    common(sub.add_parser("classify", help="closed-form verdict"))
    common(sub.add_parser("bialgebra", help="coboundary / triangular verdict"))
    common(sub.add_parser("normalize", help="canonical basis and eigen-normalization"),
           tensor=False)

    p = sub.add_parser("enumerate", help="oracle sweep against a predicate")
    common(p, algebra=False, tensor=False)
    p.add_argument("--predicate", help="cybe-char-ne2 (thm2.1), cybe-char2 (thm3.1), "
                                       "coboundary (thm4.1-i), triangular (thm4.1-iii)")
    p.add_argument("--all-tuples", action="store_true")
    p.add_argument("--params", action="append", metavar="A,B,C,D")
    p.add_argument("--shape", choices=("all", "admissible"), default="all")
    sweep(p)

    p = sub.add_parser("report", help="batch of sweeps from a grid file")
    common(p, algebra=False, tensor=False)
    p.add_argument("--grid", required=True)
    sweep(p)
    return parser


COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "bialgebra": cmd_bialgebra,
    "normalize": cmd_normalize,
    "enumerate": cmd_enumerate,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, status = COMMANDS[args.command](args)
    except (InputError, ParseError, CYBEError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return INPUT_ERROR
    if args.format == "table":
        sys.stdout.write(f"cybe {__version__}\n" + "\n".join(_table(doc)) + "\n")
    else:
        sys.stdout.write(dumps(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
