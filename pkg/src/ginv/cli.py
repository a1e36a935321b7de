"""``ginv`` command line front end.

Exit codes: 0 success, 1 hypothesis/precondition violated, 2 conclusion
verification failed (a reproducer file is written), 3 input or parse error,
4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from pathlib import Path

from . import __version__
from .antitri import REGISTRY, anti_triangular_idempotent, build_anti_triangular, check_theorem, peirce_split
from .errors import (
    DimensionMismatch,
    GinvError,
    InternalVerificationFailure,
    MatrixParseError,
    MissingInput,
    NotIdempotent,
    UnknownTheorem,
    VerificationFailure,
)
from .exactcore import Matrix, load_matrix, matrix_to_json
from .fuzz import GenSpec, run_fuzz
from .geninv import drazin, hirano, is_hirano, spectrum_summary, strongly_drazin
from .worked_examples import paper_examples

EXIT_OK, EXIT_HYPOTHESIS, EXIT_CONCLUSION, EXIT_INPUT, EXIT_INTERNAL = range(5)


def _emit(args, payload: dict | list, text: str) -> None:
    if args.format == "json":
        out = json.dumps(payload, indent=2)
    else:
        out = text
    if getattr(args, "output", None) and args.verb not in ("check", "fuzz"):
        Path(args.output).write_text(out + "\n")
    else:
        print(out)


def _render_fields(obj) -> str:
    lines = []
    for f in fields(obj):
        value = getattr(obj, f.name)
        if isinstance(value, Matrix):
            lines.append(f"{f.name}:")
            lines.extend("  " + row for row in str(value).splitlines())
        else:
            lines.append(f"{f.name}: {value}")
    return "\n".join(lines)


def _input(args) -> Matrix:
    if not args.input:
        raise MissingInput("-i/--input is required")
    return load_matrix(args.input)


def _reproducer_path(args, theorem_id: str) -> Path:
    if args.output:
        return Path(args.output)
    return Path(f"ginv-reproducer-{theorem_id}.json")


def cmd_drazin(args) -> int:
    cert = drazin(_input(args))
    _emit(args, cert.to_json(), _render_fields(cert))
    return EXIT_OK


def cmd_sdrazin(args) -> int:
    a = _input(args)
    cert = strongly_drazin(a)
    if cert is None:
        _emit(args, {"strongly_drazin": False}, "not strongly Drazin invertible: a - a^2 is not nilpotent")
        return EXIT_HYPOTHESIS
    _emit(args, cert.to_json(), _render_fields(cert))
    return EXIT_OK


def cmd_hirano(args) -> int:
    a = _input(args)
    if is_hirano(a) is None:
        _emit(args, {"hirano": False}, "not Hirano invertible: a - a^3 is not nilpotent")
        return EXIT_HYPOTHESIS
    cert = hirano(a)
    _emit(args, cert.to_json(), _render_fields(cert))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    s = spectrum_summary(_input(args))
    text = (
        f"mult_zero: {s.mult_zero}\nmult_one: {s.mult_one}\nmult_minus_one: {s.mult_minus_one}\n"
        f"other_factor: {s.other_factor}\neigenvalues in {{-1, 0, 1}}: {s.in_hirano_set}"
    )
    _emit(args, s.to_json(), text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    if args.input:
        x = load_matrix(args.input)
        if not args.e:
            raise MissingInput("decompose -i X needs --e E")
        e = load_matrix(args.e)
    elif args.a and args.b:
        b = load_matrix(args.b)
        x = build_anti_triangular(load_matrix(args.a), b)
        e = anti_triangular_idempotent(b)
    else:
        raise MissingInput("decompose needs either -i X --e E or --a A --b B")
    try:
        blocks = peirce_split(x, e)
    except NotIdempotent:
        _emit(args, {"idempotent": False}, "e is not idempotent")
        return EXIT_HYPOTHESIS
    payload = {f.name: matrix_to_json(getattr(blocks, f.name)) for f in fields(blocks)}
    _emit(args, payload, _render_fields(blocks))
    return EXIT_OK


def _role_inputs(args) -> dict[str, Matrix]:
    return {role: load_matrix(getattr(args, role)) for role in "abcd" if getattr(args, role)}


def cmd_check(args) -> int:
    report = check_theorem(args.theorem, _role_inputs(args))
    payload = report.to_json()
    code = EXIT_OK
    if not report.all_hold:
        code = EXIT_HYPOTHESIS
    elif not report.conclusion_verified:
        code = EXIT_CONCLUSION
        path = _reproducer_path(args, report.theorem_id)
        path.write_text(
            json.dumps(
                {
                    "theorem": report.theorem_id,
                    "inputs": {k: matrix_to_json(v) for k, v in report.inputs.items()},
                    "conclusion_matrix": matrix_to_json(report.conclusion_matrix),
                    "report": payload,
                },
                indent=2,
            )
            + "\n"
        )
        print(f"counterexample written to {path}", file=sys.stderr)
    _emit(args, payload, report.render())
    return code


def cmd_fuzz(args) -> int:
    ids = list(REGISTRY) if args.theorem == "all" else [args.theorem]
    reports = []
    for tid in ids:
        spec = GenSpec(
            theorem_id=tid,
            dim=args.dim,
            dim_max=args.dim_max,
            seed=args.seed,
            entry_bound=args.entry_bound,
            trials=args.trials,
        )
        reports.append(run_fuzz(spec, workers=args.workers))
    failing = [r for r in reports if not r.ok]
    if failing:
        path = _reproducer_path(args, args.theorem)
        path.write_text(json.dumps([r.to_json() for r in failing], indent=2) + "\n")
        print(f"failures written to {path}", file=sys.stderr)
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    _emit(args, payload, "\n".join(r.render() for r in reports))
    return EXIT_CONCLUSION if failing else EXIT_OK


def cmd_paper_examples(args) -> int:
    results = paper_examples(tamper=args.tamper)
    ok = sum(r.verified for r in results)
    text = "\n".join(r.render() for r in results) + f"\n{ok}/{len(results)} verified"
    _emit(args, [r.to_json() for r in results], text)
    return EXIT_OK if ok == len(results) else EXIT_CONCLUSION


COMMANDS = {
    "drazin": cmd_drazin,
    "sdrazin": cmd_sdrazin,
    "hirano": cmd_hirano,
    "decompose": cmd_decompose,
    "spectrum": cmd_spectrum,
    "check": cmd_check,
    "fuzz": cmd_fuzz,
    "paper-examples": cmd_paper_examples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-o", "--output", help="output file (reproducer path for check/fuzz)")

    parser = argparse.ArgumentParser(prog="ginv", description="Exact Drazin and Hirano inverses over Q(i).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    for verb, help_ in (
        ("drazin", "Drazin inverse certificate"),
        ("sdrazin", "strongly Drazin inverse certificate"),
        ("hirano", "Hirano inverse with tripotent + nilpotent decomposition"),
        ("spectrum", "multiplicities of the eigenvalues 0, 1, -1"),
    ):
        p = sub.add_parser(verb, help=help_, parents=[common])
        p.add_argument("-i", "--input", required=True, help="matrix JSON file")

    p = sub.add_parser("decompose", help="Peirce decomposition of x by an idempotent e", parents=[common])
    p.add_argument("-i", "--input", help="matrix x")
    p.add_argument("--e", help="idempotent e (with -i)")
    p.add_argument("--a", help="a of [[a, I], [b, 0]]; e = diag(b b^D, I)")
    p.add_argument("--b", help="b of [[a, I], [b, 0]]")

    p = sub.add_parser("check", help="check one registered statement on given inputs", parents=[common])
    p.add_argument("--theorem", required=True, choices=sorted(REGISTRY))
    for role in "abcd":
        p.add_argument(f"--{role}", help=f"matrix JSON for {role}")

    p = sub.add_parser("fuzz", help="seeded fuzz campaign", parents=[common])
    p.add_argument("--theorem", required=True, choices=sorted(REGISTRY) + ["all"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--dim-max", type=int, default=None)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("paper-examples", help="re-verify the worked examples", parents=[common])
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except InternalVerificationFailure as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_CONCLUSION
    except (MatrixParseError, DimensionMismatch, MissingInput, UnknownTheorem, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
