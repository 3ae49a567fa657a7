"""Command-line front end: ``rocn construct | preset | certify | verify``.

Exit codes: 0 success, 2 input error, 3 matrix is not ROCN, 4 a verification
residual exceeded the tolerance.  ``ROCN_MAX_M`` raises the size cap for
construction and strategy synthesis (default 12).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from rocnbell.construct import DEFAULT_MAX_M, PRESETS, build_self_testing_matrix, preset
from rocnbell.errors import NotRocnError, RocnError
from rocnbell.io import (
    MatrixFormatError,
    matrix_to_json,
    observables_to_json,
    probabilities_to_json,
    read_matrix_entries,
)
from rocnbell.report import TEXT_DIGITS, certify
from rocnbell.rocn import DEFAULT_TOLERANCE, RocnMatrix
from rocnbell.strategy import canonical_strategy, correlations, probabilities, verification_residuals

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_ROCN = 3
EXIT_VERIFY = 4


class InputError(Exception):
    pass


def max_m_from_env() -> int:
    raw = os.environ.get("ROCN_MAX_M")
    if not raw:
        return DEFAULT_MAX_M
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"ROCN_MAX_M must be an integer, got {raw!r}") from None
    if value < 2:
        raise InputError("ROCN_MAX_M must be >= 2")
    return value


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return read_matrix_entries(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except MatrixFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_construct(args) -> int:
    h = build_self_testing_matrix(args.m, not args.omit_identity_block, max_m=max_m_from_env())
    _emit(matrix_to_json(h.entries, h.label), args.out)
    return EXIT_OK


def cmd_preset(args) -> int:
    if args.name.lower() not in PRESETS:
        raise InputError(f"unknown preset {args.name!r}; choose from {', '.join(PRESETS)}")
    h = preset(args.name)
    _emit(matrix_to_json(h.entries, h.label), args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    entries, label = _load(args.matrix)
    if entries.shape[0] > entries.shape[1]:
        raise InputError(f"ROCN matrices need m <= n, got shape {entries.shape}")
    report = certify(entries, label, tolerance=args.tolerance, max_m=max_m_from_env())
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
    return EXIT_OK if report.rocn_valid else EXIT_NOT_ROCN


def cmd_verify(args) -> int:
    entries, label = _load(args.matrix)
    if entries.shape[0] % 2:
        raise InputError(f"verify supports even m only, got m={entries.shape[0]}")
    try:
        h = RocnMatrix(entries, label=label, tolerance=args.tolerance)
    except NotRocnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ROCN
    max_m = max_m_from_env()
    residuals = verification_residuals(h, max_m=max_m)
    value = residuals.pop("bell_value")
    failing = [k for k, v in residuals.items() if v > args.tolerance]

    if args.export_observables or args.export_probabilities:
        strat = canonical_strategy(h, max_m)
        if args.export_observables:
            Path(args.export_observables).write_text(
                '{"alice": %s, "bob": %s}\n'
                % (observables_to_json(strat.alice.ops), observables_to_json(strat.bob.ops)),
                encoding="utf-8",
            )
        if args.export_probabilities:
            p = probabilities(correlations(strat))
            Path(args.export_probabilities).write_text(probabilities_to_json(p) + "\n", encoding="utf-8")

    lines = [
        f"matrix: {h.label or '(unlabelled)'}",
        f"shape: {h.m} x {h.n}",
        f"canonical bell value: {value:.{TEXT_DIGITS}g}",
        f"quantum bound n: {h.n}",
    ]
    lines += [f"residual {k}: {v:.3e}" for k, v in residuals.items()]
    lines.append("status: " + ("ok" if not failing else "FAILED (" + ", ".join(failing) + ")"))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if not failing else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rocn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the self-testing ROCN matrix for even m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--omit-identity-block", action="store_true", help="drop the O^(0) = I block")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("preset", help="write a named ROCN matrix")
    p.add_argument("name", help=f"one of: {', '.join(PRESETS)}")
    p.add_argument("--out")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("certify", help="validate, bound and self-test a matrix file")
    p.add_argument("matrix")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check the canonical strategy attains n")
    p.add_argument("matrix")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--out")
    p.add_argument("--export-observables", metavar="PATH")
    p.add_argument("--export-probabilities", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tolerance", 1.0) <= 0:
        print("error: tolerance must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, RocnError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
