"""Command-line driver: ``reesalg params|verify|smooth``.

Exit codes: 0 pass, 1 failure, 2 invalid input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .curves import derive_params, patil_basis
from .errors import InvalidParams, ResourceLimit
from .groebner import DEFAULT_MAX_STEPS
from .report import SCHEMA
from .rees import compute_E_b
from .smoothness import smoothness_verdict
from .verify import TARGETS, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reesalg", description="Rees algebra verifier for monomial curves in A^4.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--m0", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("params", help="derive a, b and the curve exponents")
    common(p)

    p = sub.add_parser("verify", help="run verification targets")
    common(p)
    p.add_argument("--target", action="append", choices=TARGETS + ("all",))
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--seed", type=int, default=None, help="shuffle seed for the elimination input")
    p.add_argument("--golden-dir", type=Path, default=None)

    p = sub.add_parser("smooth", help="Jacobian criterion at the fiber prime")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--expect", choices=("regular", "not_regular"), default="not_regular")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_params(args) -> int:
    params = derive_params(args.m0, args.d)
    basis = [str(g) for g in patil_basis(params)]
    if args.format == "json":
        print(_dump({"schema": SCHEMA, "params": params.to_dict(), "generators": basis}))
    else:
        print(f"m0={params.m0} d={params.d} a={params.a} b={params.b} m={params.m}")
        for g in basis:
            print(f"  {g}")
    return EXIT_OK


def golden_path(golden_dir: Path, m0: int, d: int) -> Path:
    return golden_dir / f"E_m0-{m0}_d-{d}.txt"


def golden_text(params, max_steps: int | None = DEFAULT_MAX_STEPS, seed: int | None = None) -> str:
    return "".join(f"{g}\n" for g in compute_E_b(params, seed=seed, max_steps=max_steps))


def check_golden(golden_dir: Path, params, max_steps: int | None, seed: int | None = None) -> dict:
    """Write the canonical basis if absent, otherwise compare against it."""
    path = golden_path(golden_dir, params.m0, params.d)
    text = golden_text(params, max_steps, seed)
    if not path.exists():
        golden_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        return {"file": path.name, "status": "written", "pass": True}
    old = path.read_text()
    if old == text:
        return {"file": path.name, "status": "match", "pass": True}
    got, want = set(text.splitlines()), set(old.splitlines())
    return {
        "file": path.name,
        "status": "mismatch",
        "pass": False,
        "missing": sorted(want - got),
        "unexpected": sorted(got - want),
    }


def cmd_verify(args) -> int:
    params = derive_params(args.m0, args.d)
    targets = args.target or ["all"]
    reports = []
    for t in targets:
        reports.extend(verify_theorem(t, params, args.max_steps))
    golden = check_golden(args.golden_dir, params, args.max_steps, args.seed) if args.golden_dir else None
    ok = all(r.passed for r in reports) and (golden is None or golden["pass"])
    if args.format == "json":
        payload = [r.to_dict() for r in reports]
        if golden is not None:
            payload.append({"schema": SCHEMA, "target": "golden", "pass": golden["pass"], "details": golden})
        print(_dump(payload))
    else:
        for r in reports:
            print(r.summary())
            for note in r.notes:
                print(f"  note: {note}")
            for line in r.lm_set_diff:
                print(f"  lm: {line}")
            for line in r.term_diffs:
                print(f"  diff: {line}")
        if golden is not None:
            print(f"{'PASS' if golden['pass'] else 'FAIL'} golden {golden['file']} ({golden['status']})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_smooth(args) -> int:
    params = derive_params(args.m0, args.d)
    report = smoothness_verdict(params, seed=args.seed, max_steps=args.max_steps)
    if args.format == "json":
        print(_dump(report.to_dict()))
    else:
        print(f"b={report.b} rank {report.rank} codim {report.codim} {report.verdict}")
        print(f"  nonzero columns: {', '.join(report.nonzero_columns) or '(none)'}")
        print(f"  rank from printed families: {report.rank_printed}")
    return EXIT_OK if report.verdict == args.expect else EXIT_FAIL


COMMANDS = {"params": cmd_params, "verify": cmd_verify, "smooth": cmd_smooth}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidParams as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
