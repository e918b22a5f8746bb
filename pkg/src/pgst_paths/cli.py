"""Command-line interface.

Every invocation prints exactly one JSON envelope on stdout::

    {"schema_version": "1", "command": ..., "inputs": {...},
     "result": ..., "status": "ok" | "error", "error": null | {"code", "message"}}

Bulk data (search traces, sweep tables) goes to CSV files.

Exit codes: 0 ok, 1 internal error, 2 argument parse error, 3 range
violation, 4 certificate not applicable, 5 search budget exceeded, 6 I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import certificates as certs
from .classifier import Verdict, classify
from .dynamics import DEFAULT_MAX_EVALS, fidelity, search_best_time
from .errors import BudgetExceeded, CertificateNotApplicable, PGSTError, RangeViolation
from .spectra import spectrum, support

SCHEMA_VERSION = "1"
SPECTRUM_MAX_N = 10**5

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_RANGE = 3
EXIT_NOT_APPLICABLE = 4
EXIT_BUDGET = 5
EXIT_IO = 6


def fmt_float(x: float) -> str:
    """17 significant digits; always recognisable as a float."""
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite value {x}")
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def render(obj) -> str:
    """JSON with fixed 17-digit floats and insertion-ordered keys."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {render(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render(v) for v in obj) + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


class _ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseError(message)


class _CommandError(Exception):
    def __init__(self, code: str, message: str, exit_code: int, result=None):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code
        self.result = result


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pgst-paths", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", help="decide PGST between a and b of P_n")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = sub.add_parser("certificate", help="obstruction certificate for (a, n+1-a)")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)
    p.add_argument("--verify", action="store_true", help="include the verification report")
    p.add_argument("--out", help="also write the text form of the certificate here")

    p = sub.add_parser("check-certificate", help="verify a certificate in text form")
    p.add_argument("path")

    p = sub.add_parser("search", help="search for a high-fidelity transfer time")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--trace", help="write the sampled trace as CSV")
    p.add_argument("--max-evals", type=int, default=DEFAULT_MAX_EVALS)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep", help="classify every mirror pair for n <= nmax")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--csv", help="write the table here instead of embedding it")

    p = sub.add_parser("spectrum", help="eigenvalues of P_n")
    p.add_argument("n", type=int)

    p = sub.add_parser("support", help="eigenvalue support of vertex a")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)

    p = sub.add_parser("fidelity", help="transfer fidelity from a to b at time t")
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("t", type=float)
    return parser


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise _CommandError("IO_ERROR", f"cannot write {path}: {exc}", EXIT_IO) from exc


def cmd_classify(args) -> dict:
    return classify(args.n, args.a, args.b).as_dict()


def cmd_certificate(args) -> dict:
    cert = certs.generate_certificate(args.n, args.a)
    text = certs.dumps(cert)
    result = {"certificate": cert.as_dict(), "document": text}
    if args.verify:
        result["verification"] = certs.check_certificate(cert).as_dict()
    if args.out:
        _write_text(args.out, text)
    return result


def cmd_check_certificate(args) -> dict:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CommandError("IO_ERROR", f"cannot read {args.path}: {exc}", EXIT_IO) from exc
    try:
        cert = certs.loads(text)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, RangeViolation):
            raise
        raise _CommandError("PARSE_ERROR", str(exc), EXIT_PARSE) from exc
    return {"certificate": cert.as_dict(), "verification": certs.check_certificate(cert).as_dict()}


def cmd_search(args) -> dict:
    record = args.trace is not None
    try:
        trace = search_best_time(
            args.n, args.a, args.b, args.eps, args.tmax,
            max_evals=args.max_evals, workers=args.workers, record=record,
        )
    except BudgetExceeded as exc:
        partial = exc.trace.summary() if exc.trace is not None else None
        if record and exc.trace is not None:
            _write_text(args.trace, exc.trace.to_csv(fmt_float))
        raise _CommandError(exc.code, str(exc), EXIT_BUDGET, result=partial) from exc
    if record:
        _write_text(args.trace, trace.to_csv(fmt_float))
    return trace.summary()


SWEEP_HEADER = "n,a,b,verdict,reason,t,r,p"


def sweep_rows(nmax: int):
    for n in range(2, nmax + 1):
        for a in range(1, (n + 1) // 2 + 1):
            yield classify(n, a, n + 1 - a)


def cmd_sweep(args) -> dict:
    if args.nmax < 2:
        raise RangeViolation(f"nmax must be >= 2, got {args.nmax}")
    rows = list(sweep_rows(args.nmax))
    counts = {v.value: 0 for v in Verdict}
    for c in rows:
        counts[c.verdict.value] += 1
    result = {"rows": len(rows), "verdict_counts": counts}
    if args.csv:
        lines = [SWEEP_HEADER]
        lines += [
            f"{c.n},{c.a},{c.b},{c.verdict.value},{c.reason.value},{c.t},{c.r},{'' if c.p is None else c.p}"
            for c in rows
        ]
        _write_text(args.csv, "\n".join(lines) + "\n")
        result["csv"] = args.csv
    else:
        result["table"] = [{"n": c.n, "a": c.a, "b": c.b, **c.as_dict()} for c in rows]
    return result


def cmd_spectrum(args) -> dict:
    if args.n > SPECTRUM_MAX_N:
        raise RangeViolation(f"spectrum listing is capped at n <= {SPECTRUM_MAX_N}")
    return {"n": args.n, "eigenvalues": spectrum(args.n).eigenvalues.tolist()}


def cmd_support(args) -> dict:
    mask = support(args.n, args.a)
    return {
        "n": mask.n,
        "a": mask.a,
        "excluded": sorted(mask.excluded),
        "excluded_period": mask.period,
        "support_size": len(mask.included),
    }


def cmd_fidelity(args) -> dict:
    return {"fidelity": fidelity(args.n, args.a, args.b, args.t)}


COMMANDS = {
    "classify": cmd_classify,
    "certificate": cmd_certificate,
    "check-certificate": cmd_check_certificate,
    "search": cmd_search,
    "sweep": cmd_sweep,
    "spectrum": cmd_spectrum,
    "support": cmd_support,
    "fidelity": cmd_fidelity,
}


def _envelope(command, inputs, result, error=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "status": "error" if error else "ok",
        "error": error,
    }


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute one command; returns the envelope and the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ParseError as exc:
        command = argv[0] if argv and argv[0] in COMMANDS else None
        err = {"code": "PARSE_ERROR", "message": str(exc)}
        return _envelope(command, {"argv": list(argv)}, None, err), EXIT_PARSE

    inputs = {k.replace("_", "-"): v for k, v in vars(args).items() if k != "command"}
    try:
        result = COMMANDS[args.command](args)
    except _CommandError as exc:
        err = {"code": exc.code, "message": str(exc)}
        return _envelope(args.command, inputs, exc.result, err), exc.exit_code
    except RangeViolation as exc:
        return _envelope(args.command, inputs, None, {"code": exc.code, "message": str(exc)}), EXIT_RANGE
    except CertificateNotApplicable as exc:
        err = {"code": exc.code, "message": str(exc)}
        return _envelope(args.command, inputs, None, err), EXIT_NOT_APPLICABLE
    except PGSTError as exc:
        return _envelope(args.command, inputs, None, {"code": exc.code, "message": str(exc)}), EXIT_INTERNAL
    return _envelope(args.command, inputs, result), EXIT_OK


def main(argv: list[str] | None = None) -> int:
    envelope, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(render(envelope) + "\n")
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
