"""Command-line surface with JSON input and output.

Every subcommand reads constraint or polynomial JSON (from a path, ``-``
for stdin, or an inline JSON string), prints a result document on stdout,
and uses a three-way exit protocol: 0 for success, 1 when a check or
certification answers false, 2 for input errors (with a structured error
document on stderr). Battery timing goes to stderr so stdout stays
byte-identical across runs with the same seed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable

from . import batteries
from .certification import certify_lorentzian, strictly_lorentzian_check
from .constraints import enumerate_constraint
from .errors import ToolkitError
from .fixtures import counterexamples_match
from .inference import ProbabilityVector, mle
from .mconvexity import is_mconvex_bruteforce
from .polynomials import likelihood_polynomial
from .serialization import (
    SchemaError,
    certificate_to_json,
    constraint_from_json,
    mconvexity_report_to_json,
    mle_result_to_json,
    polynomial_from_json,
    polynomial_to_json,
    spec_from_json,
    strict_result_to_json,
)
from .simplex import enumerate_simplex, simplex_size

#: Which subcommand exercises each public operation (directly or through its
#: call chain). The CLI coverage test keeps this aligned with the dispatch
#: table and the package surface.
OPERATION_COVERAGE: dict[str, str] = {
    "enumerate_simplex": "enumerate",
    "simplex_size": "enumerate",
    "partial_sums": "check-mconvex",
    "multinomial_coefficient": "likelihood",
    "rectangle_contains": "counterexamples",
    "psr_contains": "counterexamples",
    "enumerate_constraint": "enumerate",
    "rectangle_from_psr_m2": "battery",
    "psr_to_rectangle_m3": "battery",
    "minimal_bounding_rectangle": "counterexamples",
    "minimal_bounding_psr": "counterexamples",
    "exchange": "battery",
    "is_mconvex_bruteforce": "check-mconvex",
    "find_feasible_index": "battery",
    "is_feasible_index": "battery",
    "rectangle_exchange_index": "battery",
    "verify_exchange_theorem": "battery",
    "likelihood_polynomial": "likelihood",
    "evaluate": "mle",
    "partial_derivative": "spot-logconcave",
    "directional_derivative": "spot-logconcave",
    "hessian": "spot-logconcave",
    "support": "certify",
    "certify_lorentzian": "certify",
    "strictly_lorentzian_check": "strict-check",
    "check_strong_logconcavity_spot": "spot-logconcave",
    "check_complete_logconcavity_spot": "spot-logconcave",
    "log_hessian_max_eigenvalue": "spot-logconcave",
    "log_likelihood": "mle",
    "conditional_expectation": "mle",
    "em_step": "mle",
    "mle": "mle",
    "run_battery": "battery",
}


def _read_document(raw: str) -> Any:
    """Load JSON from an inline string, '-' (stdin), or a file path."""
    text: str
    stripped = raw.strip()
    if stripped == "-":
        text = sys.stdin.read()
    elif stripped.startswith("{") or stripped.startswith("["):
        text = stripped
    else:
        path = Path(raw)
        if not path.exists():
            raise SchemaError(f"input file not found: {raw}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc


def _emit(doc: Any) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _load_constraint(args: argparse.Namespace):
    return constraint_from_json(_read_document(args.constraint))


def _load_polynomial(args: argparse.Namespace):
    if getattr(args, "polynomial", None):
        return polynomial_from_json(_read_document(args.polynomial))
    return likelihood_polynomial(_load_constraint(args))


def _cmd_enumerate(args: argparse.Namespace) -> int:
    doc = _read_document(args.constraint)
    if isinstance(doc, dict) and "type" not in doc:
        spec = spec_from_json(doc)
        points = enumerate_simplex(spec, args.cap)
        size = int(simplex_size(spec))
    else:
        constraint = constraint_from_json(doc)
        spec = constraint.spec
        points = enumerate_constraint(constraint, args.cap)
        size = len(points)
    _emit(
        {
            "m": spec.m,
            "n": spec.n,
            "count": size,
            "points": [list(p) for p in points],
        }
    )
    return 0


def _cmd_check_mconvex(args: argparse.Namespace) -> int:
    constraint = _load_constraint(args)
    report = is_mconvex_bruteforce(constraint, args.cap)
    _emit(mconvexity_report_to_json(report))
    return 0 if report.verdict else 1


def _cmd_likelihood(args: argparse.Namespace) -> int:
    constraint = _load_constraint(args)
    _emit(polynomial_to_json(likelihood_polynomial(constraint, args.cap)))
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    f = _load_polynomial(args)
    certificate = certify_lorentzian(f, tol=args.tol)
    _emit(certificate_to_json(certificate, summary=args.summary))
    return 0 if certificate.verdict else 1


def _cmd_strict_check(args: argparse.Namespace) -> int:
    f = polynomial_from_json(_read_document(args.polynomial))
    result = strictly_lorentzian_check(f, tol=args.tol)
    _emit(strict_result_to_json(result))
    return 0 if result.passed else 1


def _cmd_spot_logconcave(args: argparse.Namespace) -> int:
    f = _load_polynomial(args)
    summary = batteries.spot_logconcave_battery(
        f, mode=args.mode, count=args.count, seed=args.seed, tol=args.tol
    )
    _emit(summary)
    return 0 if summary["verdict"] else 1


def _cmd_mle(args: argparse.Namespace) -> int:
    constraint = _load_constraint(args)
    if args.p0 == "uniform":
        p0 = None
    else:
        raw = _read_document(args.p0)
        if not isinstance(raw, list):
            raise SchemaError("--p0 must be 'uniform' or a JSON array")
        p0 = ProbabilityVector.normalized([float(v) for v in raw])
    result = mle(
        constraint,
        p0=p0,
        tol=args.tol,
        max_iter=args.max_iter,
        trace=args.trace,
        restarts=args.restarts,
        seed=args.seed,
    )
    _emit(mle_result_to_json(result))
    return 0


def _cmd_counterexamples(args: argparse.Namespace) -> int:
    computed, _, matches = counterexamples_match()
    computed["matches_fixtures"] = matches
    _emit(computed)
    return 0 if matches else 1


def _cmd_battery(args: argparse.Namespace) -> int:
    kwargs: dict[str, Any] = {}
    if args.kind != "em-monotone":
        if args.m is not None:
            kwargs["m"] = args.m
        if args.n_max is not None:
            kwargs["n_values"] = list(range(2, args.n_max + 1))
    if args.kind in ("psr-mconvex", "exchange-constructive", "lorentz-grid"):
        kwargs["seed"] = args.seed
        if args.cases is not None:
            kwargs["random_cases"] = args.cases
    if args.kind == "em-monotone":
        kwargs["seed"] = args.seed
        if args.cases is not None:
            kwargs["cases"] = args.cases
    started = time.perf_counter()
    summary = batteries.run_battery(args.kind, **kwargs)
    elapsed = time.perf_counter() - started
    print(f"battery {args.kind}: {elapsed:.2f}s", file=sys.stderr)
    _emit(summary)
    return 0 if summary["failures"] == 0 else 1


_HANDLERS: dict[str, Callable[[argparse.Namespace], int]] = {
    "enumerate": _cmd_enumerate,
    "check-mconvex": _cmd_check_mconvex,
    "likelihood": _cmd_likelihood,
    "certify": _cmd_certify,
    "strict-check": _cmd_strict_check,
    "spot-logconcave": _cmd_spot_logconcave,
    "mle": _cmd_mle,
    "counterexamples": _cmd_counterexamples,
    "battery": _cmd_battery,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="censored-multinomial",
        description="Interval-censored multinomial sample spaces, M-convexity, "
        "Lorentzian certification, and maximum likelihood.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_constraint(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--constraint",
            required=True,
            help="constraint JSON: path, '-' for stdin, or inline",
        )

    def add_cap(p: argparse.ArgumentParser) -> None:
        p.add_argument("--cap", type=int, default=None, help="enumeration cap override")

    p = sub.add_parser("enumerate", help="list the points of a constraint or simplex")
    add_constraint(p)
    add_cap(p)

    p = sub.add_parser("check-mconvex", help="brute-force M-convexity check")
    add_constraint(p)
    add_cap(p)

    p = sub.add_parser("likelihood", help="exact censored-likelihood polynomial")
    add_constraint(p)
    add_cap(p)

    p = sub.add_parser("certify", help="Lorentzian certificate for a polynomial")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--polynomial", help="polynomial JSON: path, '-', or inline")
    group.add_argument("--constraint", help="certify the likelihood of this constraint")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--summary", action="store_true", help="omit per-gamma signatures")

    p = sub.add_parser("strict-check", help="recursive strictly-Lorentzian test")
    p.add_argument("--polynomial", required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser(
        "spot-logconcave", help="random strong/complete log-concavity spot checks"
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--polynomial")
    group.add_argument("--constraint")
    p.add_argument("--mode", choices=("strong", "complete"), default="strong")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("mle", help="maximum-likelihood estimate under censoring")
    add_constraint(p)
    p.add_argument("--p0", default="uniform", help="'uniform' or a JSON array")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser(
        "counterexamples", help="regenerate and diff the canonical fixtures"
    )

    p = sub.add_parser("battery", help="run a batch verification battery")
    p.add_argument("--kind", required=True, choices=batteries.BATTERY_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--cases", type=int, default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except ToolkitError as exc:
        error: dict[str, Any] = {
            "type": type(exc).__name__,
            "message": str(exc),
        }
        index = getattr(exc, "index", None)
        if index is not None:
            error["index"] = index
        print(json.dumps({"error": error}, indent=2, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
