"""JSON wire formats.

Constraints, polynomials, and reports all have canonical JSON forms with
exact coefficients carried as strings ("560" or "5/3") and all indices
1-based. Parsing raises :class:`SchemaError` with a message naming the
offending field; bound validation errors propagate from the constraint
constructors and carry the 1-based offending index.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Mapping

from .certification import (
    LogConcavitySpotReport,
    LorentzianCertificate,
    StrictLorentzianResult,
)
from .constraints import ConstraintSet, ExplicitSet, PartialSumRectangle, Rectangle
from .errors import ToolkitError
from .inference import MleResult
from .mconvexity import ExchangeVerification, ExchangeWitness, MConvexityReport
from .polynomials import HomogeneousPolynomial
from .simplex import SimplexSpec


class SchemaError(ToolkitError):
    """The JSON document does not match the expected schema."""


def _require(doc: Mapping[str, Any], key: str, kind: type | tuple[type, ...]) -> Any:
    if key not in doc:
        raise SchemaError(f"missing field '{key}'")
    value = doc[key]
    if not isinstance(value, kind):
        raise SchemaError(f"field '{key}' has wrong type {type(value).__name__}")
    return value


def _int_list(doc: Mapping[str, Any], key: str) -> list[int]:
    raw = _require(doc, key, list)
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaError(f"field '{key}' must hold integers")
        out.append(v)
    return out


def spec_from_json(doc: Mapping[str, Any]) -> SimplexSpec:
    return SimplexSpec(_require(doc, "m", int), _require(doc, "n", int))


def constraint_to_json(constraint: ConstraintSet) -> dict[str, Any]:
    spec = constraint.spec
    if isinstance(constraint, Rectangle):
        return {
            "type": "rectangle",
            "m": spec.m,
            "n": spec.n,
            "l": list(constraint.lower),
            "u": list(constraint.upper),
        }
    if isinstance(constraint, PartialSumRectangle):
        return {
            "type": "psr",
            "m": spec.m,
            "n": spec.n,
            "l": list(constraint.lower),
            "u": list(constraint.upper),
        }
    if isinstance(constraint, ExplicitSet):
        return {
            "type": "explicit",
            "m": spec.m,
            "n": spec.n,
            "points": [list(p) for p in constraint.points],
        }
    raise SchemaError(f"not a constraint: {constraint!r}")


def constraint_from_json(doc: Mapping[str, Any]) -> ConstraintSet:
    kind = _require(doc, "type", str)
    spec = spec_from_json(doc)
    if kind == "rectangle":
        return Rectangle(spec, tuple(_int_list(doc, "l")), tuple(_int_list(doc, "u")))
    if kind == "psr":
        return PartialSumRectangle(
            spec, tuple(_int_list(doc, "l")), tuple(_int_list(doc, "u"))
        )
    if kind == "explicit":
        raw = _require(doc, "points", list)
        points = []
        for p in raw:
            if not isinstance(p, list):
                raise SchemaError("field 'points' must hold arrays of integers")
            points.append(tuple(int(v) for v in p))
        return ExplicitSet.from_points(spec, points)
    raise SchemaError(f"unknown constraint type '{kind}'")


def polynomial_to_json(f: HomogeneousPolynomial) -> dict[str, Any]:
    return {
        "m": f.m,
        "degree": f.degree,
        "terms": [
            {"exp": list(exp), "coeff": str(coeff)} for exp, coeff in f.sorted_terms()
        ],
    }


def polynomial_from_json(doc: Mapping[str, Any]) -> HomogeneousPolynomial:
    m = _require(doc, "m", int)
    degree = _require(doc, "degree", int)
    raw = _require(doc, "terms", list)
    terms: dict[tuple[int, ...], Fraction] = {}
    for entry in raw:
        if not isinstance(entry, Mapping):
            raise SchemaError("field 'terms' must hold objects")
        exp = tuple(_int_list(entry, "exp"))
        coeff_raw = _require(entry, "coeff", str)
        try:
            coeff = Fraction(coeff_raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad coefficient '{coeff_raw}': {exc}") from exc
        if exp in terms:
            raise SchemaError(f"duplicate exponent {list(exp)}")
        terms[exp] = coeff
    return HomogeneousPolynomial(m, degree, terms)


def witness_to_json(witness: ExchangeWitness) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "alpha": list(witness.alpha),
        "beta": list(witness.beta),
        "i": witness.i + 1,
    }
    if witness.j is not None:
        doc["j"] = witness.j + 1
    if witness.result is not None:
        doc["result"] = list(witness.result)
    return doc


def mconvexity_report_to_json(report: MConvexityReport) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "verdict": report.verdict,
        "pairs_checked": report.pairs_checked,
    }
    if report.counterexample is not None:
        doc["counterexample"] = witness_to_json(report.counterexample)
    return doc


def exchange_verification_to_json(report: ExchangeVerification) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "passed": report.passed,
        "triples_checked": report.triples_checked,
        "order": report.order,
    }
    if report.first_failure is not None:
        doc["first_failure"] = witness_to_json(report.first_failure)
        doc["failure_reason"] = report.failure_reason
    return doc


def certificate_to_json(
    certificate: LorentzianCertificate, summary: bool = False
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "verdict": certificate.verdict,
        "tol": certificate.tol,
        "degenerate": certificate.degenerate,
        "support_mconvex": mconvexity_report_to_json(certificate.support_mconvex),
        "signature_count": len(certificate.signatures),
        "max_positive_count": max(
            (s.positive_count for s in certificate.signatures), default=0
        ),
    }
    if not summary:
        doc["signatures"] = [
            {
                "gamma": list(s.gamma),
                "eigenvalues": list(s.eigenvalues),
                "positive_count": s.positive_count,
            }
            for s in certificate.signatures
        ]
    return doc


def strict_result_to_json(result: StrictLorentzianResult) -> dict[str, Any]:
    doc: dict[str, Any] = {"passed": result.passed}
    if not result.passed:
        doc["failure_path"] = [i + 1 for i in (result.failure_path or ())]
        doc["failure_reason"] = result.failure_reason
    return doc


def spot_report_to_json(report: LogConcavitySpotReport) -> dict[str, Any]:
    max_eig = report.max_log_hessian_eigenvalue
    doc: dict[str, Any] = {
        "verdict": report.verdict,
        "tol": report.tol,
        "points_tested": report.points_tested,
        "derivatives_tested": report.derivatives_tested,
        # infinities are not valid JSON scalars; carry them as strings
        "max_log_hessian_eigenvalue": max_eig
        if math.isfinite(max_eig)
        else ("inf" if max_eig > 0 else "-inf"),
    }
    if report.first_failure is not None:
        doc["first_failure"] = report.first_failure
    return doc


def mle_result_to_json(result: MleResult) -> dict[str, Any]:
    ll = result.log_likelihood
    doc: dict[str, Any] = {
        "p_hat": list(result.p_hat.values),
        "log_likelihood": ll if math.isfinite(ll) else "-inf",
        "iterations": result.iterations,
        "converged": result.converged,
        "boundary_flags": list(result.boundary_flags),
    }
    if result.trace is not None:
        doc["trace"] = [[i, ll] for i, ll in result.trace]
    return doc
