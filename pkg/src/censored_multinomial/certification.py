"""Lorentzian certification and log-concavity spot checks.

The operational certifier is finite and exact-friendly: a homogeneous
polynomial with non-negative coefficients is Lorentzian iff its support is
M-convex and, for every multi-index ``gamma`` of total degree ``n - 2``,
the (constant) Hessian of the corresponding quadratic mixed derivative has
at most one positive eigenvalue. Hessians are assembled exactly from
rational coefficients and converted to floats once, immediately before the
symmetric eigensolve.

The recursive strictly-Lorentzian test and the strong/complete
log-concavity checks are sampling or sufficient-condition tools, not
decision procedures; their reports say so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidBounds, ZeroLikelihood
from .mconvexity import MConvexityReport, is_mconvex_bruteforce
from .polynomials import ExponentVector, HomogeneousPolynomial, Rational, Scalar
from .simplex import SimplexSpec, enumerate_simplex


@dataclass(frozen=True)
class SignatureReport:
    """Eigenvalue signature of one quadratic mixed derivative's Hessian.

    ``scale`` is ``1 + max|H|``; an eigenvalue counted as positive iff it
    exceeded ``tol * scale``, so signatures can be re-classified at other
    tolerances without another eigensolve.
    """

    gamma: ExponentVector
    eigenvalues: tuple[float, ...]
    positive_count: int
    scale: float = 1.0

    def positive_count_at(self, tol: float) -> int:
        return sum(1 for v in self.eigenvalues if v > tol * self.scale)


@dataclass(frozen=True)
class LorentzianCertificate:
    support_mconvex: MConvexityReport
    signatures: tuple[SignatureReport, ...]
    verdict: bool
    tol: float
    degenerate: bool = False


@dataclass(frozen=True)
class LogConcavitySpotReport:
    """Sampling evidence, not a decision: spot checks at supplied points."""

    points_tested: int
    derivatives_tested: int
    max_log_hessian_eigenvalue: float
    verdict: bool
    tol: float
    first_failure: str | None = None


@dataclass(frozen=True)
class StrictLorentzianResult:
    """Outcome of the recursive strictly-Lorentzian test.

    ``failure_path`` lists the variable indices differentiated (0-based)
    before the failing polynomial was reached.
    """

    passed: bool
    failure_path: tuple[int, ...] | None = None
    failure_reason: str | None = None


def _multi_factorial(exp: ExponentVector) -> int:
    out = 1
    for e in exp:
        out *= math.factorial(e)
    return out


def certify_lorentzian(
    f: HomogeneousPolynomial, tol: float = 1e-9, cap: int | None = None
) -> LorentzianCertificate:
    """Certificate from support M-convexity plus per-gamma Hessian signatures.

    For degree below 2 there are no quadratic derivatives; the certificate
    follows the support condition alone and is flagged ``degenerate``. An
    eigenvalue counts as positive iff it exceeds ``tol * (1 + max|H|)``.
    """
    support_report = is_mconvex_bruteforce(f.support(), cap)
    if f.degree < 2:
        return LorentzianCertificate(
            support_mconvex=support_report,
            signatures=(),
            verdict=support_report.verdict,
            tol=tol,
            degenerate=True,
        )
    gammas = enumerate_simplex(SimplexSpec(f.m, f.degree - 2), cap)
    # The Hessian of the quadratic derivative by gamma has constant entries
    # c_delta * prod(delta_k!) with delta = gamma + e_i + e_j, so each matrix
    # assembles from dictionary lookups of these exact weights.
    weights = {exp: coeff * _multi_factorial(exp) for exp, coeff in f.terms.items()}
    m = f.m
    stacked = np.zeros((len(gammas), m, m), dtype=float)
    for g_idx, gamma in enumerate(gammas):
        delta = list(gamma)
        for i in range(m):
            for j in range(i, m):
                delta[i] += 1
                delta[j] += 1
                value = weights.get(tuple(delta))
                delta[i] -= 1
                delta[j] -= 1
                if value is not None:
                    fv = float(value)
                    stacked[g_idx, i, j] = fv
                    stacked[g_idx, j, i] = fv
    eigenvalues = np.linalg.eigvalsh(stacked)
    signatures = []
    all_ok = True
    for g_idx, gamma in enumerate(gammas):
        evs = eigenvalues[g_idx][::-1]
        scale = 1.0 + float(np.max(np.abs(stacked[g_idx])))
        positive = int(np.sum(evs > tol * scale))
        if positive > 1:
            all_ok = False
        signatures.append(
            SignatureReport(
                gamma=gamma,
                eigenvalues=tuple(float(v) for v in evs),
                positive_count=positive,
                scale=scale,
            )
        )
    return LorentzianCertificate(
        support_mconvex=support_report,
        signatures=tuple(signatures),
        verdict=support_report.verdict and all_ok,
        tol=tol,
    )


def strictly_lorentzian_check(
    f: HomogeneousPolynomial, tol: float = 1e-9
) -> StrictLorentzianResult:
    """Recursive strictly-Lorentzian test (a sufficient condition only).

    Degree 0 or 1 passes when every monomial of that degree is present with
    a positive coefficient; degree 2 additionally needs a non-singular
    Hessian with exactly one positive eigenvalue; higher degrees require
    every first partial to pass at one degree lower. Missing monomials at
    any level fail the all-positive-coefficients requirement.
    """
    memo: dict[tuple[int, frozenset], StrictLorentzianResult] = {}

    def full_support_failure(g: HomogeneousPolynomial) -> str | None:
        expected = math.comb(g.degree + g.m - 1, g.m - 1)
        if len(g.terms) == expected:
            return None
        return (
            f"{expected - len(g.terms)} of {expected} monomials of degree "
            f"{g.degree} are missing"
        )

    def check(g: HomogeneousPolynomial, path: tuple[int, ...]) -> StrictLorentzianResult:
        key = (g.degree, frozenset(g.terms.items()))
        hit = memo.get(key)
        if hit is not None:
            return hit
        missing = full_support_failure(g)
        if missing is not None:
            result = StrictLorentzianResult(False, path, missing)
            memo[key] = result
            return result
        if g.degree <= 1:
            result = StrictLorentzianResult(True)
        elif g.degree == 2:
            hess = np.array([[float(v) for v in row] for row in g.hessian([1] * g.m)])
            evs = np.linalg.eigvalsh(hess)
            threshold = tol * (1.0 + float(np.max(np.abs(hess))))
            if float(np.min(np.abs(evs))) <= threshold:
                result = StrictLorentzianResult(False, path, "singular Hessian")
            elif int(np.sum(evs > threshold)) != 1:
                result = StrictLorentzianResult(
                    False,
                    path,
                    f"Hessian has {int(np.sum(evs > threshold))} positive eigenvalues,"
                    " expected exactly one",
                )
            else:
                result = StrictLorentzianResult(True)
        else:
            result = StrictLorentzianResult(True)
            unit = [0] * g.m
            for i in range(g.m):
                unit[i] = 1
                sub = check(g.partial_derivative(unit), path + (i,))
                unit[i] = 0
                if not sub.passed:
                    result = sub
                    break
        memo[key] = result
        return result

    return check(f, ())


def _as_fractions(w: Sequence[Scalar]) -> tuple[Fraction, ...]:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in w)


def log_hessian_max_eigenvalue(f: HomogeneousPolynomial, w: Sequence[Scalar]) -> float:
    """Largest eigenvalue of the Hessian of ``log f`` at a positive point.

    Assembled exactly as ``(f * hess(f) - grad(f) grad(f)^T) / f^2`` from
    rational derivatives, then converted to floats for the eigensolve.
    """
    wf = _as_fractions(w)
    if any(v <= 0 for v in wf):
        raise InvalidBounds("log-Hessian requires a strictly positive point")
    value = f.evaluate(wf)
    if value <= 0:
        raise ZeroLikelihood(f"polynomial is not positive at {tuple(map(float, wf))}")
    grad = f.gradient(wf)
    hess = f.hessian(wf)
    m = f.m
    log_hess = np.zeros((m, m), dtype=float)
    for i in range(m):
        for j in range(i, m):
            entry = (value * hess[i][j] - grad[i] * grad[j]) / (value * value)
            log_hess[i, j] = float(entry)
            log_hess[j, i] = float(entry)
    return float(np.max(np.linalg.eigvalsh(log_hess)))


def check_strong_logconcavity_spot(
    f: HomogeneousPolynomial,
    gammas: Sequence[Sequence[int]],
    points: Sequence[Sequence[Scalar]],
    tol: float = 1e-8,
) -> LogConcavitySpotReport:
    """Spot-check log-concavity of mixed derivatives at positive points.

    Each derivative that is identically zero passes; otherwise it must be
    positive at every point with log-Hessian max eigenvalue at most ``tol``.
    ``derivatives_tested`` counts multi-indices, ``points_tested`` counts
    (derivative, point) evaluations.
    """
    max_eig = -math.inf
    tested = 0
    failure: str | None = None
    for gamma in gammas:
        g = f.partial_derivative(gamma)
        if g.is_zero:
            continue
        for w in points:
            wf = _as_fractions(w)
            if any(v <= 0 for v in wf):
                raise InvalidBounds("spot-check points must be strictly positive")
            tested += 1
            if g.evaluate(wf) <= 0:
                failure = failure or (
                    f"derivative by {tuple(gamma)} is non-positive at "
                    f"{tuple(map(float, wf))}"
                )
                max_eig = math.inf
                continue
            max_eig = max(max_eig, log_hessian_max_eigenvalue(g, wf))
    return LogConcavitySpotReport(
        points_tested=tested,
        derivatives_tested=len(gammas),
        max_log_hessian_eigenvalue=max_eig,
        verdict=max_eig <= tol,
        tol=tol,
        first_failure=failure,
    )


def check_complete_logconcavity_spot(
    f: HomogeneousPolynomial,
    directions: Sequence[Sequence[Rational]],
    points: Sequence[Sequence[Scalar]],
    tol: float = 1e-8,
    max_k: int | None = None,
) -> LogConcavitySpotReport:
    """Spot-check log-concavity along strings of directional derivatives.

    Tests the prefixes of ``directions`` of length 0 through ``max_k``
    (capped at the degree): each prefix derivative must be non-negative at
    every point and log-concave where positive.
    """
    limit = min(len(directions), f.degree)
    if max_k is not None:
        if not 0 <= max_k <= f.degree:
            raise InvalidBounds(f"max_k must lie in [0, degree], got {max_k}")
        limit = min(limit, max_k)
    max_eig = -math.inf
    tested = 0
    strings = 0
    failure: str | None = None
    g = f
    for k in range(limit + 1):
        strings += 1
        if g.is_zero:
            break
        for w in points:
            wf = _as_fractions(w)
            if any(v <= 0 for v in wf):
                raise InvalidBounds("spot-check points must be strictly positive")
            tested += 1
            value = g.evaluate(wf)
            if value < 0 or (value == 0 and not g.is_zero):
                failure = failure or (
                    f"derivative string of length {k} is not positive at "
                    f"{tuple(map(float, wf))}"
                )
                max_eig = math.inf
                continue
            max_eig = max(max_eig, log_hessian_max_eigenvalue(g, wf))
        if k < limit:
            g = g.directional_derivative(directions[k])
    return LogConcavitySpotReport(
        points_tested=tested,
        derivatives_tested=strings,
        max_log_hessian_eigenvalue=max_eig,
        verdict=max_eig <= tol,
        tol=tol,
        first_failure=failure,
    )
