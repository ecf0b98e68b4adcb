"""Batch verification batteries.

Each battery sweeps a family of constraint sets (exhaustive desk-scale
grids plus seeded random draws), runs one of the library's checkers over
every member, and returns a JSON-ready summary whose content is a pure
function of the parameters and seed. Identical sets reached through
different bounds are checked once through a point-set cache; the summary
still counts every swept constraint.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Any, Callable, Iterator, Sequence

from .certification import (
    certify_lorentzian,
    check_complete_logconcavity_spot,
    check_strong_logconcavity_spot,
)
from .constraints import (
    ConstraintSet,
    ExplicitSet,
    PartialSumRectangle,
    Rectangle,
    enumerate_constraint,
)
from .errors import InvalidBounds
from .inference import ProbabilityVector, em_step, log_likelihood
from .mconvexity import is_mconvex_bruteforce, verify_exchange_theorem
from .polynomials import likelihood_polynomial
from .serialization import witness_to_json
from .simplex import LatticePoint, SimplexSpec, enumerate_simplex

BATTERY_KINDS = (
    "rect-mconvex",
    "psr-mconvex",
    "exchange-constructive",
    "lorentz-grid",
    "em-monotone",
)


def iter_rectangle_bounds(m: int, n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All valid rectangle bound pairs: every 0 <= l_j <= u_j <= n per coordinate."""
    intervals = [(lo, hi) for lo in range(n + 1) for hi in range(lo, n + 1)]

    def rec(j: int, lower: list[int], upper: list[int]) -> Iterator:
        if j == m:
            yield tuple(lower), tuple(upper)
            return
        for lo, hi in intervals:
            lower.append(lo)
            upper.append(hi)
            yield from rec(j + 1, lower, upper)
            lower.pop()
            upper.pop()

    return rec(0, [], [])


def iter_psr_bounds(m: int, n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All valid monotone partial-sum bound pairs with l_k <= u_k."""

    def rec(
        k: int, lower: list[int], upper: list[int]
    ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        if k == m - 1:
            yield tuple(lower), tuple(upper)
            return
        lo_floor = lower[-1] if lower else 0
        hi_floor = upper[-1] if upper else 0
        for lo in range(lo_floor, n + 1):
            for hi in range(max(hi_floor, lo), n + 1):
                lower.append(lo)
                upper.append(hi)
                yield from rec(k + 1, lower, upper)
                lower.pop()
                upper.pop()

    return rec(0, [], [])


def random_psr(rng: random.Random, m: int, n: int) -> PartialSumRectangle:
    """A seeded valid partial-sum rectangle (possibly empty as a set).

    Upper bounds are drawn conditionally on staying monotone and above the
    lower bounds, which spreads set sizes from singletons up to the full
    simplex.
    """
    lower = sorted(rng.randint(0, n) for _ in range(m - 1))
    upper = []
    prev = 0
    for lo in lower:
        prev = rng.randint(max(prev, lo), n)
        upper.append(prev)
    return PartialSumRectangle(SimplexSpec(m, n), tuple(lower), tuple(upper))


def _grid_rectangles(m: int, n_values: Sequence[int]) -> Iterator[Rectangle]:
    for n in n_values:
        spec = SimplexSpec(m, n)
        for lower, upper in iter_rectangle_bounds(m, n):
            yield Rectangle(spec, lower, upper)


def _grid_psrs(m: int, n_values: Sequence[int]) -> Iterator[PartialSumRectangle]:
    for n in n_values:
        spec = SimplexSpec(m, n)
        for lower, upper in iter_psr_bounds(m, n):
            yield PartialSumRectangle(spec, lower, upper)


def _random_psrs(
    count: int, seed: int, m_values: Sequence[int], n_max: int
) -> Iterator[PartialSumRectangle]:
    rng = random.Random(seed)
    for _ in range(count):
        m = rng.choice(list(m_values))
        n = rng.randint(2, n_max)
        yield random_psr(rng, m, n)


def _sweep_mconvex(
    constraints: Iterator[ConstraintSet], summary: dict[str, Any]
) -> dict[str, Any]:
    cache: dict[tuple[LatticePoint, ...], bool] = {}
    checked = 0
    failures = 0
    first_failure = None
    for constraint in constraints:
        checked += 1
        key = tuple(enumerate_constraint(constraint))
        verdict = cache.get(key)
        if verdict is None:
            report = is_mconvex_bruteforce(constraint)
            verdict = report.verdict
            cache[key] = verdict
            if not verdict and first_failure is None:
                first_failure = witness_to_json(report.counterexample)
        if not verdict:
            failures += 1
    summary.update(
        checked=checked,
        distinct_sets=len(cache),
        failures=failures,
        first_failure=first_failure,
    )
    return summary


def rect_mconvex_battery(
    m: int = 3, n_values: Sequence[int] = (2, 3, 4, 5, 6)
) -> dict[str, Any]:
    """Brute-force M-convexity over every rectangle of the exhaustive grid."""
    summary: dict[str, Any] = {
        "kind": "rect-mconvex",
        "m": m,
        "n_values": list(n_values),
    }
    return _sweep_mconvex(_grid_rectangles(m, n_values), summary)


def psr_mconvex_battery(
    m: int = 3,
    n_values: Sequence[int] = (2, 3, 4, 5, 6),
    random_cases: int = 500,
    random_m_values: Sequence[int] = (4, 5),
    random_n_max: int = 8,
    seed: int = 0,
) -> dict[str, Any]:
    """Brute-force M-convexity over the exhaustive monotone partial-sum grid
    plus seeded random partial-sum rectangles at larger category counts."""
    summary: dict[str, Any] = {
        "kind": "psr-mconvex",
        "m": m,
        "n_values": list(n_values),
        "random_cases": random_cases,
        "random_m_values": list(random_m_values),
        "random_n_max": random_n_max,
        "seed": seed,
    }

    def constraints() -> Iterator[ConstraintSet]:
        yield from _grid_psrs(m, n_values)
        yield from _random_psrs(random_cases, seed, random_m_values, random_n_max)

    return _sweep_mconvex(constraints(), summary)


def exchange_battery(
    m: int = 3,
    n_values: Sequence[int] = (2, 3, 4, 5, 6),
    random_cases: int = 500,
    random_m_values: Sequence[int] = (4, 5),
    random_n_max: int = 8,
    seed: int = 0,
    orders: Sequence[str] = ("greater-first", "smaller-first"),
) -> dict[str, Any]:
    """Constructive exchange over every triple of every partial-sum rectangle
    in the grid, under each selector order."""
    checked = 0
    triples = 0
    failures = 0
    first_failure = None
    seen: set[tuple[LatticePoint, ...]] = set()
    duplicate_triples: dict[tuple, int] = {}
    for psr in list(_grid_psrs(m, n_values)) + list(
        _random_psrs(random_cases, seed, random_m_values, random_n_max)
    ):
        checked += 1
        key = (psr.spec, psr.lower, psr.upper)
        if key in duplicate_triples:
            triples += duplicate_triples[key]
            continue
        per_constraint = 0
        for order in orders:
            report = verify_exchange_theorem(psr, order)  # type: ignore[arg-type]
            per_constraint += report.triples_checked
            if not report.passed:
                failures += 1
                if first_failure is None:
                    first_failure = {
                        "order": report.order,
                        "witness": witness_to_json(report.first_failure),
                        "reason": report.failure_reason,
                    }
        duplicate_triples[key] = per_constraint
        triples += per_constraint
    return {
        "kind": "exchange-constructive",
        "m": m,
        "n_values": list(n_values),
        "random_cases": random_cases,
        "random_m_values": list(random_m_values),
        "random_n_max": random_n_max,
        "seed": seed,
        "orders": list(orders),
        "checked": checked,
        "triples_checked": triples,
        "failures": failures,
        "first_failure": first_failure,
    }


def lorentz_battery(
    m: int = 3,
    n_values: Sequence[int] = (2, 3, 4, 5, 6),
    random_cases: int = 500,
    random_m_values: Sequence[int] = (4, 5),
    random_n_max: int = 8,
    seed: int = 0,
    tol: float = 1e-9,
    stability_tols: Sequence[float] = (1e-10, 1e-6),
) -> dict[str, Any]:
    """Certify the likelihood of every non-empty constraint in the combined
    rectangle and partial-sum grids; signatures must be stable across the
    given tolerance band."""
    cache: dict[tuple[LatticePoint, ...], tuple[bool, int, bool]] = {}
    checked = 0
    skipped_empty = 0
    failures = 0
    unstable = 0
    max_positive = 0
    first_failure = None

    def constraints() -> Iterator[ConstraintSet]:
        yield from _grid_rectangles(m, n_values)
        yield from _grid_psrs(m, n_values)
        yield from _random_psrs(random_cases, seed, random_m_values, random_n_max)

    for constraint in constraints():
        if constraint.spec.n < 2:
            continue
        key = tuple(enumerate_constraint(constraint))
        if not key:
            skipped_empty += 1
            continue
        checked += 1
        cached = cache.get(key)
        if cached is None:
            certificate = certify_lorentzian(
                likelihood_polynomial(constraint), tol=tol
            )
            positive = max(
                (s.positive_count for s in certificate.signatures), default=0
            )
            stable = all(
                s.positive_count_at(t) == s.positive_count
                for s in certificate.signatures
                for t in stability_tols
            )
            cached = (certificate.verdict, positive, stable)
            cache[key] = cached
            if not certificate.verdict and first_failure is None:
                first_failure = {
                    "constraint_points": [list(p) for p in key],
                    "support_mconvex": certificate.support_mconvex.verdict,
                    "max_positive_count": positive,
                }
        verdict, positive, stable = cached
        max_positive = max(max_positive, positive)
        if not verdict:
            failures += 1
        if not stable:
            unstable += 1
    return {
        "kind": "lorentz-grid",
        "m": m,
        "n_values": list(n_values),
        "random_cases": random_cases,
        "random_m_values": list(random_m_values),
        "random_n_max": random_n_max,
        "seed": seed,
        "tol": tol,
        "stability_tols": list(stability_tols),
        "checked": checked,
        "skipped_empty": skipped_empty,
        "distinct_sets": len(cache),
        "max_positive_count": max_positive,
        "unstable": unstable,
        "failures": failures,
        "first_failure": first_failure,
    }


def random_constraint(rng: random.Random) -> ConstraintSet:
    """A seeded random non-empty constraint of any family, desk scale."""
    while True:
        m = rng.randint(2, 4)
        n = rng.randint(1, 8)
        spec = SimplexSpec(m, n)
        kind = rng.choice(("rectangle", "psr", "explicit"))
        if kind == "rectangle":
            lower = [rng.randint(0, n) for _ in range(m)]
            upper = [min(n, lo + rng.randint(0, n)) for lo in lower]
            constraint: ConstraintSet = Rectangle(spec, tuple(lower), tuple(upper))
        elif kind == "psr":
            constraint = random_psr(rng, m, n)
        else:
            points = enumerate_simplex(spec)
            count = rng.randint(1, len(points))
            constraint = ExplicitSet.from_points(spec, rng.sample(points, count))
        if enumerate_constraint(constraint):
            return constraint


def random_interior_probability(rng: random.Random, m: int) -> ProbabilityVector:
    return ProbabilityVector.normalized([rng.uniform(0.05, 1.0) for _ in range(m)])


def em_monotone_battery(cases: int = 500, seed: int = 0) -> dict[str, Any]:
    """One EM step on seeded random (constraint, parameter) pairs; the
    log-likelihood must never drop by more than float slack."""
    rng = random.Random(seed)
    failures = 0
    worst_drop = 0.0
    first_failure = None
    for case in range(cases):
        constraint = random_constraint(rng)
        p = random_interior_probability(rng, constraint.spec.m)
        before = log_likelihood(constraint, p)
        after = log_likelihood(constraint, em_step(constraint, p))
        drop = before - after
        worst_drop = max(worst_drop, drop)
        if after < before - 1e-12:
            failures += 1
            if first_failure is None:
                first_failure = {
                    "case": case,
                    "constraint": "random",
                    "before": before,
                    "after": after,
                }
    return {
        "kind": "em-monotone",
        "cases": cases,
        "seed": seed,
        "checked": cases,
        "worst_drop": worst_drop,
        "failures": failures,
        "first_failure": first_failure,
    }


def random_positive_point(rng: random.Random, m: int) -> tuple:
    """A strictly positive rational point with entries in [0.1, 10]."""
    return tuple(Fraction(rng.randint(100, 10_000), 1000) for _ in range(m))


def random_gamma(rng: random.Random, m: int, degree: int) -> tuple[int, ...]:
    """A random differentiation multi-index of total order 0..degree."""
    order = rng.randint(0, degree)
    gamma = [0] * m
    for _ in range(order):
        gamma[rng.randrange(m)] += 1
    return tuple(gamma)


def random_direction(rng: random.Random, m: int) -> tuple:
    """A non-negative, not-all-zero rational direction with entries in [0, 10]."""
    while True:
        direction = tuple(
            Fraction(rng.randint(0, 1000), 100) if rng.random() < 0.8 else Fraction(0)
            for _ in range(m)
        )
        if any(direction):
            return direction


def spot_logconcave_battery(
    f, mode: str, count: int = 1000, seed: int = 0, tol: float = 1e-8
) -> dict[str, Any]:
    """Merged spot report over seeded random (derivative, point) draws.

    ``mode`` is ``strong`` (random mixed derivatives) or ``complete``
    (random directional-derivative strings).
    """
    rng = random.Random(seed)
    max_eig = -float("inf")
    points_tested = 0
    derivatives_tested = 0
    failures = 0
    first_failure = None
    for _ in range(count):
        point = random_positive_point(rng, f.m)
        if mode == "strong":
            report = check_strong_logconcavity_spot(
                f, [random_gamma(rng, f.m, f.degree)], [point], tol=tol
            )
        elif mode == "complete":
            depth = rng.randint(0, min(f.degree, 3))
            directions = [random_direction(rng, f.m) for _ in range(depth)]
            report = check_complete_logconcavity_spot(
                f, directions, [point], tol=tol, max_k=depth
            )
        else:
            raise InvalidBounds(f"unknown spot mode '{mode}'")
        points_tested += report.points_tested
        derivatives_tested += report.derivatives_tested
        max_eig = max(max_eig, report.max_log_hessian_eigenvalue)
        if not report.verdict:
            failures += 1
            if first_failure is None:
                first_failure = report.first_failure or "eigenvalue above tolerance"
    return {
        "kind": f"spot-{mode}",
        "count": count,
        "seed": seed,
        "tol": tol,
        "points_tested": points_tested,
        "derivatives_tested": derivatives_tested,
        "max_log_hessian_eigenvalue": max_eig
        if math.isfinite(max_eig)
        else ("inf" if max_eig > 0 else "-inf"),
        "failures": failures,
        "first_failure": first_failure,
        "verdict": failures == 0,
    }


BatteryRunner = Callable[..., dict[str, Any]]

_RUNNERS: dict[str, BatteryRunner] = {
    "rect-mconvex": rect_mconvex_battery,
    "psr-mconvex": psr_mconvex_battery,
    "exchange-constructive": exchange_battery,
    "lorentz-grid": lorentz_battery,
    "em-monotone": em_monotone_battery,
}


def run_battery(kind: str, **kwargs: Any) -> dict[str, Any]:
    """Dispatch a battery by kind; summaries are deterministic given a seed."""
    if kind not in _RUNNERS:
        raise InvalidBounds(
            f"unknown battery kind '{kind}'; expected one of {', '.join(BATTERY_KINDS)}"
        )
    return _RUNNERS[kind](**kwargs)
