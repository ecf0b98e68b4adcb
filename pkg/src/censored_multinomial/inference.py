"""Maximum likelihood for the multinomial parameter under interval censoring.

Only the event ``[X in C]`` is observed, so the log-likelihood is the log of
the censored-likelihood polynomial. Estimation uses EM: the E-step is the
exact conditional mean ``E[X | X in C, p]`` (a finite weighted sum over the
enumerated set), the M-step divides by ``n``. Each step never decreases the
observed-data log-likelihood, and log-concavity of the likelihood for
rectangles and partial-sum rectangles makes the ascent unimodal, so a
converged interior point is the global maximizer up to tolerance.

Boundary maxima are reported through per-coordinate flags rather than
resolved; see :func:`mle`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .constraints import ConstraintSet, enumerate_constraint
from .errors import DimensionMismatch, EmptyConstraint, InvalidBounds, ZeroLikelihood
from .simplex import LatticePoint, multinomial_coefficient

INTERIOR_FLOOR = 1e-10


@dataclass(frozen=True)
class ProbabilityVector:
    """A point of the probability simplex, stored as floats.

    Use :meth:`normalized` or :meth:`uniform` to construct; direct
    construction validates that the values already sum to one within
    1e-12.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 2:
            raise DimensionMismatch("need at least 2 categories")
        if any(v < 0 for v in vals):
            raise InvalidBounds(f"negative probability in {vals}")
        if abs(sum(vals) - 1.0) > 1e-12:
            raise InvalidBounds(f"probabilities sum to {sum(vals)}, expected 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def uniform(cls, m: int) -> "ProbabilityVector":
        return cls.normalized([1.0] * m)

    @classmethod
    def normalized(cls, values: Sequence[float]) -> "ProbabilityVector":
        vals = [float(v) for v in values]
        if any(v < 0 for v in vals):
            raise InvalidBounds(f"negative probability in {vals}")
        total = sum(vals)
        if total <= 0:
            raise InvalidBounds("probabilities must have a positive sum")
        return cls(tuple(v / total for v in vals))

    @property
    def m(self) -> int:
        return len(self.values)

    def is_interior(self, floor: float = INTERIOR_FLOOR) -> bool:
        return all(v >= floor for v in self.values)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, idx: int) -> float:
        return self.values[idx]


@dataclass(frozen=True)
class MleResult:
    p_hat: ProbabilityVector
    log_likelihood: float
    iterations: int
    converged: bool
    boundary_flags: tuple[bool, ...]
    trace: tuple[tuple[int, float], ...] | None = None


@lru_cache(maxsize=256)
def _censored_model(
    constraint: ConstraintSet, cap: int | None
) -> tuple[tuple[LatticePoint, ...], tuple[float, ...], int, int]:
    """Enumerated points and float multinomial weights, cached per constraint."""
    points = tuple(enumerate_constraint(constraint, cap))
    if not points:
        raise EmptyConstraint("empty constraint set admits no inference")
    coeffs = tuple(float(multinomial_coefficient(x)) for x in points)
    return points, coeffs, constraint.spec.n, constraint.spec.m


def _as_probability(p: ProbabilityVector | Sequence[float], m: int) -> ProbabilityVector:
    vec = p if isinstance(p, ProbabilityVector) else ProbabilityVector.normalized(p)
    if vec.m != m:
        raise DimensionMismatch(f"probability vector has {vec.m} entries, expected {m}")
    return vec


def _likelihood_and_mean(
    constraint: ConstraintSet, p: ProbabilityVector, cap: int | None = None
) -> tuple[float, list[float]]:
    points, coeffs, _, m = _censored_model(constraint, cap)
    total = 0.0
    mean = [0.0] * m
    for x, c in zip(points, coeffs):
        weight = c
        for v, e in zip(p.values, x):
            if e:
                weight *= v**e
        total += weight
        for j, e in enumerate(x):
            if e:
                mean[j] += weight * e
    return total, mean


def log_likelihood(
    constraint: ConstraintSet, p: ProbabilityVector | Sequence[float], cap: int | None = None
) -> float:
    """Log-probability of the censoring event; ``-inf`` when it vanishes."""
    _, _, _, m = _censored_model(constraint, cap)
    vec = _as_probability(p, m)
    value, _ = _likelihood_and_mean(constraint, vec, cap)
    return math.log(value) if value > 0 else -math.inf


def conditional_expectation(
    constraint: ConstraintSet, p: ProbabilityVector | Sequence[float], cap: int | None = None
) -> tuple[float, ...]:
    """Conditional mean count vector given the censoring event; sums to ``n``."""
    _, _, _, m = _censored_model(constraint, cap)
    vec = _as_probability(p, m)
    value, mean = _likelihood_and_mean(constraint, vec, cap)
    if value <= 0:
        raise ZeroLikelihood(f"likelihood vanishes at {vec.values}")
    return tuple(v / value for v in mean)


def em_step(
    constraint: ConstraintSet, p: ProbabilityVector | Sequence[float], cap: int | None = None
) -> ProbabilityVector:
    """One EM update ``p -> E[X | X in C, p] / n``; never decreases the log-likelihood."""
    _, _, n, m = _censored_model(constraint, cap)
    vec = _as_probability(p, m)
    if n == 0:
        return vec
    expectation = conditional_expectation(constraint, vec, cap)
    return ProbabilityVector.normalized(expectation)


def mle(
    constraint: ConstraintSet,
    p0: ProbabilityVector | Sequence[float] | None = None,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    trace: bool = False,
    boundary_window: float = 1e-3,
    restarts: int = 0,
    seed: int | None = None,
    cap: int | None = None,
) -> MleResult:
    """Maximize the censored log-likelihood by EM ascent.

    Iterates until the sup-norm change of ``p`` drops below ``tol`` or
    ``max_iter`` is reached. A coordinate is flagged boundary-attracted
    when it sits below the interior floor, or within ``boundary_window`` of
    zero while the EM map still pushes it down; degenerate boundary maxima
    are approached sublinearly, so such runs may finish unconverged with
    the flag set. ``restarts`` extra seeded interior starts can be used as
    a unimodality cross-check; the best final log-likelihood wins.
    """
    _, _, _, m = _censored_model(constraint, cap)
    starts: list[ProbabilityVector] = [
        ProbabilityVector.uniform(m) if p0 is None else _as_probability(p0, m)
    ]
    if restarts:
        rng = random.Random(seed)
        for _ in range(restarts):
            raw = [-math.log(rng.random()) for _ in range(m)]
            starts.append(ProbabilityVector.normalized(raw))

    best: MleResult | None = None
    for start in starts:
        if not start.is_interior():
            raise InvalidBounds(
                f"starting point must be strictly interior (floor {INTERIOR_FLOOR})"
            )
        current = start
        history: list[tuple[int, float]] = []
        if trace:
            history.append((0, log_likelihood(constraint, current, cap)))
        converged = False
        iterations = 0
        for iterations in range(1, max_iter + 1):
            nxt = em_step(constraint, current, cap)
            delta = max(abs(a - b) for a, b in zip(nxt.values, current.values))
            current = nxt
            if trace:
                history.append((iterations, log_likelihood(constraint, current, cap)))
            if delta < tol:
                converged = True
                break
        final_ll = log_likelihood(constraint, current, cap)
        push = em_step(constraint, current, cap)
        flags = tuple(
            v < INTERIOR_FLOOR
            or (v <= boundary_window and push[j] <= v + 1e-15)
            for j, v in enumerate(current.values)
        )
        result = MleResult(
            p_hat=current,
            log_likelihood=final_ll,
            iterations=iterations,
            converged=converged,
            boundary_flags=flags,
            trace=tuple(history) if trace else None,
        )
        if best is None or result.log_likelihood > best.log_likelihood:
            best = result
    assert best is not None
    return best
