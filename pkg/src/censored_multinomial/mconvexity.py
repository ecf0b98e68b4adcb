"""M-convexity of finite subsets of the discrete simplex.

A set ``C`` is M-convex when for any ``alpha, beta`` in ``C`` and any index
``i`` with ``alpha_i > beta_i`` there is an index ``j`` with
``alpha_j < beta_j`` such that moving one unit from ``i`` to ``j`` stays in
``C``. Two independent routes are provided:

* :func:`is_mconvex_bruteforce` checks the exchange axiom over all ordered
  pairs and returns a re-checkable counterexample on failure.
* :func:`find_feasible_index` constructively produces the exchange target
  for partial-sum rectangles, by testing only the two extremal candidates
  (nearest eligible index above ``i``, nearest below); the prefix-sum slack
  conditions it enforces are exactly what makes the exchanged point stay in
  the set.

Indices are 0-based throughout the Python API; external JSON formats are
1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .constraints import (
    ConstraintSet,
    PartialSumRectangle,
    Rectangle,
    enumerate_constraint,
)
from .errors import FeasibilityError
from .simplex import LatticePoint, partial_sums

SelectorOrder = Literal["greater-first", "smaller-first"]


@dataclass(frozen=True)
class ExchangeWitness:
    """One exchange instance: the pair, the shrinking index, and (when found)
    the growing index with the exchanged point."""

    alpha: LatticePoint
    beta: LatticePoint
    i: int
    j: int | None = None
    result: LatticePoint | None = None


@dataclass(frozen=True)
class MConvexityReport:
    verdict: bool
    pairs_checked: int
    counterexample: ExchangeWitness | None = None


@dataclass(frozen=True)
class ExchangeVerification:
    """Outcome of running the constructive exchange over every triple."""

    passed: bool
    triples_checked: int
    order: SelectorOrder
    first_failure: ExchangeWitness | None = None
    failure_reason: str | None = None


def exchange(alpha: Sequence[int], i: int, j: int) -> LatticePoint:
    """Move one unit from coordinate ``i`` to coordinate ``j``.

    Requires ``alpha[i] >= 1`` and ``i != j``; the result stays on the same
    simplex.
    """
    if i == j:
        raise FeasibilityError(f"exchange indices must differ, got i=j={i}")
    if alpha[i] < 1:
        raise FeasibilityError(f"cannot remove a unit from empty coordinate {i}")
    out = list(alpha)
    out[i] -= 1
    out[j] += 1
    return tuple(out)


def is_mconvex_bruteforce(
    constraint: ConstraintSet, cap: int | None = None
) -> MConvexityReport:
    """Decide M-convexity by exhausting the exchange axiom.

    Iterates ordered pairs in lexicographic order; on failure the report
    carries the first violating ``(alpha, beta, i)``. ``pairs_checked``
    counts ordered pairs examined before termination.
    """
    points = enumerate_constraint(constraint, cap)
    member = set(points)
    m = len(points[0]) if points else 0
    indices = range(m)

    # For each alpha and shrinking index i, precompute the bitmask of
    # destinations j whose exchanged point is a member. A pair then checks
    # in O(m) mask operations.
    ok_masks: dict[LatticePoint, list[int]] = {}
    for a in points:
        masks = []
        for i in indices:
            mask = 0
            if a[i] >= 1:
                base = list(a)
                base[i] -= 1
                for j in indices:
                    if j == i:
                        continue
                    base[j] += 1
                    if tuple(base) in member:
                        mask |= 1 << j
                    base[j] -= 1
            masks.append(mask)
        ok_masks[a] = masks

    pairs = 0
    for a in points:
        masks = ok_masks[a]
        for b in points:
            if a == b:
                continue
            pairs += 1
            lt = 0
            gt: list[int] = []
            for k in indices:
                ak, bk = a[k], b[k]
                if ak < bk:
                    lt |= 1 << k
                elif ak > bk:
                    gt.append(k)
            for i in gt:
                if not masks[i] & lt:
                    return MConvexityReport(
                        verdict=False,
                        pairs_checked=pairs,
                        counterexample=ExchangeWitness(alpha=a, beta=b, i=i),
                    )
    return MConvexityReport(verdict=True, pairs_checked=pairs)


def is_feasible_index(
    psr: PartialSumRectangle,
    alpha: Sequence[int],
    beta: Sequence[int],
    i: int,
    j: int,
) -> bool:
    """Direct test of the feasibility definition for a candidate ``j``.

    ``j`` is feasible when ``alpha_j < beta_j`` and either ``j > i`` with
    every prefix sum ``S_k(alpha)`` strictly above its lower bound for
    ``i <= k < j``, or ``j < i`` with every ``S_k(alpha)`` strictly below
    its upper bound for ``j <= k < i`` (``k`` 1-based in both conditions).
    """
    if alpha[j] >= beta[j]:
        return False
    sums = partial_sums(alpha)
    if j > i:
        return all(sums[t] > psr.lower[t] for t in range(i, j))
    if j < i:
        return all(sums[t] < psr.upper[t] for t in range(j, i))
    return False


def _extremal_candidates(
    alpha: Sequence[int], beta: Sequence[int], i: int
) -> tuple[int | None, int | None]:
    """Nearest index above ``i`` and nearest below with ``alpha_j < beta_j``."""
    above = next((k for k in range(i + 1, len(alpha)) if alpha[k] < beta[k]), None)
    below = next((k for k in range(i - 1, -1, -1) if alpha[k] < beta[k]), None)
    return above, below


def find_feasible_index(
    psr: PartialSumRectangle,
    alpha: Sequence[int],
    beta: Sequence[int],
    i: int,
    order: SelectorOrder = "greater-first",
    _validate: bool = True,
) -> int:
    """Return an exchange destination ``j`` for a valid triple.

    Only the two extremal candidates can be feasible on their side: any
    farther index needs strict slack over a superset of prefix sums. At
    least one side always succeeds for members of a partial-sum rectangle;
    ``order`` picks which side is tried first, which matters only when both
    are feasible. The returned index satisfies the feasibility definition,
    and the exchanged point is guaranteed to remain in the set.
    """
    if _validate:
        if not psr.contains(alpha):
            raise FeasibilityError(f"alpha {tuple(alpha)} is not in the constraint set")
        if not psr.contains(beta):
            raise FeasibilityError(f"beta {tuple(beta)} is not in the constraint set")
        if alpha[i] <= beta[i]:
            raise FeasibilityError(
                f"index i={i} requires alpha_i > beta_i, got {alpha[i]} <= {beta[i]}"
            )
    sums = partial_sums(alpha)
    above, below = _extremal_candidates(alpha, beta, i)

    def try_above() -> int | None:
        if above is not None and all(
            sums[t] > psr.lower[t] for t in range(i, above)
        ):
            return above
        return None

    def try_below() -> int | None:
        if below is not None and all(
            sums[t] < psr.upper[t] for t in range(below, i)
        ):
            return below
        return None

    first, second = (
        (try_above, try_below) if order == "greater-first" else (try_below, try_above)
    )
    j = first()
    if j is None:
        j = second()
    if j is None:
        raise FeasibilityError(
            f"no feasible index for alpha={tuple(alpha)}, beta={tuple(beta)}, i={i}; "
            "inputs are not a valid member pair"
        )
    return j


def rectangle_exchange_index(
    rect: Rectangle, alpha: Sequence[int], beta: Sequence[int], i: int
) -> int:
    """Constructive exchange destination for rectangles.

    For componentwise bounds any ``j`` with ``alpha_j < beta_j`` works, since
    ``alpha_j + 1 <= beta_j <= u_j`` and ``alpha_i - 1 >= l_i``; the smallest
    such ``j`` is returned for determinism.
    """
    if not rect.contains(alpha):
        raise FeasibilityError(f"alpha {tuple(alpha)} is not in the constraint set")
    if not rect.contains(beta):
        raise FeasibilityError(f"beta {tuple(beta)} is not in the constraint set")
    if alpha[i] <= beta[i]:
        raise FeasibilityError(
            f"index i={i} requires alpha_i > beta_i, got {alpha[i]} <= {beta[i]}"
        )
    for j, (aj, bj) in enumerate(zip(alpha, beta)):
        if aj < bj:
            return j
    raise FeasibilityError(
        "no index with alpha_j < beta_j; inputs do not lie on the same simplex"
    )


def verify_exchange_theorem(
    psr: PartialSumRectangle,
    order: SelectorOrder = "greater-first",
    cap: int | None = None,
) -> ExchangeVerification:
    """Run the constructive exchange over every triple of a partial-sum rectangle.

    For each ordered pair ``(alpha, beta)`` and each ``i`` with
    ``alpha_i > beta_i``, finds a destination, re-checks it against the
    feasibility definition, and confirms the exchanged point is a member.
    Reports the triple count and the first failure, if any.
    """
    points = enumerate_constraint(psr, cap)
    member = set(points)
    m = psr.spec.m
    triples = 0
    for a in points:
        for b in points:
            if a == b:
                continue
            for i in range(m):
                if a[i] <= b[i]:
                    continue
                triples += 1
                try:
                    j = find_feasible_index(psr, a, b, i, order, _validate=False)
                except FeasibilityError as exc:
                    return ExchangeVerification(
                        passed=False,
                        triples_checked=triples,
                        order=order,
                        first_failure=ExchangeWitness(alpha=a, beta=b, i=i),
                        failure_reason=str(exc),
                    )
                result = exchange(a, i, j)
                if not is_feasible_index(psr, a, b, i, j):
                    return ExchangeVerification(
                        passed=False,
                        triples_checked=triples,
                        order=order,
                        first_failure=ExchangeWitness(
                            alpha=a, beta=b, i=i, j=j, result=result
                        ),
                        failure_reason="selected index fails the feasibility definition",
                    )
                if result not in member:
                    return ExchangeVerification(
                        passed=False,
                        triples_checked=triples,
                        order=order,
                        first_failure=ExchangeWitness(
                            alpha=a, beta=b, i=i, j=j, result=result
                        ),
                        failure_reason="exchanged point left the constraint set",
                    )
    return ExchangeVerification(passed=True, triples_checked=triples, order=order)
