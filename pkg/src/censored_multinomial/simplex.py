"""The discrete simplex of integer count vectors.

A point of the discrete simplex is an ``m``-tuple of non-negative integers
summing to ``n``. This module enumerates the simplex in lexicographic
order, computes partial sums and exact multinomial coefficients, and hosts
the enumeration cap shared by every enumerator in the package.

All arithmetic here is exact integer arithmetic; nothing in this module
touches floating point.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Sequence

from .errors import CapacityError, DimensionMismatch

#: A lattice point is a plain tuple of non-negative integer counts.
LatticePoint = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10_000_000
ENUMERATION_CAP_ENV = "CENSORED_MULTINOMIAL_ENUM_CAP"


def resolve_cap(cap: int | None = None) -> int:
    """Effective enumeration cap: explicit argument, else env override, else default."""
    if cap is not None:
        return cap
    env = os.environ.get(ENUMERATION_CAP_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_ENUMERATION_CAP


@dataclass(frozen=True)
class SimplexSpec:
    """Shape of a discrete simplex: ``m`` categories, total count ``n``.

    ``n`` in {0, 1} is accepted as a degenerate but valid shape.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise DimensionMismatch(f"need at least 2 categories, got m={self.m}")
        if self.n < 0:
            raise DimensionMismatch(f"sample size must be non-negative, got n={self.n}")

    def contains(self, x: Sequence[int]) -> bool:
        """True iff ``x`` is a valid point of this simplex."""
        return (
            len(x) == self.m
            and all(isinstance(v, int) and v >= 0 for v in x)
            and sum(x) == self.n
        )

    def require_point(self, x: Sequence[int]) -> LatticePoint:
        """Validate ``x`` and return it as a tuple, raising on mismatch."""
        if len(x) != self.m:
            raise DimensionMismatch(f"point has {len(x)} entries, expected m={self.m}")
        pt = tuple(int(v) for v in x)
        if any(v < 0 for v in pt):
            raise DimensionMismatch(f"negative count in point {pt}")
        if sum(pt) != self.n:
            raise DimensionMismatch(f"point {pt} sums to {sum(pt)}, expected n={self.n}")
        return pt


def simplex_size(spec: SimplexSpec) -> int:
    """Number of points of the simplex, C(n+m-1, m-1), exactly."""
    return math.comb(spec.n + spec.m - 1, spec.m - 1)


def iter_simplex(spec: SimplexSpec) -> Iterator[LatticePoint]:
    """Yield every point of the simplex in lexicographic order."""
    m, n = spec.m, spec.n
    point = [0] * m

    def rec(idx: int, remaining: int) -> Iterator[LatticePoint]:
        if idx == m - 1:
            point[idx] = remaining
            yield tuple(point)
            return
        for v in range(remaining + 1):
            point[idx] = v
            yield from rec(idx + 1, remaining - v)

    return rec(0, n)


def enumerate_simplex(spec: SimplexSpec, cap: int | None = None) -> list[LatticePoint]:
    """Materialize the simplex in lexicographic order.

    Raises :class:`CapacityError` when the simplex holds more points than
    the enumeration cap.
    """
    size = simplex_size(spec)
    limit = resolve_cap(cap)
    if size > limit:
        raise CapacityError(
            f"simplex with m={spec.m}, n={spec.n} has {size} points, over cap {limit}",
            requested=size,
            cap=limit,
        )
    return list(iter_simplex(spec))


def partial_sums(x: Sequence[int]) -> tuple[int, ...]:
    """Prefix sums (S_1, ..., S_m) of a count vector; S_m is the total."""
    return tuple(accumulate(x))


def multinomial_coefficient(x: Sequence[int]) -> int:
    """Exact multinomial coefficient n!/(x_1! ... x_m!) for n = sum(x).

    Computed as a product of binomials so no division is ever performed.
    """
    result = 1
    remaining = sum(x)
    for count in x:
        result *= math.comb(remaining, count)
        remaining -= count
    return result
