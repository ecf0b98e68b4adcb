"""Constraint families over the discrete simplex.

Two interval-censoring families are supported, plus explicit point sets:

* ``Rectangle`` confines each component ``x_j`` to an interval ``[l_j, u_j]``.
* ``PartialSumRectangle`` confines each prefix sum ``S_k = x_1 + ... + x_k``
  (k = 1..m-1) to an interval ``[l_k, u_k]``, with both bound vectors
  required to be non-decreasing.

For ``m = 2`` the two families coincide and for ``m = 3`` every partial-sum
rectangle is a rectangle; the closed-form conversions for these cases live
here, together with minimal bounding sets in either family for arbitrary
point sets. Enumeration is depth-first with exact reachability pruning, so
its cost is proportional to the output size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import CapacityError, DimensionMismatch, EmptyConstraint, InvalidBounds
from .simplex import (
    LatticePoint,
    SimplexSpec,
    partial_sums,
    resolve_cap,
)


@dataclass(frozen=True)
class Rectangle:
    """Componentwise interval constraint ``l_j <= x_j <= u_j`` on the simplex."""

    spec: SimplexSpec
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self) -> None:
        m, n = self.spec.m, self.spec.n
        object.__setattr__(self, "lower", tuple(int(v) for v in self.lower))
        object.__setattr__(self, "upper", tuple(int(v) for v in self.upper))
        if len(self.lower) != m or len(self.upper) != m:
            raise DimensionMismatch(
                f"rectangle bounds must have length m={m}, got {len(self.lower)} and {len(self.upper)}"
            )
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper), start=1):
            if not 0 <= lo <= hi <= n:
                raise InvalidBounds(
                    f"rectangle bound {j} invalid: need 0 <= l <= u <= n, got l={lo}, u={hi}, n={n}",
                    index=j,
                )

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.spec.m:
            raise DimensionMismatch(
                f"point has {len(x)} entries, expected m={self.spec.m}"
            )
        return all(lo <= v <= hi for v, lo, hi in zip(x, self.lower, self.upper))


@dataclass(frozen=True)
class PartialSumRectangle:
    """Prefix-sum interval constraint ``l_k <= S_k(x) <= u_k`` for k = 1..m-1.

    Both bound vectors must be non-decreasing; non-monotone bounds are
    rejected rather than normalized.
    """

    spec: SimplexSpec
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self) -> None:
        m, n = self.spec.m, self.spec.n
        object.__setattr__(self, "lower", tuple(int(v) for v in self.lower))
        object.__setattr__(self, "upper", tuple(int(v) for v in self.upper))
        if len(self.lower) != m - 1 or len(self.upper) != m - 1:
            raise DimensionMismatch(
                f"partial-sum bounds must have length m-1={m - 1}, "
                f"got {len(self.lower)} and {len(self.upper)}"
            )
        for name, bounds in (("l", self.lower), ("u", self.upper)):
            prev = 0
            for k, v in enumerate(bounds, start=1):
                if not 0 <= v <= n:
                    raise InvalidBounds(
                        f"partial-sum bound {name}_{k}={v} outside [0, n={n}]", index=k
                    )
                if v < prev:
                    raise InvalidBounds(
                        f"partial-sum bounds {name} not non-decreasing at index {k}: "
                        f"{name}_{k}={v} < {name}_{k - 1}={prev}",
                        index=k,
                    )
                prev = v
        for k, (lo, hi) in enumerate(zip(self.lower, self.upper), start=1):
            if lo > hi:
                raise InvalidBounds(
                    f"partial-sum bound {k} empty: l_{k}={lo} > u_{k}={hi}", index=k
                )

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.spec.m:
            raise DimensionMismatch(
                f"point has {len(x)} entries, expected m={self.spec.m}"
            )
        sums = partial_sums(x)
        return all(
            lo <= s <= hi for s, lo, hi in zip(sums, self.lower, self.upper)
        )


@dataclass(frozen=True)
class ExplicitSet:
    """An explicit, sorted, duplicate-free set of simplex points."""

    spec: SimplexSpec
    points: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(tuple(int(v) for v in p) for p in self.points)
        for p in pts:
            if not self.spec.contains(p):
                raise DimensionMismatch(
                    f"point {p} is not in the simplex m={self.spec.m}, n={self.spec.n}"
                )
        if list(pts) != sorted(set(pts)):
            raise InvalidBounds("explicit set must be sorted and duplicate-free")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(
        cls, spec: SimplexSpec, points: Iterable[Sequence[int]]
    ) -> "ExplicitSet":
        """Build an explicit set from any iterable, sorting and deduplicating."""
        normalized = sorted({tuple(int(v) for v in p) for p in points})
        return cls(spec, tuple(normalized))

    def contains(self, x: Sequence[int]) -> bool:
        return tuple(x) in set(self.points)


#: Any of the three constraint families.
ConstraintSet = Union[Rectangle, PartialSumRectangle, ExplicitSet]


def constraint_spec(constraint: ConstraintSet) -> SimplexSpec:
    """The simplex a constraint lives on."""
    return constraint.spec


def contains(constraint: ConstraintSet, x: Sequence[int]) -> bool:
    """Membership test for any constraint family."""
    return constraint.contains(x)


def rectangle_contains(rect: Rectangle, x: Sequence[int]) -> bool:
    """True iff every component of ``x`` respects its interval."""
    return rect.contains(x)


def psr_contains(psr: PartialSumRectangle, x: Sequence[int]) -> bool:
    """True iff every prefix sum of ``x`` respects its interval."""
    return psr.contains(x)


def _iter_rectangle(rect: Rectangle) -> Iterator[LatticePoint]:
    m, n = rect.spec.m, rect.spec.n
    lower, upper = rect.lower, rect.upper
    # Suffix bound sums make the pruning exact: a prefix is extended only if
    # the remaining coordinates can still absorb exactly the remaining count.
    suffix_lo = [0] * (m + 1)
    suffix_hi = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix_lo[j] = suffix_lo[j + 1] + lower[j]
        suffix_hi[j] = suffix_hi[j + 1] + upper[j]
    point = [0] * m

    def rec(idx: int, remaining: int) -> Iterator[LatticePoint]:
        if idx == m - 1:
            point[idx] = remaining
            yield tuple(point)
            return
        lo = max(lower[idx], remaining - suffix_hi[idx + 1])
        hi = min(upper[idx], remaining - suffix_lo[idx + 1])
        for v in range(lo, hi + 1):
            point[idx] = v
            yield from rec(idx + 1, remaining - v)

    if suffix_lo[0] <= n <= suffix_hi[0]:
        yield from rec(0, n)


def _iter_psr(psr: PartialSumRectangle) -> Iterator[LatticePoint]:
    m, n = psr.spec.m, psr.spec.n
    lower, upper = psr.lower, psr.upper
    point = [0] * m

    # Every partial prefix below extends to at least one full point: prefix
    # sums are non-decreasing and bounded by u_{m-1} <= n, so the last
    # coordinate can always absorb the remainder. Work is therefore
    # proportional to the number of points produced.
    def rec(idx: int, prefix: int) -> Iterator[LatticePoint]:
        if idx == m - 1:
            point[idx] = n - prefix
            yield tuple(point)
            return
        lo = max(lower[idx], prefix)
        hi = min(upper[idx], n)
        for s in range(lo, hi + 1):
            point[idx] = s - prefix
            yield from rec(idx + 1, s)

    yield from rec(0, 0)


def enumerate_constraint(
    constraint: ConstraintSet, cap: int | None = None
) -> list[LatticePoint]:
    """Materialize a constraint set in lexicographic order.

    An empty result is legal and returns an empty list. Raises
    :class:`CapacityError` once more than the cap's worth of points has
    been produced.
    """
    limit = resolve_cap(cap)
    if isinstance(constraint, ExplicitSet):
        if len(constraint.points) > limit:
            raise CapacityError(
                f"explicit set has {len(constraint.points)} points, over cap {limit}",
                requested=len(constraint.points),
                cap=limit,
            )
        return list(constraint.points)
    if isinstance(constraint, Rectangle):
        source = _iter_rectangle(constraint)
    elif isinstance(constraint, PartialSumRectangle):
        source = _iter_psr(constraint)
    else:
        raise TypeError(f"not a constraint set: {constraint!r}")
    out: list[LatticePoint] = []
    for pt in source:
        if len(out) >= limit:
            raise CapacityError(
                f"constraint enumeration exceeded cap {limit}", cap=limit
            )
        out.append(pt)
    return out


def to_explicit(constraint: ConstraintSet, cap: int | None = None) -> ExplicitSet:
    """Materialize any constraint as an :class:`ExplicitSet`."""
    if isinstance(constraint, ExplicitSet):
        return constraint
    return ExplicitSet(constraint.spec, tuple(enumerate_constraint(constraint, cap)))


def rectangle_from_psr_m2(psr: PartialSumRectangle) -> Rectangle:
    """The rectangle identical to a two-category partial-sum rectangle.

    With ``m = 2`` the single prefix-sum interval ``[l_1, u_1]`` pins the
    second component to ``[n - u_1, n - l_1]``.
    """
    if psr.spec.m != 2:
        raise DimensionMismatch(f"conversion requires m=2, got m={psr.spec.m}")
    n = psr.spec.n
    l1, u1 = psr.lower[0], psr.upper[0]
    return Rectangle(psr.spec, (l1, n - u1), (u1, n - l1))


def psr_to_rectangle_m3(psr: PartialSumRectangle) -> Rectangle:
    """The rectangle identical to a three-category partial-sum rectangle.

    The middle component is confined to ``[(l_2 - u_1)^+, u_2 - l_1]`` and
    the last to ``[n - u_2, n - l_2]``; the first keeps ``[l_1, u_1]``.
    """
    if psr.spec.m != 3:
        raise DimensionMismatch(f"conversion requires m=3, got m={psr.spec.m}")
    n = psr.spec.n
    (l1, l2), (u1, u2) = psr.lower, psr.upper
    return Rectangle(
        psr.spec,
        (l1, max(l2 - u1, 0), n - u2),
        (u1, u2 - l1, n - l2),
    )


def minimal_bounding_rectangle(points: ExplicitSet) -> Rectangle:
    """Smallest rectangle containing a non-empty point set (componentwise min/max)."""
    if not points.points:
        raise EmptyConstraint("cannot bound an empty set")
    m = points.spec.m
    lower = tuple(min(p[j] for p in points.points) for j in range(m))
    upper = tuple(max(p[j] for p in points.points) for j in range(m))
    return Rectangle(points.spec, lower, upper)


def minimal_bounding_psr(points: ExplicitSet) -> PartialSumRectangle:
    """Smallest partial-sum rectangle containing a non-empty point set.

    Bounds are the pointwise min and max of each prefix sum; those are
    automatically non-decreasing, so the result is always valid.
    """
    if not points.points:
        raise EmptyConstraint("cannot bound an empty set")
    m = points.spec.m
    sums = [partial_sums(p) for p in points.points]
    lower = tuple(min(s[k] for s in sums) for k in range(m - 1))
    upper = tuple(max(s[k] for s in sums) for k in range(m - 1))
    return PartialSumRectangle(points.spec, lower, upper)
