"""Exact sparse homogeneous polynomials with positive rational coefficients.

The censored likelihoods are homogeneous polynomials whose monomials are
indexed by lattice points and whose coefficients are multinomial counts.
Coefficients are kept as exact :class:`fractions.Fraction` values; floating
point enters only at evaluation time, and then with a deterministic
(lexicographic) term order so float results are reproducible.

The zero polynomial is representable (empty term map with a declared
degree): mixed derivatives are allowed to vanish identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .constraints import ConstraintSet, ExplicitSet, enumerate_constraint
from .errors import DimensionMismatch, EmptyConstraint, InvalidBounds
from .simplex import SimplexSpec, multinomial_coefficient

#: Exponent vectors are plain tuples of non-negative integers.
ExponentVector = tuple[int, ...]

Rational = int | Fraction
Scalar = int | float | Fraction


def _falling_factorial(base: int, steps: int) -> int:
    out = 1
    for t in range(steps):
        out *= base - t
    return out


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """Sparse homogeneous polynomial, exponent vector -> positive coefficient.

    Invariants: every stored exponent vector has length ``m`` and total
    degree ``degree``; stored coefficients are positive exact rationals
    (absent monomials encode zero coefficients).
    """

    m: int
    degree: int
    terms: Mapping[ExponentVector, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DimensionMismatch(f"need at least one variable, got m={self.m}")
        if self.degree < 0:
            raise InvalidBounds(f"degree must be non-negative, got {self.degree}")
        normalized: dict[ExponentVector, Fraction] = {}
        for exp, coeff in self.terms.items():
            key = tuple(int(e) for e in exp)
            if len(key) != self.m:
                raise DimensionMismatch(
                    f"exponent {key} has length {len(key)}, expected m={self.m}"
                )
            if any(e < 0 for e in key):
                raise InvalidBounds(f"negative exponent in {key}")
            if sum(key) != self.degree:
                raise InvalidBounds(
                    f"exponent {key} has total degree {sum(key)}, expected {self.degree}"
                )
            value = Fraction(coeff)
            if value <= 0:
                raise InvalidBounds(f"coefficient of {key} must be positive, got {value}")
            normalized[key] = value
        object.__setattr__(self, "terms", normalized)

    @classmethod
    def zero(cls, m: int, degree: int) -> "HomogeneousPolynomial":
        """The zero polynomial with a declared shape."""
        return cls(m, degree, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def _lex_terms(self) -> tuple[tuple[ExponentVector, Fraction], ...]:
        return tuple(sorted(self.terms.items()))

    def sorted_terms(self) -> list[tuple[ExponentVector, Fraction]]:
        """Terms in lexicographic exponent order (the deterministic order)."""
        return list(self._lex_terms)

    def evaluate(self, w: Sequence[Scalar]) -> Fraction | float:
        """Value at ``w``; exact when every coordinate is an int or Fraction.

        The float path accumulates IEEE doubles in lexicographic term order.
        """
        if len(w) != self.m:
            raise DimensionMismatch(f"point has {len(w)} entries, expected m={self.m}")
        exact = all(isinstance(v, (int, Fraction)) for v in w)
        if exact:
            total = Fraction(0)
            for exp, coeff in self.terms.items():
                term = coeff
                for v, e in zip(w, exp):
                    if e:
                        term *= Fraction(v) ** e
                total += term
            return total
        acc = 0.0
        values = [float(v) for v in w]
        for exp, coeff in self._lex_terms:
            term = float(coeff)
            for v, e in zip(values, exp):
                if e:
                    term *= v**e
            acc += term
        return acc

    def partial_derivative(self, gamma: Sequence[int]) -> "HomogeneousPolynomial":
        """Exact mixed derivative by the multi-index ``gamma``.

        Over-differentiation returns the zero polynomial; the declared
        degree drops by ``sum(gamma)`` and is clamped at zero.
        """
        if len(gamma) != self.m:
            raise DimensionMismatch(
                f"multi-index has {len(gamma)} entries, expected m={self.m}"
            )
        order = sum(gamma)
        new_degree = max(self.degree - order, 0)
        out: dict[ExponentVector, Fraction] = {}
        for exp, coeff in self.terms.items():
            if any(e < g for e, g in zip(exp, gamma)):
                continue
            factor = 1
            for e, g in zip(exp, gamma):
                factor *= _falling_factorial(e, g)
            out[tuple(e - g for e, g in zip(exp, gamma))] = coeff * factor
        return HomogeneousPolynomial(self.m, new_degree, out)

    def directional_derivative(
        self, direction: Sequence[Rational]
    ) -> "HomogeneousPolynomial":
        """Derivative along a non-negative direction, sum_j a_j d/dw_j, exact."""
        if len(direction) != self.m:
            raise DimensionMismatch(
                f"direction has {len(direction)} entries, expected m={self.m}"
            )
        weights = [Fraction(a) for a in direction]
        if any(a < 0 for a in weights):
            raise InvalidBounds("direction entries must be non-negative")
        if all(a == 0 for a in weights):
            raise InvalidBounds("direction must have at least one positive entry")
        new_degree = max(self.degree - 1, 0)
        out: dict[ExponentVector, Fraction] = {}
        for exp, coeff in self.terms.items():
            for j, a in enumerate(weights):
                if a == 0 or exp[j] == 0:
                    continue
                key = exp[:j] + (exp[j] - 1,) + exp[j + 1 :]
                out[key] = out.get(key, Fraction(0)) + coeff * exp[j] * a
        out = {k: v for k, v in out.items() if v != 0}
        return HomogeneousPolynomial(self.m, new_degree, out)

    def gradient(self, w: Sequence[Scalar]) -> list[Fraction | float]:
        """First partials evaluated at ``w``."""
        unit = [0] * self.m
        grad: list[Fraction | float] = []
        for j in range(self.m):
            unit[j] = 1
            grad.append(self.partial_derivative(unit).evaluate(w))
            unit[j] = 0
        return grad

    def hessian(self, w: Sequence[Scalar]) -> list[list[Fraction | float]]:
        """Matrix of second mixed partials at ``w`` (constant for quadratics)."""
        if len(w) != self.m:
            raise DimensionMismatch(f"point has {len(w)} entries, expected m={self.m}")
        matrix: list[list[Fraction | float]] = [
            [Fraction(0)] * self.m for _ in range(self.m)
        ]
        gamma = [0] * self.m
        for i in range(self.m):
            for j in range(i, self.m):
                gamma[i] += 1
                gamma[j] += 1
                value = self.partial_derivative(gamma).evaluate(w)
                gamma[i] -= 1
                gamma[j] -= 1
                matrix[i][j] = value
                matrix[j][i] = value
        return matrix

    def support(self) -> ExplicitSet:
        """Exponent vectors with positive coefficients, as an explicit set."""
        spec = SimplexSpec(self.m, self.degree)
        return ExplicitSet.from_points(spec, self.terms.keys())


def likelihood_polynomial(
    constraint: ConstraintSet, cap: int | None = None
) -> HomogeneousPolynomial:
    """Censored-likelihood polynomial of a non-empty constraint set.

    The monomial of each member point carries its exact multinomial
    coefficient, so evaluating at a probability vector gives the chance of
    landing in the set.
    """
    points = enumerate_constraint(constraint, cap)
    if not points:
        raise EmptyConstraint("empty constraint set has no likelihood")
    spec = constraint.spec
    terms = {p: Fraction(multinomial_coefficient(p)) for p in points}
    return HomogeneousPolynomial(spec.m, spec.n, terms)
