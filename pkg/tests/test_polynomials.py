"""Exact likelihood polynomials, derivatives, and evaluation."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from censored_multinomial import (
    DimensionMismatch,
    EmptyConstraint,
    ExplicitSet,
    HomogeneousPolynomial,
    InvalidBounds,
    Rectangle,
    SimplexSpec,
    enumerate_constraint,
    likelihood_polynomial,
    to_explicit,
)

UNIFORM3 = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


def _small_polynomials() -> st.SearchStrategy[HomogeneousPolynomial]:
    def build(m: int, degree: int, picks: list[tuple[int, ...]], coeffs: list[int]):
        exps = {}
        for exp, c in zip(picks, coeffs):
            if sum(exp) == degree:
                exps[exp] = Fraction(c)
        if not exps:
            exps = {tuple([degree] + [0] * (m - 1)): Fraction(1)}
        return HomogeneousPolynomial(m, degree, exps)

    return st.tuples(st.integers(2, 3), st.integers(1, 4)).flatmap(
        lambda md: st.builds(
            build,
            st.just(md[0]),
            st.just(md[1]),
            st.lists(
                st.tuples(*[st.integers(0, md[1]) for _ in range(md[0])]).map(tuple),
                min_size=1,
                max_size=6,
            ),
            st.lists(st.integers(1, 9), min_size=6, max_size=6),
        )
    )


class TestConstruction:
    def test_rejects_degree_mismatch(self):
        with pytest.raises(InvalidBounds):
            HomogeneousPolynomial(2, 2, {(1, 0): 1})

    def test_rejects_nonpositive_coefficients(self):
        with pytest.raises(InvalidBounds):
            HomogeneousPolynomial(2, 2, {(1, 1): 0})
        with pytest.raises(InvalidBounds):
            HomogeneousPolynomial(2, 2, {(1, 1): -2})

    def test_zero_polynomial(self):
        z = HomogeneousPolynomial.zero(3, 4)
        assert z.is_zero
        assert z.evaluate((1, 1, 1)) == 0
        assert z.support().points == ()


class TestLikelihood:
    def test_full_simplex_is_binomial_square(self):
        full = Rectangle(SimplexSpec(2, 2), (0, 0), (2, 2))
        f = likelihood_polynomial(full)
        assert f.terms == {
            (2, 0): Fraction(1),
            (1, 1): Fraction(2),
            (0, 2): Fraction(1),
        }

    def test_singleton(self):
        single = ExplicitSet.from_points(SimplexSpec(2, 2), [(1, 1)])
        f = likelihood_polynomial(single)
        assert f.terms == {(1, 1): Fraction(2)}

    def test_rectangle_coefficients(self, rect_m3n8):
        f = likelihood_polynomial(rect_m3n8)
        assert len(f.terms) == 7
        assert (3, 1, 4) not in f.terms
        assert f.terms[(2, 3, 3)] == 560

    def test_empty_constraint_rejected(self):
        empty = ExplicitSet(SimplexSpec(3, 4), ())
        with pytest.raises(EmptyConstraint):
            likelihood_polynomial(empty)

    def test_support_round_trip(self, rect_m3n8, psr_m3n8, psr_m4n5):
        for constraint in (rect_m3n8, psr_m3n8, psr_m4n5):
            f = likelihood_polynomial(constraint)
            assert f.support().points == tuple(enumerate_constraint(constraint))


class TestEvaluate:
    def test_total_probability_is_one(self):
        for m in range(2, 5):
            for n in range(0, 6):
                full = Rectangle(SimplexSpec(m, n), (0,) * m, (n,) * m)
                f = likelihood_polynomial(full)
                p = (Fraction(1, m),) * m
                assert f.evaluate(p) == 1

    def test_float_path(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        assert f.evaluate((0.5, 0.5)) == pytest.approx(0.5)

    def test_exact_rational_value(self, rect_m3n8):
        f = likelihood_polynomial(rect_m3n8)
        value = f.evaluate(UNIFORM3)
        assert value == sum(f.terms.values()) / Fraction(3**8)
        assert 0 < value < 1

    def test_dimension_mismatch(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        with pytest.raises(DimensionMismatch):
            f.evaluate((1, 1, 1))


class TestPartialDerivative:
    def test_single_step(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        assert f.partial_derivative((1, 0)).terms == {(0, 1): Fraction(2)}

    def test_over_differentiation_gives_zero(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        d = f.partial_derivative((2, 0))
        assert d.is_zero
        assert d.degree == 0

    def test_square_expansion(self):
        f = HomogeneousPolynomial(2, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
        assert f.partial_derivative((1, 0)).terms == {
            (1, 0): Fraction(2),
            (0, 1): Fraction(2),
        }

    @given(_small_polynomials(), st.data())
    def test_mixed_partials_commute(self, f, data):
        gamma = tuple(data.draw(st.integers(0, 2), label=f"g{j}") for j in range(f.m))
        delta = tuple(data.draw(st.integers(0, 2), label=f"d{j}") for j in range(f.m))
        combined = tuple(g + d for g, d in zip(gamma, delta))
        assert f.partial_derivative(combined) == f.partial_derivative(
            gamma
        ).partial_derivative(delta)


class TestDirectionalDerivative:
    def test_sum_of_partials(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        assert f.directional_derivative((1, 1)).terms == {
            (1, 0): Fraction(2),
            (0, 1): Fraction(2),
        }

    def test_axis_direction_matches_partial(self):
        f = HomogeneousPolynomial(2, 3, {(2, 1): 5, (0, 3): 1})
        assert f.directional_derivative((0, 1)) == f.partial_derivative((0, 1))

    def test_weighted(self):
        f = HomogeneousPolynomial(2, 2, {(2, 0): 1, (0, 2): 1})
        assert f.directional_derivative((1, 2)).terms == {
            (1, 0): Fraction(2),
            (0, 1): Fraction(4),
        }

    def test_rejects_bad_directions(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        with pytest.raises(InvalidBounds):
            f.directional_derivative((0, 0))
        with pytest.raises(InvalidBounds):
            f.directional_derivative((1, -1))


class TestHessian:
    def test_antidiagonal_quadratic(self):
        f = HomogeneousPolynomial(2, 2, {(1, 1): 2})
        for w in ((1, 1), (3, 7)):
            assert f.hessian(w) == [[0, 2], [2, 0]]

    def test_diagonal_quadratic(self):
        f = HomogeneousPolynomial(2, 2, {(2, 0): 1, (0, 2): 1})
        assert f.hessian((1, 1)) == [[2, 0], [0, 2]]

    def test_single_variable_cubic(self):
        f = HomogeneousPolynomial(1, 3, {(3,): 1})
        assert f.hessian((1,)) == [[6]]
        assert f.hessian((2,)) == [[12]]


class TestIdentities:
    @given(_small_polynomials(), st.data())
    def test_euler_identity(self, f, data):
        w = tuple(
            Fraction(data.draw(st.integers(1, 9), label=f"num{j}"), 4)
            for j in range(f.m)
        )
        lhs = sum(
            wj * f.partial_derivative(tuple(int(k == j) for k in range(f.m))).evaluate(w)
            for j, wj in enumerate(w)
        )
        assert lhs == f.degree * f.evaluate(w)

    def test_gradient_matches_finite_differences(self, rect_m3n8):
        f = likelihood_polynomial(rect_m3n8)
        rng = random.Random(5)
        h = 1e-6
        for _ in range(10):
            w = [rng.uniform(0.2, 1.5) for _ in range(3)]
            a = [rng.uniform(0.1, 1.0) for _ in range(3)]
            deriv = f.directional_derivative(
                [Fraction(round(v * 1000), 1000) for v in a]
            )
            exact = deriv.evaluate(w)
            stepped_up = [v + h * float(Fraction(round(x * 1000), 1000)) for v, x in zip(w, a)]
            stepped_dn = [v - h * float(Fraction(round(x * 1000), 1000)) for v, x in zip(w, a)]
            approx = (f.evaluate(stepped_up) - f.evaluate(stepped_dn)) / (2 * h)
            assert math.isclose(exact, approx, rel_tol=1e-6)


class TestJsonShape:
    def test_terms_sorted_lexicographically(self, rect_m3n8):
        f = likelihood_polynomial(rect_m3n8)
        exps = [e for e, _ in f.sorted_terms()]
        assert exps == sorted(exps)
        assert exps == list(to_explicit(rect_m3n8).points)
