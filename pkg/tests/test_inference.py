"""Censored-likelihood evaluation and EM-based maximum likelihood."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import permutations

import pytest

from censored_multinomial import (
    EmptyConstraint,
    ExplicitSet,
    InvalidBounds,
    ProbabilityVector,
    Rectangle,
    SimplexSpec,
    ZeroLikelihood,
    conditional_expectation,
    em_step,
    likelihood_polynomial,
    log_likelihood,
    mle,
    multinomial_coefficient,
)


def _weighted_mean_oracle(points, p):
    """Brute-force conditional mean: weights are coefficient times p**x."""
    weights = []
    for x in points:
        w = float(multinomial_coefficient(x))
        for v, e in zip(p, x):
            w *= v**e
        weights.append(w)
    total = sum(weights)
    m = len(points[0])
    return tuple(
        sum(w * x[j] for w, x in zip(weights, points)) / total for j in range(m)
    )


def _grid_search_m3(constraint, step=0.01):
    """Dense simplex grid maximum of the censored log-likelihood."""
    best = -math.inf
    steps = round(1 / step)
    for i in range(steps + 1):
        for j in range(steps - i + 1):
            p = (i * step, j * step, 1 - (i + j) * step)
            if min(p) < 0:
                continue
            value = _loglik_raw(constraint, p)
            best = max(best, value)
    return best


def _loglik_raw(constraint, p):
    f = likelihood_polynomial(constraint)
    value = f.evaluate(tuple(p))
    return math.log(value) if value > 0 else -math.inf


FULL22 = Rectangle(SimplexSpec(2, 2), (0, 0), (2, 2))
ATLEAST1 = ExplicitSet.from_points(SimplexSpec(2, 2), [(2, 0), (1, 1)])


class TestProbabilityVector:
    def test_normalization(self):
        p = ProbabilityVector.normalized([2, 1, 1])
        assert p.values == (0.5, 0.25, 0.25)

    def test_uniform(self):
        assert ProbabilityVector.uniform(4).values == (0.25,) * 4

    def test_rejects_negative(self):
        with pytest.raises(InvalidBounds):
            ProbabilityVector.normalized([1, -1])

    def test_rejects_unnormalized_direct_construction(self):
        with pytest.raises(InvalidBounds):
            ProbabilityVector((0.5, 0.6))

    def test_interiority(self):
        assert ProbabilityVector.uniform(3).is_interior()
        edge = ProbabilityVector((1.0, 0.0))
        assert not edge.is_interior()


class TestLogLikelihood:
    def test_full_simplex_is_zero(self):
        for p in ([0.5, 0.5], [0.9, 0.1], [0.25, 0.75]):
            assert log_likelihood(FULL22, p) == pytest.approx(0.0, abs=1e-12)

    def test_singleton_value(self):
        single = ExplicitSet.from_points(SimplexSpec(2, 2), [(1, 1)])
        assert log_likelihood(single, (0.5, 0.5)) == pytest.approx(math.log(0.5))

    def test_rectangle_uniform_value(self, rect_m3n8):
        f = likelihood_polynomial(rect_m3n8)
        expected = math.log(float(sum(f.terms.values()) / Fraction(3**8)))
        assert log_likelihood(rect_m3n8, (1 / 3, 1 / 3, 1 / 3)) == pytest.approx(
            expected
        )

    def test_vanishing_event_is_minus_infinity(self):
        needs_first = ExplicitSet.from_points(SimplexSpec(2, 2), [(2, 0)])
        assert log_likelihood(needs_first, (0.0, 1.0)) == -math.inf

    def test_empty_constraint_rejected(self):
        with pytest.raises(EmptyConstraint):
            log_likelihood(ExplicitSet(SimplexSpec(2, 2), ()), (0.5, 0.5))


class TestConditionalExpectation:
    def test_unconditional_mean(self):
        for p in ([0.5, 0.5], [0.3, 0.7]):
            expectation = conditional_expectation(FULL22, p)
            assert expectation == pytest.approx((2 * p[0], 2 * p[1]))

    def test_singleton_is_exact(self):
        single = ExplicitSet.from_points(SimplexSpec(3, 8), [(3, 1, 4)])
        assert conditional_expectation(single, (0.2, 0.3, 0.5)) == pytest.approx(
            (3.0, 1.0, 4.0)
        )

    def test_two_point_hand_value(self):
        expectation = conditional_expectation(ATLEAST1, (0.5, 0.5))
        assert expectation[0] == pytest.approx(4 / 3)
        oracle = _weighted_mean_oracle([(2, 0), (1, 1)], (0.5, 0.5))
        assert expectation == pytest.approx(oracle)

    def test_components_sum_to_n(self, psr_m4n5):
        rng = random.Random(17)
        for _ in range(20):
            p = ProbabilityVector.normalized([rng.uniform(0.05, 1) for _ in range(4)])
            expectation = conditional_expectation(psr_m4n5, p)
            assert sum(expectation) == pytest.approx(5.0)

    def test_zero_likelihood_rejected(self):
        needs_first = ExplicitSet.from_points(SimplexSpec(2, 2), [(2, 0)])
        with pytest.raises(ZeroLikelihood):
            conditional_expectation(needs_first, (0.0, 1.0))


class TestEmStep:
    def test_full_simplex_fixed_point(self):
        for p in ([0.5, 0.5], [0.25, 0.75]):
            assert em_step(FULL22, p).values == pytest.approx(tuple(p))

    def test_two_point_update(self):
        assert em_step(ATLEAST1, (0.5, 0.5)).values == pytest.approx((2 / 3, 1 / 3))

    def test_singleton_one_step(self):
        single = ExplicitSet.from_points(SimplexSpec(3, 8), [(3, 1, 4)])
        assert em_step(single, (0.6, 0.3, 0.1)).values == pytest.approx(
            (3 / 8, 1 / 8, 4 / 8)
        )

    def test_degenerate_zero_count(self):
        trivial = Rectangle(SimplexSpec(3, 0), (0, 0, 0), (0, 0, 0))
        p = ProbabilityVector.normalized([1, 2, 3])
        assert em_step(trivial, p).values == p.values

    def test_monotone_on_random_cases(self):
        rng = random.Random(23)
        for _ in range(100):
            n = rng.randint(1, 6)
            spec = SimplexSpec(3, n)
            lower = tuple(rng.randint(0, n) for _ in range(3))
            upper = tuple(min(n, lo + rng.randint(0, n)) for lo in lower)
            rect = Rectangle(spec, lower, upper)
            try:
                p = ProbabilityVector.normalized(
                    [rng.uniform(0.05, 1) for _ in range(3)]
                )
                before = log_likelihood(rect, p)
                after = log_likelihood(rect, em_step(rect, p))
            except EmptyConstraint:
                continue
            assert after >= before - 1e-12


class TestMle:
    def test_singleton_closed_form(self):
        single = ExplicitSet.from_points(SimplexSpec(3, 8), [(3, 1, 4)])
        result = mle(single)
        assert result.converged
        assert result.iterations <= 2
        for got, expected in zip(result.p_hat.values, (3 / 8, 1 / 8, 4 / 8)):
            assert abs(got - expected) <= 1e-12

    def test_boundary_attraction_flagged(self):
        # The event "first count >= 1" has likelihood 2p - p^2, increasing
        # on [0, 1]: a 1e-4-step grid confirms the maximum sits at p = 1.
        grid = [(i * 1e-4) for i in range(10001)]
        values = [2 * p - p * p for p in grid]
        assert max(range(len(grid)), key=values.__getitem__) == len(grid) - 1
        result = mle(ATLEAST1)
        assert result.boundary_flags == (False, True)
        assert result.p_hat[0] >= 1 - 1e-3
        assert result.trace is None

    def test_interior_mle_matches_grid(self, rect_m3n8):
        result = mle(rect_m3n8)
        assert result.converged
        assert not any(result.boundary_flags)
        assert result.log_likelihood >= _grid_search_m3(rect_m3n8) - 1e-4

    def test_psr_mle_matches_grid(self, psr_m3n8):
        result = mle(psr_m3n8)
        assert result.converged
        assert result.log_likelihood >= _grid_search_m3(psr_m3n8) - 1e-4

    def test_trace_is_monotone(self, psr_m3n8):
        result = mle(psr_m3n8, trace=True)
        lls = [ll for _, ll in result.trace]
        assert all(b >= a - 1e-12 for a, b in zip(lls, lls[1:]))
        assert result.trace[0][0] == 0

    def test_restarts_agree(self, rect_m3n8):
        base = mle(rect_m3n8)
        restarted = mle(rect_m3n8, restarts=3, seed=5)
        assert restarted.log_likelihood >= base.log_likelihood - 1e-9
        assert restarted.p_hat.values == pytest.approx(base.p_hat.values, abs=1e-6)

    def test_rejects_non_interior_start(self):
        with pytest.raises(InvalidBounds):
            mle(FULL22, p0=ProbabilityVector((1.0, 0.0)))

    def test_gradient_consistency(self, rect_m3n8):
        # The score in each coordinate is the conditional mean over the
        # parameter; check it against central differences along
        # sum-preserving directions.
        rng = random.Random(31)
        h = 1e-6
        for _ in range(10):
            p = ProbabilityVector.normalized([rng.uniform(0.2, 1) for _ in range(3)])
            direction = [1.0, -0.5, -0.5]
            expectation = conditional_expectation(rect_m3n8, p)
            exact = sum(
                d * e / v for d, e, v in zip(direction, expectation, p.values)
            )
            up = [v + h * d for v, d in zip(p.values, direction)]
            dn = [v - h * d for v, d in zip(p.values, direction)]
            approx = (_loglik_raw(rect_m3n8, up) - _loglik_raw(rect_m3n8, dn)) / (2 * h)
            assert abs(exact - approx) <= 1e-5 * (1 + abs(exact))

    def test_permutation_equivariance(self):
        spec = SimplexSpec(3, 6)
        rect = Rectangle(spec, (1, 0, 2), (3, 2, 5))
        base = mle(rect)
        for perm in permutations(range(3)):
            permuted = Rectangle(
                spec,
                tuple(rect.lower[k] for k in perm),
                tuple(rect.upper[k] for k in perm),
            )
            result = mle(permuted)
            expected = tuple(base.p_hat[k] for k in perm)
            assert result.p_hat.values == pytest.approx(expected, abs=1e-9)
