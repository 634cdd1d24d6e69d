import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy import special

from evlab.numerics import (
    ConvergenceError,
    InvalidBracketError,
    RootBracket,
    find_root,
    linspace,
    log_beta,
    log_binomial_coeff,
    log_gamma,
    regularized_incomplete_beta,
)

from _oracles import pascal_row


class TestLogGamma:
    def test_factorial_values(self):
        # Gamma(m+1) = m!, checked against the exact integer product
        fact = 1
        for m in range(1, 20):
            fact *= m
            assert math.isclose(log_gamma(m + 1), math.log(fact), rel_tol=1e-12, abs_tol=1e-13)

    def test_unit_values(self):
        assert abs(log_gamma(1.0)) < 1e-13
        assert abs(log_gamma(2.0)) < 1e-13

    def test_five_is_log_24(self):
        assert math.isclose(log_gamma(5.0), math.log(24.0), rel_tol=1e-13)

    def test_against_mpmath_over_range(self):
        mpmath.mp.dps = 40
        for x in np.geomspace(0.5, 1e6, 500):
            ref = float(mpmath.loggamma(mpmath.mpf(float(x))))
            assert math.isclose(log_gamma(float(x)), ref, rel_tol=1e-12, abs_tol=1e-13), x

    def test_recurrence(self):
        for x in (0.5, 1.0, 2.5, 10.0, 100.0):
            lhs = log_gamma(x + 1.0)
            rhs = log_gamma(x) + math.log(x)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))

    def test_domain(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-3.0)


class TestLogBeta:
    def test_uniform_is_zero(self):
        assert log_beta(1.0, 1.0) == pytest.approx(0.0, abs=1e-13)

    def test_exact_fractions(self):
        # B(a, b) = (a-1)!(b-1)!/(a+b-1)! for integer shapes
        assert math.isclose(log_beta(2.0, 2.0), math.log(1.0 / 6.0), rel_tol=1e-12)
        b66 = Fraction(math.factorial(5) * math.factorial(5), math.factorial(11))
        assert math.isclose(log_beta(6.0, 6.0), math.log(float(b66)), rel_tol=1e-12)
        assert b66 == Fraction(14400, 39916800)

    def test_domain(self):
        with pytest.raises(ValueError):
            log_beta(0.0, 1.0)
        with pytest.raises(ValueError):
            log_beta(1.0, -2.0)


class TestLogBinomialCoeff:
    def test_edge_is_one(self):
        assert abs(log_binomial_coeff(10.0, 0.0)) < 1e-12
        assert abs(log_binomial_coeff(10.0, 10.0)) < 1e-12

    def test_small_values(self):
        assert math.isclose(log_binomial_coeff(4, 2), math.log(6.0), rel_tol=1e-12)
        assert math.isclose(log_binomial_coeff(10, 5), math.log(252.0), rel_tol=1e-12)

    def test_matches_pascal_triangle(self):
        for n in range(0, 61):
            row = pascal_row(n)
            for k, exact in enumerate(row):
                got = math.exp(log_binomial_coeff(float(n), float(k)))
                assert math.isclose(got, float(exact), rel_tol=1e-10), (n, k)

    def test_real_arguments(self):
        # consistency with the gamma definition for non-integer inputs
        n, k = 7.5, 2.25
        expected = log_gamma(n + 1) - log_gamma(k + 1) - log_gamma(n - k + 1)
        assert log_binomial_coeff(n, k) == expected

    def test_domain(self):
        with pytest.raises(ValueError):
            log_binomial_coeff(5.0, -0.5)
        with pytest.raises(ValueError):
            log_binomial_coeff(5.0, 5.5)


class TestIncompleteBeta:
    def test_boundaries_exact(self):
        assert regularized_incomplete_beta(0.0, 2.3, 4.5) == 0.0
        assert regularized_incomplete_beta(1.0, 2.3, 4.5) == 1.0

    def test_symmetric_midpoint(self):
        assert regularized_incomplete_beta(0.5, 3.0, 3.0) == pytest.approx(0.5, abs=1e-12)

    def test_against_scipy(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            a = float(rng.uniform(0.1, 50.0))
            b = float(rng.uniform(0.1, 50.0))
            x = float(rng.uniform(0.0, 1.0))
            assert regularized_incomplete_beta(x, a, b) == pytest.approx(
                float(special.betainc(a, b, x)), abs=1e-12
            ), (x, a, b)

    def test_reflection_identity(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            a = float(rng.uniform(0.2, 20.0))
            b = float(rng.uniform(0.2, 20.0))
            x = float(rng.uniform(0.0, 1.0))
            total = regularized_incomplete_beta(x, a, b) + regularized_incomplete_beta(
                1.0 - x, b, a
            )
            assert abs(total - 1.0) <= 1e-10

    def test_monotone_in_x(self):
        for a, b in ((0.5, 2.0), (3.0, 3.0), (10.0, 2.5)):
            values = [regularized_incomplete_beta(x, a, b) for x in linspace(0.0, 1.0, 101)]
            assert all(v2 >= v1 for v1, v2 in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(-0.1, 1.0, 1.0)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.1, 1.0, 1.0)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.5, 0.0, 1.0)


class TestFindRoot:
    def test_linear(self):
        root = find_root(lambda x: x - 0.5, RootBracket(0.0, 1.0, tol=1e-10))
        assert root == pytest.approx(0.5, abs=1e-10)

    def test_sqrt_two(self):
        root = find_root(lambda x: x * x - 2.0, RootBracket(1.0, 2.0, tol=1e-10))
        assert root == pytest.approx(math.sqrt(2.0), abs=1e-10)

    def test_asymmetric_bracket(self):
        root = find_root(lambda x: x, RootBracket(-1.0, 2.0, tol=1e-10))
        assert root == pytest.approx(0.0, abs=1e-10)

    def test_invalid_bracket(self):
        with pytest.raises(InvalidBracketError):
            find_root(lambda x: x * x + 1.0, RootBracket(-1.0, 1.0))
        # a zero endpoint is not a strict sign change
        with pytest.raises(InvalidBracketError):
            find_root(lambda x: x, RootBracket(0.0, 1.0))

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError):
            find_root(lambda x: x - 0.1234, RootBracket(0.0, 1.0, tol=1e-12, max_iter=5))

    def test_refinement_invariance(self):
        f = lambda x: math.cos(x) - x
        coarse = find_root(f, RootBracket(0.0, 1.0, tol=1e-9, max_iter=100))
        fine = find_root(f, RootBracket(0.0, 1.0, tol=5e-10, max_iter=200))
        assert abs(coarse - fine) <= 1e-9

    def test_bracket_validation(self):
        with pytest.raises(ValueError):
            RootBracket(1.0, 0.0)
        with pytest.raises(ValueError):
            RootBracket(0.0, 1.0, tol=0.0)
        with pytest.raises(ValueError):
            RootBracket(0.0, 1.0, max_iter=0)


def test_linspace():
    assert linspace(0.0, 1.0, 5) == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert linspace(2.0, 2.0, 1) == [2.0]
    with pytest.raises(ValueError):
        linspace(0.0, 1.0, 0)
