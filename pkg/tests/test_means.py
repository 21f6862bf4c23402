import math

import numpy as np
import pytest

import dirichlet_lab as dl
from dirichlet_lab.errors import TooManyPrimes
from dirichlet_lab.means import parseval_square_mean

from conftest import random_polynomial

LOG2 = math.log(2.0)


class TestWindowMean:
    def test_constant(self):
        f = dl.DirichletPolynomial({1: 2 + 1j})
        assert dl.window_mean(f, 0.7, 13.0, 3) == pytest.approx(abs(2 + 1j) ** 3)

    def test_constant_modulus(self, mono2):
        assert dl.window_mean(mono2, 1.0, 17.0, 2) == pytest.approx(0.25)

    def test_full_period_fourth_power(self, two_term):
        # |1 + w/2|^4 averaged over one full period of w = 2^(-it)
        f = dl.DirichletPolynomial({1: 1.0, 2: 1.0})
        T = 2 * math.pi / LOG2
        expected = 1 + 4 * 0.25 + 0.25 ** 2
        assert dl.window_mean(f, 1.0, T, 4) == pytest.approx(expected, abs=1e-9)

    def test_brute_force_oracle(self, rng):
        f = dl.DirichletPolynomial({1: 0.4, 2: 1.2, 3: -0.3})
        T = 9.0
        t = np.linspace(-T, T, 2 ** 20 + 1)
        brute = np.trapezoid(np.abs(f.eval_many(1.3 + 1j * t)) ** 2.5, t) / (2 * T)
        assert dl.window_mean(f, 1.3, T, 2.5) == pytest.approx(brute, abs=1e-7)


class TestTorusMean:
    def test_parseval_example(self, three_term_unit):
        assert dl.torus_mean(three_term_unit, 1.0, 2) == \
            pytest.approx(1 + 0.25 + 1 / 9, abs=1e-10)

    def test_unimodular_any_p(self, mono2):
        assert dl.torus_mean(mono2, 0.0, 17.0) == pytest.approx(1.0, abs=1e-10)

    def test_circle_fourth_power(self):
        f = dl.DirichletPolynomial({1: 1.0, 2: 1.0})
        # binomial expansion: mean of |1 + w|^4 over the circle is 6
        assert dl.torus_mean(f, 0.0, 4) == pytest.approx(6.0, abs=1e-8)
        t = np.linspace(0, 2 * math.pi, 2 ** 20 + 1)
        brute = np.trapezoid(np.abs(1 + np.exp(1j * t)) ** 4, t) / (2 * math.pi)
        assert brute == pytest.approx(6.0, abs=1e-4)

    def test_too_many_primes(self):
        f = dl.DirichletPolynomial({2: 1, 3: 1, 5: 1, 7: 1, 11: 1, 2310: 1})
        with pytest.raises(TooManyPrimes):
            dl.torus_mean(f, 1.0, 2)

    def test_parseval_invariant_randomized(self, rng):
        for _ in range(20):
            f = random_polynomial(rng)
            sigma = rng.uniform(0.0, 2.0)
            assert dl.torus_mean(f, sigma, 2) == \
                pytest.approx(parseval_square_mean(f, sigma), abs=1e-10)

    def test_monotone_in_sigma_randomized(self, rng):
        grid = np.arange(0.0, 3.25, 0.25)
        for _ in range(20):
            f = random_polynomial(rng)
            vals = [dl.torus_mean(f, s, 2) for s in grid]
            assert all(b <= a + 1e-9 for a, b in zip(vals, vals[1:]))

    def test_log_convex_in_sigma_randomized(self, rng):
        grid = np.arange(0.0, 3.25, 0.25)
        for _ in range(20):
            f = random_polynomial(rng)
            logs = [math.log(dl.torus_mean(f, s, 4)) for s in grid]
            for a, b, c in zip(logs, logs[1:], logs[2:]):
                assert b <= 0.5 * (a + c) + 1e-9


class TestHpNorm:
    def test_constant(self):
        assert dl.hp_norm(dl.DirichletPolynomial({1: 3.0}), 5) == \
            pytest.approx(3.0, abs=1e-12)

    def test_inner_one_frequency(self, mono2):
        assert dl.hp_norm(mono2, 7) == pytest.approx(1.0, abs=1e-10)

    def test_parseval(self):
        f = dl.DirichletPolynomial({1: 1.0, 2: 1.0})
        assert dl.hp_norm(f, 2) == pytest.approx(math.sqrt(2), abs=1e-10)

    def test_trace_reported(self, two_term):
        value, trace = dl.hp_norm(two_term, 2, with_trace=True)
        assert trace[-1][0] == 0.0
        assert len(trace) >= 3
        assert value == pytest.approx(trace[-1][1])

    def test_twist_invariance_randomized(self, rng):
        for _ in range(10):
            f = random_polynomial(rng)
            chi = dl.Character({2: rng.uniform(0, 2 * math.pi),
                                3: rng.uniform(0, 2 * math.pi)})
            g = dl.twist(f, chi)
            for p in (2, 3):
                assert dl.hp_norm(g, p) == \
                    pytest.approx(dl.hp_norm(f, p), abs=1e-10)


class TestJessen:
    def test_constant(self):
        f = dl.DirichletPolynomial({1: 2.5})
        assert dl.jessen_function(f, 0.9) == pytest.approx(math.log(2.5))

    def test_zero_constant_raises(self):
        f = dl.DirichletPolynomial({1: 0.0})
        with pytest.raises(dl.ZeroOnLine):
            dl.jessen_function(f, 1.0)

    def test_davenport_interior(self, davenport):
        # mean of log|1 - w| over |w| = 1/2 vanishes (harmonic, no zeros)
        assert dl.jessen_function(davenport, 2.0) == pytest.approx(0.0, abs=1e-10)

    def test_davenport_left_of_line(self, davenport):
        expected = 0.5 * LOG2
        assert dl.jessen_function(davenport, 0.5) == \
            pytest.approx(expected, abs=1e-8)
        t = np.linspace(0, 2 * math.pi, 2 ** 20 + 1)
        brute = np.trapezoid(np.log(np.abs(1 - 2 ** 0.5 * np.exp(1j * t))), t) \
            / (2 * math.pi)
        assert brute == pytest.approx(expected, abs=1e-6)

    def test_window_mode_matches_torus(self, davenport):
        torus = dl.jessen_function(davenport, 1.5, mode="torus")
        window = dl.jessen_function(davenport, 1.5, mode="window", T=400.0)
        # finite-window error is O(1/(T log 2))
        assert window == pytest.approx(torus, abs=5e-3)

    def test_two_prime_log_mean(self):
        f = dl.DirichletPolynomial({1: 1.0, 2: 0.5, 3: 0.25})
        # zero-free at sigma = 1: harmonicity gives mean log |f| = log |a1|
        assert dl.jessen_function(f, 1.0) == pytest.approx(0.0, abs=1e-9)

    def test_convexity_and_tail_randomized(self, rng):
        grid = np.arange(0.25, 3.25, 0.25)
        for _ in range(8):
            f = random_polynomial(rng)
            if abs(f.value_at_infinity) < 0.05:
                continue
            vals = [dl.jessen_function(f, s) for s in grid]
            for a, b, c in zip(vals, vals[1:], vals[2:]):
                assert b <= 0.5 * (a + c) + 1e-8
            # approaches log |a1| once the tail is negligible
            tail = f.tail_bound(6.0) / abs(f.value_at_infinity)
            assert abs(dl.jessen_function(f, 6.0)
                       - math.log(abs(f.value_at_infinity))) <= \
                -math.log1p(-min(tail, 0.5)) + 1e-9

    def test_twist_invariance(self, rng, davenport):
        chi = dl.Character({2: 1.234})
        g = dl.twist(davenport, chi)
        for sigma in (0.5, 1.5):
            assert dl.jessen_function(g, sigma) == \
                pytest.approx(dl.jessen_function(davenport, sigma), abs=1e-9)


class TestErgodicCrosscheck:
    def test_constant_modulus_exact(self, mono2):
        rep = dl.ergodic_crosscheck(mono2, 1.0, 2,
                                    dl.MeanSchedule(T_list=(10.0, 20.0)))
        assert rep.passed
        assert rep.abs_err < 1e-12

    def test_three_term(self, three_term_unit):
        sched = dl.MeanSchedule(T_list=(50.0, 100.0, 200.0, 500.0))
        rep = dl.ergodic_crosscheck(three_term_unit, 1.0, 2, sched)
        assert rep.passed
        assert rep.rhs == pytest.approx(1 + 0.25 + 1 / 9, abs=1e-10)
        # oracle: the window error is a sum of sinc-damped cross terms, so
        # |err| <= C / T with C from the coefficients (~ 9.64 here)
        from dirichlet_lab.means import window_cross_term_bound
        C = window_cross_term_bound(three_term_unit, 1.0)
        assert rep.abs_err <= C / 500.0
        assert rep.abs_err <= 2e-2

    def test_torus_mean_twist_invariant(self, rng, three_term_unit):
        chi = dl.Character({2: 2.0, 3: 0.5})
        g = dl.twist(three_term_unit, chi)
        assert dl.torus_mean(g, 1.0, 2) == \
            pytest.approx(dl.torus_mean(three_term_unit, 1.0, 2), abs=1e-12)

    def test_requires_positive_sigma(self, mono2):
        with pytest.raises(ValueError):
            dl.ergodic_crosscheck(mono2, 0.0, 2)
