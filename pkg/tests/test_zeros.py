import math

import numpy as np
import pytest

import dirichlet_lab as dl
from dirichlet_lab.errors import BoundaryZeroSuspected, HypothesisFailed
from dirichlet_lab.zeros import dominance_abscissa, shift_value

LOG2 = math.log(2.0)
SPACING = 2 * math.pi / LOG2


def davenport_lattice(T):
    """Zeros of 1 - 2^(1-s): 1 + 2 pi i k / log 2."""
    k_max = int(T * LOG2 / (2 * math.pi))
    return [1 + 1j * SPACING * k for k in range(-k_max, k_max + 1)]


class TestWinding:
    def test_zero_free(self, two_term):
        assert dl.winding_number(two_term, dl.Rectangle(0.1, 2.0, -5, 5)) == 0

    def test_single_zero(self, davenport):
        assert dl.winding_number(davenport, dl.Rectangle(0.5, 1.5, -1, 1)) == 1

    def test_three_zeros(self, davenport):
        assert dl.winding_number(davenport, dl.Rectangle(0.5, 1.5, -10, 10)) == 3

    def test_boundary_zero_detected(self, davenport):
        with pytest.raises(BoundaryZeroSuspected):
            dl.winding_number(davenport, dl.Rectangle(1.0, 2.0, -1, 1))

    def test_additivity_randomized(self, rng, davenport):
        # winding of a rectangle equals the sum over a 2x2 subdivision
        hits = 0
        for _ in range(50):
            s0 = rng.uniform(0.1, 0.9)
            s1 = s0 + rng.uniform(0.3, 2.0)
            t0 = rng.uniform(-30, 25)
            t1 = t0 + rng.uniform(1.0, 15.0)
            R = dl.Rectangle(s0, s1, t0, t1)
            sm = 0.5 * (s0 + s1)
            tm = 0.5 * (t0 + t1)
            try:
                total = dl.winding_number(davenport, R)
                parts = sum(dl.winding_number(davenport, q) for q in (
                    dl.Rectangle(s0, sm, t0, tm), dl.Rectangle(sm, s1, t0, tm),
                    dl.Rectangle(s0, sm, tm, t1), dl.Rectangle(sm, s1, tm, t1)))
            except BoundaryZeroSuspected:
                continue  # a lattice zero grazed an edge; not this test's topic
            assert parts == total
            hits += 1
        assert hits >= 40


class TestIsolateZeros:
    def test_single(self, davenport):
        zl = dl.isolate_zeros(davenport, dl.Rectangle(0.5, 1.5, -1, 1),
                              tol=1e-9)
        assert len(zl) == 1
        assert zl.hits[0].multiplicity == 1
        assert abs(zl.hits[0].location - 1.0) < 1e-9

    def test_lattice_vertical_spacing(self):
        # zeros of 1 - 4 * 4^(-s): at 1 + i pi k / log 2 (spacing 2pi/log4)
        f = dl.DirichletPolynomial({1: 1.0, 4: -4.0})
        zl = dl.isolate_zeros(f, dl.Rectangle(0.5, 1.5, -0.1, 0.1), tol=1e-9)
        assert len(zl) == 1
        assert abs(zl.hits[0].location - 1.0) < 1e-9
        zl2 = dl.isolate_zeros(f, dl.Rectangle(0.5, 1.5, -5.0, 5.0), tol=1e-9)
        expected = [1 + 1j * math.pi * k / LOG2 for k in (-1, 0, 1)]
        found = zl2.locations()
        assert len(found) == 3
        for z, e in zip(sorted(found, key=lambda w: w.imag), expected):
            assert abs(z - e) < 1e-9

    def test_counting_consistency(self, davenport):
        zl = dl.isolate_zeros(davenport, dl.Rectangle(0.5, 1.5, -30, 30))
        assert zl.total_multiplicity() == zl.winding

    def test_enclosures_pairwise_disjoint(self, davenport):
        zl = dl.isolate_zeros(davenport, dl.Rectangle(0.5, 1.5, -30, 30))
        hits = zl.sorted_by_height()
        for a, b in zip(hits, hits[1:]):
            assert abs(a.location - b.location) > a.radius + b.radius

    def test_vertical_translate_covariance(self, davenport):
        tau = 0.37
        g = dl.vertical_translate(davenport, tau)
        R = dl.Rectangle(0.5, 1.5, -4, 4)
        shifted = dl.Rectangle(0.5, 1.5, -4 + tau, 4 + tau)
        z_g = sorted(dl.isolate_zeros(g, R).locations(), key=lambda z: z.imag)
        z_f = sorted(dl.isolate_zeros(davenport, shifted).locations(),
                     key=lambda z: z.imag)
        assert len(z_g) == len(z_f)
        for zg, zf in zip(z_g, z_f):
            assert abs(zg - (zf - 1j * tau)) < 1e-9


class TestLittlewoodFormula:
    def test_zero_free_cancellation(self, two_term):
        res = dl.littlewood_sum(two_term, dl.Rectangle(0.5, 3.0, -5, 5))
        assert res.zero_sum == 0.0
        assert abs(res.boundary_sum) <= 1e-6

    def test_single_zero(self, davenport):
        res = dl.littlewood_sum(davenport, dl.Rectangle(0.5, 3.0, -1, 1))
        assert res.zero_sum == pytest.approx(math.pi, abs=1e-12)
        assert abs(res.difference) <= 1e-5

    def test_three_zeros(self, davenport):
        res = dl.littlewood_sum(davenport, dl.Rectangle(0.5, 3.0, -10, 10))
        assert res.zero_sum == pytest.approx(2 * math.pi * 1.5, abs=1e-9)
        assert abs(res.difference) <= 1e-5

    def test_closure_on_corpus_rectangles(self, rng):
        for name in ("davenport", "two_term", "three_term"):
            f = dl.corpus_build(name)
            res = dl.littlewood_sum(f, dl.Rectangle(0.3, 2.5, -7.3, 6.1))
            assert abs(res.difference) <= 1e-5, name


class TestCountingNf:
    def test_lattice_value(self, mono2):
        # solutions of 2^(-s) = 1/2 on the lattice 1 + 2 pi i k/log2
        got = dl.counting_Nf(mono2, 0.5, 40.0)
        assert got == pytest.approx((math.pi / 40) * 9, rel=1e-9)

    def test_rotation_invariance(self, mono2):
        a = dl.counting_Nf(mono2, 0.5, 40.0)
        b = dl.counting_Nf(mono2, 0.5 * np.exp(0.8j), 40.0)
        # rotating xi shifts the solution ordinates only; the count can
        # change by at most the edge solutions
        assert abs(a - b) <= math.pi / 40 + 1e-12

    def test_no_solutions(self):
        f = dl.DirichletPolynomial({1: 0.5, 2: 0.25})
        # f = 1/2 forces 2^(-s) = 0 (impossible); f = 0.1 forces
        # |2^(-s)| = 1.6, which only happens left of the imaginary axis
        assert dl.counting_Nf(f, 0.5, 10.0) == 0.0
        assert dl.counting_Nf(f, 0.1, 10.0) == 0.0

    def test_frostman_zero_equivalence(self, mono2, rng):
        # solutions of f = xi coincide with zeros of the Frostman shift,
        # isolated through the same machinery (it only needs eval_many and
        # derivative, so the Mobius transform plugs straight in)
        xi = 0.4 * np.exp(1.3j)
        g = shift_value(mono2, xi)
        gamma = dominance_abscissa(g)
        rect = dl.Rectangle(1e-6, gamma, -15, 15)
        direct = sorted(dl.isolate_zeros(g, rect).locations(),
                        key=lambda z: z.imag)

        class MobiusShift:
            """(xi - f) / (1 - conj(xi) f) with its exact derivative."""

            def __init__(self, f, xi):
                self.f, self.fp, self.xi = f, f.derivative(), xi

            def eval_many(self, s):
                return dl.frostman_map(self.f.eval_many(s), self.xi)

            def derivative(self):
                outer_self = self

                class _D:
                    def eval_many(self, s):
                        w = outer_self.f.eval_many(s)
                        den = (1.0 - np.conj(outer_self.xi) * w) ** 2
                        return outer_self.fp.eval_many(s) \
                            * (abs(outer_self.xi) ** 2 - 1.0) / den
                return _D()

        shifted = sorted(
            dl.isolate_zeros(MobiusShift(mono2, xi), rect).locations(),
            key=lambda z: z.imag)
        assert len(direct) == len(shifted) > 0
        for a, b in zip(direct, shifted):
            assert abs(a - b) < 1e-9
        sigma_star = math.log(1 / abs(xi)) / LOG2
        for z in direct:
            assert abs(mono2.eval(z) - xi) < 1e-9
            assert abs(z.real - sigma_star) < 1e-9

    def test_requires_valid_xi(self, mono2):
        with pytest.raises(ValueError):
            dl.counting_Nf(mono2, 1.2, 10.0)
        # xi = f(+infinity) is permitted for finite sums (confined level
        # set; here empty), but the mean counting bound is undefined there
        assert dl.counting_Nf(mono2, 0.0, 10.0) == 0.0
        with pytest.raises(ValueError):
            dl.mean_counting(mono2, 0.0)


class TestMeanCounting:
    def test_mono2_log_law(self, mono2):
        for xi in (0.3, 0.5 * np.exp(1j), 0.8):
            res = dl.mean_counting(mono2, complex(xi))
            assert abs(res.value - math.log(1 / abs(xi))) <= 0.02

    def test_constant_no_solutions(self):
        f = dl.DirichletPolynomial({1: 0.5})
        res = dl.mean_counting(f, 0.2)
        assert res.value == 0.0

    def test_littlewood_bound_randomized(self, rng):
        f = dl.DirichletPolynomial({2: 0.5, 3: 0.5})
        sched = dl.MeanSchedule(T_list=(50.0, 100.0, 200.0))
        for _ in range(20):
            xi = rng.uniform(0.15, 0.85) * np.exp(1j * rng.uniform(0, 7))
            res = dl.mean_counting(f, complex(xi), sched)
            assert res.value <= res.littlewood_bound + 0.02

    def test_twist_covariance(self, mono2):
        sched = dl.MeanSchedule(T_list=(100.0, 200.0))
        xi = 0.45
        base = dl.mean_counting(mono2, xi, sched).value
        translated = dl.vertical_translate(mono2, 0.37)
        moved = dl.mean_counting(translated, xi, sched).value
        assert abs(base - moved) <= 0.03


class TestJensenCheck:
    def test_zero_free(self, two_term):
        rep = dl.jensen_check(two_term, 0.5)
        assert rep.passed
        assert abs(rep.lhs) < 1e-12
        assert abs(rep.rhs) < 1e-9

    def test_davenport_at_half(self, davenport):
        rep = dl.jensen_check(davenport, 0.5)
        assert rep.passed
        assert rep.rhs == pytest.approx(0.5 * LOG2, abs=1e-8)
        assert abs(rep.lhs - rep.rhs) <= 5e-2

    def test_davenport_right_of_zeros(self, davenport):
        rep = dl.jensen_check(davenport, 1.5)
        assert rep.passed
        assert rep.lhs == 0.0
        assert abs(rep.rhs) < 1e-9

    def test_rejects_vanishing_head(self, mono2):
        with pytest.raises(ValueError):
            dl.jensen_check(mono2, 0.5)


class TestLimsupBound:
    def test_mono2(self, mono2):
        sched = dl.MeanSchedule(T_list=(50.0, 100.0, 200.0))
        rep = dl.limsup_bound_check(mono2, 0.5, sched)
        assert rep.rhs == pytest.approx(LOG2)
        assert rep.passed

    def test_constant(self):
        f = dl.DirichletPolynomial({1: 0.25})
        rep = dl.limsup_bound_check(f, 0.6, dl.MeanSchedule(T_list=(20.0, 40.0)))
        assert rep.lhs == 0.0
        assert rep.passed

    def test_randomized_inequality(self, rng):
        f = dl.DirichletPolynomial({2: 0.5, 3: 0.5})
        sched = dl.MeanSchedule(T_list=(50.0, 100.0))
        for _ in range(10):
            xi = rng.uniform(0.2, 0.8) * np.exp(1j * rng.uniform(0, 7))
            rep = dl.limsup_bound_check(f, complex(xi), sched)
            assert rep.passed


class TestBlaschkeCondition:
    def test_zero_free(self):
        f = dl.DirichletPolynomial({1: 1.0, 2: 0.25})
        rep = dl.blaschke_condition_check(f, 2.0, 0.5, n_windows=3)
        assert rep.lhs == 0.0
        assert rep.passed

    def test_davenport(self, davenport):
        # |1 - 2^(1-s)| >= 1/2 on Re s = 2
        rep = dl.blaschke_condition_check(davenport, 2.0, 0.5, n_windows=10)
        assert rep.passed
        bound = (4 * 4 + 1) / 4 * math.log(rep.params["sup_norm"] / 0.5)
        assert rep.rhs == pytest.approx(bound)
        # each unit window holds 0 or 1 lattice zeros, each with Re = 1
        assert all(v in (0.0, 1.0) or abs(v - 1.0) < 1e-9 or abs(v) < 1e-9
                   for _, v in rep.trace)

    def test_single_frequency_log_integral(self, mono2):
        # |log |2^(-it)|| = 0 on the boundary line
        rep = dl.blaschke_condition_check(mono2, 1.0, 0.4, n_windows=2)
        assert rep.params["log_integral_worst"] <= 1e-9
        assert rep.passed

    def test_hypothesis_failure(self, davenport):
        with pytest.raises(HypothesisFailed):
            dl.blaschke_condition_check(davenport, 1.0, 0.9)


class TestLogxiBounds:
    def test_origin_case(self):
        r = 0.6
        lower, upper = dl.logxi_bounds(0.0, r)
        assert lower == pytest.approx(-0.5 * (1 - r * r) / (r * r))
        assert upper == pytest.approx(-0.5 * (1 - r * r))
        assert lower <= math.log(r) <= upper

    def test_sandwich_randomized(self, rng):
        for _ in range(200):
            z = rng.uniform(0, 0.95) * np.exp(1j * rng.uniform(0, 7))
            xi = rng.uniform(0.05, 0.95) * np.exp(1j * rng.uniform(0, 7))
            if abs(z - xi) < 1e-3:
                continue
            lower, upper = dl.logxi_bounds(z, xi)
            mid = math.log(abs((xi - z) / (1 - np.conj(xi) * z)))
            assert lower - 1e-12 <= mid <= upper + 1e-12

    def test_swap_symmetry(self):
        z, xi = 0.4, 0.8
        m1 = math.log(abs((xi - z) / (1 - xi * z)))
        m2 = math.log(abs((z - xi) / (1 - z * xi)))
        assert m1 == pytest.approx(m2)

    def test_rejects_coincident(self):
        with pytest.raises(ValueError):
            dl.logxi_bounds(0.3, 0.3)


class TestMinModulus:
    def test_zero_free_floor(self, two_term):
        strip = dl.Rectangle(0.1, 3.0, -5, 5)
        m = dl.min_modulus_diagnostic(two_term, strip, 0.5)
        assert m >= 0.5  # coefficient bound: |1 + w/2| >= 1/2

    def test_davenport_positive(self, davenport):
        strip = dl.Rectangle(0.5, 1.5, -10, 10)
        m = dl.min_modulus_diagnostic(davenport, strip, 0.5)
        assert m > 0

    def test_translation_invariance(self, davenport):
        strip = dl.Rectangle(0.5, 1.5, -10, 10)
        m1 = dl.min_modulus_diagnostic(davenport, strip, 0.4)
        g = dl.vertical_translate(davenport, SPACING)  # one full period
        m2 = dl.min_modulus_diagnostic(g, strip, 0.4)
        assert m1 == pytest.approx(m2, abs=1e-9)
