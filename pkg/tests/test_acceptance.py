"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Every tolerance is pinned here, not deferred; oracles are closed forms
(single-frequency strip integrals, orthogonality sums, explicit zero
lattices, polygon areas) or the analytic bounds stated inline."""

import math
import time

import numpy as np
import pytest

import dirichlet_lab as dl

LOG2 = math.log(2.0)
SPACING = 2 * math.pi / LOG2


def _line(number, ok, detail):
    status = "pass" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} [{status}]: {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_closed_form_hardy_stein(mono2):
    t0 = time.monotonic()
    worst_closed = 0.0
    worst_quad = 0.0
    for p in (1, 2, 3):
        for kappa in (0.5, 1.0):
            oracle = -p * LOG2 * 2.0 ** (-p * kappa)
            closed = dl.hardy_stein_rhs(mono2, p, kappa, method="closed_form")
            quad = dl.hardy_stein_rhs(mono2, p, kappa, T=200,
                                      method="quadrature")
            worst_closed = max(worst_closed,
                               abs(closed - oracle) / abs(oracle))
            worst_quad = max(worst_quad, abs(quad - oracle) / abs(oracle))
    elapsed = time.monotonic() - t0
    ok = worst_closed <= 1e-6 and worst_quad <= 1e-3 and elapsed < 10.0
    _line(1, ok, f"single-frequency strip integral: closed-form rel "
                 f"{worst_closed:.2e} (<=1e-6), quadrature rel "
                 f"{worst_quad:.2e} (<=1e-3), {elapsed:.1f}s (<10s)")


def test_criterion_2_parseval_derivative(three_term_unit):
    t0 = time.monotonic()
    worst = 0.0
    for kappa in (0.5, 1.0):
        rhs = dl.hardy_stein_rhs(three_term_unit, 2, kappa, T=400,
                                 method="quadrature")
        oracle = -sum(abs(a) ** 2 * 2 * math.log(n) * n ** (-2 * kappa)
                      for n, a in three_term_unit.terms if n >= 2)
        worst = max(worst, abs(rhs - oracle) / abs(oracle))
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-2 and elapsed < 60.0
    _line(2, ok, f"orthogonality-derivative match at T=400: rel "
                 f"{worst:.2e} (<=1e-2), {elapsed:.1f}s (<60s)")


def test_criterion_3_littlewood_paley_closure(mono2, two_term):
    worst_mono = 0.0
    for p in (1, 2, 4):
        rep = dl.littlewood_paley(mono2, p)
        worst_mono = max(worst_mono, abs(rep.lhs - 1.0), abs(rep.rhs - 1.0))
    rep2 = dl.littlewood_paley(two_term, 2)
    err2 = max(abs(rep2.lhs - 1.25), abs(rep2.rhs - 1.25))
    ok = worst_mono <= 1e-3 and err2 <= 2e-2
    _line(3, ok, f"norm^p closure: single-frequency off by {worst_mono:.2e} "
                 f"(<=1e-3), two-term off by {err2:.2e} (<=2e-2)")


def test_criterion_4_boundary_lp_corpus():
    sched = dl.MeanSchedule(T_list=(50.0, 100.0, 200.0))
    ok = True
    details = []
    for name in dl.corpus_names():
        f = dl.corpus_build(name)
        rep = dl.boundary_lp_check(f, 2, sched)
        final = abs(rep.trace[-1][1])
        good = rep.passed and rep.params["shrinking"] and \
            final <= 5e-2 * max(rep.lhs, 1.0)
        ok = ok and good
        details.append(f"{name}:{final:.1e}")
    _line(4, ok, "boundary-window residuals shrink to final <= 5e-2 max(lhs,1)"
                 " at T=200 [" + " ".join(details) + "]")


def test_criterion_5_zero_lattice(davenport):
    ok = True
    details = []
    for T in (20.0, 50.0):
        zl = dl.isolate_zeros(davenport, dl.Rectangle(0.5, 1.5, -T, T),
                              tol=1e-9)
        expected_count = 2 * int(T * LOG2 / (2 * math.pi)) + 1
        count_ok = len(zl) == expected_count
        loc_ok = True
        for h in zl.sorted_by_height():
            k = round(h.location.imag / SPACING)
            loc_ok &= abs(h.location - (1 + 1j * SPACING * k)) <= 1e-9
        ok = ok and count_ok and loc_ok
        details.append(f"T={T:g}: {len(zl)}/{expected_count} zeros on-lattice")
    rep = dl.jensen_check(davenport, 0.5)
    jensen_ok = rep.passed and abs(rep.rhs - 0.5 * LOG2) <= 1e-6 \
        and abs(rep.lhs - rep.rhs) <= 5e-2
    ok = ok and jensen_ok
    _line(5, ok, "; ".join(details)
          + f"; zero-sum vs log-mean at 0.5: |diff|={rep.abs_err:.3f} (<=0.05)")


def test_criterion_6_mean_counting(mono2, rng):
    ok = True
    details = []
    for xi in (0.3, 0.5 * np.exp(1j), 0.8):
        res = dl.mean_counting(mono2, complex(xi))
        target = math.log(1 / abs(xi))
        err = abs(res.value - target)
        bound_gap = abs(res.value - res.littlewood_bound)
        good = err <= 0.02 and bound_gap <= 0.02
        ok = ok and good
        details.append(f"|xi|={abs(xi):.2g}: err={err:.3f}")
    f = dl.DirichletPolynomial({2: 0.5, 3: 0.5})
    sched = dl.MeanSchedule(T_list=(50.0, 100.0, 200.0))
    worst_slack = math.inf
    for _ in range(20):
        xi = rng.uniform(0.15, 0.85) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        res = dl.mean_counting(f, complex(xi), sched)
        worst_slack = min(worst_slack, res.littlewood_bound - res.value)
    ok = ok and worst_slack >= -0.02
    _line(6, ok, "counting law " + ", ".join(details)
          + f"; 20-point bound slack >= {worst_slack:.3f} (>=-0.02)")


def test_criterion_7_ergodic_visit(rng):
    t0 = time.monotonic()
    worst = 0.0
    for _ in range(10):
        U = dl.random_torus_set(rng)
        frac, area = dl.visit_fraction(U, 2000.0, with_area=True)
        worst = max(worst, abs(frac - area))
    elapsed = time.monotonic() - t0
    ok = worst <= 0.03 and elapsed < 30.0
    _line(7, ok, f"10 random polygon sets at T=2000: worst "
                 f"|visit - area| = {worst:.4f} (<=0.03), {elapsed:.1f}s (<30s)")


def test_criterion_8_gap_experiment():
    U = dl.parallelogram_cover(10, 0.30)
    area_ok = U.area() <= 0.1 * (2 * math.pi) ** 2
    sched = dl.MeanSchedule(T_list=(2.5, 5.0, 10.0))
    rep = dl.gap_experiment(U, 0.5, 48, 2, sched, seed=0)
    e_inf = rep.params["build"]["boundary_error"]
    ok = area_ok and rep.passed and rep.lhs >= 0.2 and e_inf <= 0.1
    _line(8, ok, f"finite-window gap: line {rep.params['line_mean']:.3f} - "
                 f"torus {rep.params['torus_mean']:.3f} = {rep.lhs:.3f} "
                 f"(>=0.2), e_inf={e_inf:.3f} (<=0.1), "
                 f"cover area fraction {U.normalized_area:.3f} (<=0.1)")


def test_criterion_9_oscillation():
    spread = (0.99 * 0.6 - 0.01 * 15.0) * (1 - 0.49) / 2
    assert spread == pytest.approx(0.11322, abs=1e-5)
    reps = dl.oscillation_experiment(0.01, (0.35, 0.35, 0.35), (1, 4, 24), 2,
                                     eps=0.5, xi_abs=0.7, n_xi=2, degree=128,
                                     grid_k=11, seed=0)
    ok = all(r.passed for r in reps)
    worst = min(r.lhs for r in reps)
    _line(9, ok, f"2-alternation window means straddle the predicted spread "
                 f"{spread:.4f} (c=15, C=0.6): min consecutive difference "
                 f"{worst:.4f} across {len(reps)} sampled xi at |xi|=0.7")


def test_criterion_10_randomized_invariant_suites(rng):
    """Compact seed-0 rerun of the headline randomized invariants; the full
    per-module suites run alongside in this same pytest session (runtime
    budget enforced by the suite run itself)."""
    # complete multiplicativity, 500 random pairs
    chi = dl.Character({2: 0.7, 3: 2.1, 5: 4.4})
    smooth = [n for n in range(1, 400)
              if all(p in (2, 3, 5) for p in dl.series.factorize(n))]
    mult_ok = True
    for _ in range(500):
        m, n = rng.choice(smooth, size=2)
        mult_ok &= abs(chi.value(int(m) * int(n))
                       - chi.value(int(m)) * chi.value(int(n))) < 1e-12
    # Mobius involution at 100 points
    f = dl.DirichletPolynomial({1: 0.2, 2: 0.3, 3: 0.2})
    inv_ok = True
    for _ in range(100):
        xi = rng.uniform(0.05, 0.9) * np.exp(1j * rng.uniform(0, 7))
        w = f.eval(complex(rng.uniform(0, 3), rng.uniform(-10, 10)))
        back = dl.frostman_map(dl.frostman_map(np.array([w]), xi), xi)[0]
        inv_ok &= abs(back - w) < 1e-12
    # axis modulus of products over 100 random zero sets
    bl_ok = True
    for _ in range(100):
        zeros = [complex(rng.uniform(0.2, 3), rng.uniform(-5, 5))
                 for _ in range(int(rng.integers(1, 4)))]
        t = rng.uniform(-10, 10)
        bl_ok &= abs(abs(dl.blaschke_eval(dl.BlaschkeData(zeros), 1j * t))
                     - 1.0) < 1e-10
    # derivative vs central difference at 100 points
    g = dl.DirichletPolynomial({1: 0.3, 2: 1.1, 3: -0.7, 6: 0.4})
    gp = g.derivative()
    fd_ok = True
    for _ in range(100):
        s = complex(rng.uniform(0.2, 3.0), rng.uniform(-20, 20))
        fd = (g.eval(s + 1e-6) - g.eval(s - 1e-6)) / 2e-6
        fd_ok &= abs(gp.eval(s) - fd) <= 1e-6 * max(1.0, abs(gp.eval(s)))
    ok = mult_ok and inv_ok and bl_ok and fd_ok
    _line(10, ok, "seed-0 randomized invariants (500-pair multiplicativity, "
                  "100-point involution, 100 product moduli, 100 derivative "
                  "checks) all hold; module suites run in this session")
