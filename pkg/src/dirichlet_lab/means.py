"""Vertical-window means, torus (Haar) means, norms and the long-run
log-modulus mean, plus the ergodic cross-check tying the two together.

Two routes to every mean value:

* window route -- (1/2T) integral over a vertical segment at abscissa sigma;
* torus route  -- Haar average over character angles at the support primes,
  the T -> infinity limit of the window route.

Finite sums are continuous up to the boundary, so sigma = 0 is allowed
everywhere here (a deliberate departure from limit formulations).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureNonconvergence, TooManyPrimes, ZeroOnLine
from .quadrature import QuadResult, gl_adaptive, gl_refine, leggauss, torus_mean_refine
from .reports import CheckReport
from .series import GeneralizedSeries, factorize

TWO_PI = 2.0 * math.pi

# quadrature nodes with |f| below this are treated as numerical zeros
ZERO_FLOOR = 1e-300
# panels whose sampled |f| dips below this get bisected (log integrands)
LOG_GUARD = 1e-6
LOG_GUARD_DEPTH = 24


@dataclass(frozen=True)
class MeanSchedule:
    """Window half-lengths, panel density and the stabilization tolerance."""

    T_list: tuple = (50.0, 100.0, 200.0, 400.0)
    panels_per_unit: int = 4
    eps_stab: float = 1e-3

    def __post_init__(self):
        ts = tuple(float(t) for t in self.T_list)
        if len(ts) < 2 or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("T_list must be strictly increasing with >= 2 entries")
        if self.panels_per_unit < 4:
            raise ValueError("panel count per unit length must be >= 4")
        object.__setattr__(self, "T_list", ts)

    @property
    def T_max(self):
        return self.T_list[-1]


DEFAULT_SCHEDULE = MeanSchedule()


# ---------------------------------------------------------------------------
# torus evaluation of f_chi(sigma) on tensor angle grids
# ---------------------------------------------------------------------------

def torus_dimension(f):
    return len(f.support_primes())


def _exponent_table(f, sigma):
    """Coefficient tensor C and per-axis exponent values such that
    f_chi(sigma) = sum C[v] * exp(i * sum_j exps[j][v_j] * theta_j)."""
    if isinstance(f, GeneralizedSeries):
        if len(f.coefficients) == 0:
            return np.asarray(0j), []
        pairs = f.exponent_pairs
        coeffs = f.coefficients * np.exp(-sigma * f.frequencies)
        axes = []
        idx = []
        for j in range(2):
            uniq = np.unique(pairs[:, j])
            axes.append(uniq.astype(np.float64))
            lookup = {v: i for i, v in enumerate(uniq)}
            idx.append(np.array([lookup[v] for v in pairs[:, j]]))
        C = np.zeros([len(a) for a in axes], dtype=np.complex128)
        np.add.at(C, (idx[0], idx[1]), coeffs)
        # drop singleton axes whose only exponent is 0 (prime unused)
        keep = [j for j in range(2) if not (C.shape[j] == 1 and axes[j][0] == 0.0)]
        if len(keep) < 2:
            C = np.squeeze(C, axis=tuple(j for j in range(2) if j not in keep))
        axes = [axes[j] for j in keep]
        return C, axes
    primes = f.support_primes()
    ns = f.indices
    if len(ns) == 0:
        return np.asarray(0j), []
    coeffs = f.coefficients * np.exp(-sigma * np.log(ns.astype(float)))
    if not primes:
        return np.asarray(complex(np.sum(coeffs))), []
    vecs = []
    for n in ns:
        fac = factorize(int(n))
        vecs.append([fac.get(p, 0) for p in primes])
    vecs = np.array(vecs, dtype=np.int64).reshape(len(ns), len(primes))
    axes = [np.arange(vecs[:, j].max() + 1, dtype=np.float64)
            for j in range(len(primes))]
    C = np.zeros([len(a) for a in axes], dtype=np.complex128)
    np.add.at(C, tuple(vecs[:, j] for j in range(len(primes))), coeffs)
    return C, axes


def _grid_evaluator(f, sigma):
    """Return (d, values(*angle_axes) -> complex grid) for f_chi(sigma)."""
    C, axes = _exponent_table(f, sigma)
    d = len(axes)

    def values(*grids):
        if d == 0:
            return np.asarray(C, dtype=np.complex128)
        nodes = [np.asarray(g, dtype=np.float64).ravel() for g in grids]
        T = C
        for j in reversed(range(d)):
            E = np.exp(1j * np.multiply.outer(nodes[j], axes[j]))
            T = np.tensordot(T, E, axes=([j], [1]))
        return np.transpose(T)

    return d, values


def parseval_square_mean(f, sigma):
    """Haar mean of |f_chi(sigma)|^2 by orthogonality: sum |a_n|^2 n^(-2 sigma)."""
    if isinstance(f, GeneralizedSeries):
        return float(np.sum(np.abs(f.coefficients) ** 2
                            * np.exp(-2.0 * sigma * f.frequencies)))
    ns = f.indices.astype(float)
    return float(np.sum(np.abs(f.coefficients) ** 2 * ns ** (-2.0 * sigma)))


# ---------------------------------------------------------------------------
# means
# ---------------------------------------------------------------------------

def window_mean(f, sigma, T, p, schedule=None):
    """(1/2T) integral of |f(sigma + it)|^p over |t| < T.

    Composite Gauss-Legendre, panels doubled until two refinements agree to
    1e-10 (absolute error <= 1e-9); QuadratureNonconvergence after depth 20.
    """
    if T <= 0:
        raise ValueError("window half-length T must be positive")
    schedule = schedule or DEFAULT_SCHEDULE
    n0 = max(4, int(math.ceil(2 * T * schedule.panels_per_unit)))

    def g(t):
        return np.abs(f.eval_many(sigma + 1j * t)) ** p

    res = gl_refine(g, -T, T, n_panels0=n0, order=16,
                    abs_tol=1e-10 * 2 * T, max_doublings=20)
    return res.value / (2.0 * T)


def torus_mean(f, sigma, p, *, abs_tol=1e-10):
    """Haar average over the support-prime torus of |f_chi(sigma)|^p.

    Tensor-product Gauss-Legendre with >= 64 nodes per dimension, doubled
    until stabilization.  The prime support is capped at 4 (cost safeguard).
    For p = 2 the value is cross-checked against the orthogonality sum.
    """
    d = torus_dimension(f)
    if d > 4:
        raise TooManyPrimes(f"support involves {d} primes; the cap is 4")
    deff, values = _grid_evaluator(f, sigma)
    if deff == 0:
        return float(abs(np.asarray(values()).ravel()[0]) ** p)

    def integrand(*grids):
        return np.abs(values(*grids)) ** p

    res = torus_mean_refine(integrand, deff, n0=64, abs_tol=abs_tol,
                            rel_tol=1e-12)
    if p == 2:
        exact = parseval_square_mean(f, sigma)
        if abs(res.value - exact) > max(1e-8, 1e-8 * abs(exact)):
            raise QuadratureNonconvergence(
                f"internal orthogonality cross-check failed: quadrature "
                f"{res.value!r} vs coefficient sum {exact!r}")
    return res.value


def hp_norm(f, p, schedule=None, with_trace=False):
    """Limit-free norm of the finite sum: the sigma = 0 torus mean to the 1/p.

    The sigma-trace torus_mean(f, sigma, p)^(1/p) on sigma = 0.1, 0.05, ...
    is walked until successive values differ by less than eps_stab, so the
    boundary value is reported together with the approach that justifies it.
    """
    schedule = schedule or DEFAULT_SCHEDULE
    trace = []
    sigma = 0.1
    prev = None
    for _ in range(12):
        val = torus_mean(f, sigma, p) ** (1.0 / p)
        trace.append((sigma, val))
        if prev is not None and abs(val - prev) < schedule.eps_stab:
            break
        prev = val
        sigma *= 0.5
    value = torus_mean(f, 0.0, p) ** (1.0 / p)
    trace.append((0.0, value))
    if with_trace:
        return value, trace
    return value


# ---------------------------------------------------------------------------
# log-modulus means (the convex long-run mean of log |f|)
# ---------------------------------------------------------------------------

def _clipped_log_abs(vals):
    a = np.abs(vals)
    if np.any(a < ZERO_FLOOR):
        raise ZeroOnLine("quadrature node with |f| < 1e-300")
    return np.log(a)


def _leftover_budget(intervals, scale):
    """Analytic bound for unresolved log-singular panels: integral of
    log(1/x) over (0, h] equals h (1 + log(1/h))."""
    total = 0.0
    for lo, hi in intervals:
        h = hi - lo
        total += h * (1.0 + abs(math.log(max(h, 1e-300))))
    return total * scale


def _log_mean_1d(values_fn, lo, hi, abs_tol=1e-10):
    # the dip threshold is relative to the typical modulus, else a uniformly
    # small integrand would force full-depth subdivision everywhere
    probe = np.abs(values_fn(np.linspace(lo, hi, 257)))
    scale = float(probe.max(initial=0.0))
    if scale < ZERO_FLOOR:
        raise ZeroOnLine("function is numerically zero on the whole line")

    def g(x):
        return _clipped_log_abs(values_fn(x))

    def guard(x):
        return np.abs(values_fn(x))

    res = gl_adaptive(g, lo, hi, abs_tol=abs_tol * (hi - lo), order=12,
                      max_depth=40, guard=guard,
                      guard_threshold=LOG_GUARD * scale,
                      guard_max_depth=LOG_GUARD_DEPTH)
    budget = _leftover_budget(res.leftover_intervals, 1.0)
    return QuadResult(res.value / (hi - lo),
                      (res.est_error + budget) / (hi - lo),
                      res.evaluations)


def _log_mean_2d(values_fn, abs_tol=1e-9, max_boxes=40_000):
    """Worst-box-first adaptive tensor rule on [0, 2pi]^2 for the mean of
    log |f|.

    Each box carries an order-8 vs order-16 error estimate; boxes sampling a
    dip of |f| below 1e-6 of the typical modulus carry the analytic
    log-singularity budget h^2 (1 + log(1/h)) instead, which forces their
    refinement (up to depth 24) and otherwise enters the reported error.
    Refinement stops when the total error budget clears abs_tol * area."""
    x8, w8 = leggauss(8)
    x16, w16 = leggauss(16)
    probe_axis = np.linspace(0.0, TWO_PI, 65)
    scale = float(np.abs(values_fn(probe_axis, probe_axis)).max(initial=0.0))
    if scale < ZERO_FLOOR:
        raise ZeroOnLine("function is numerically zero on the whole torus")
    dip = LOG_GUARD * scale

    def log_vals(nx, ny):
        mags = np.abs(values_fn(nx, ny))
        if np.any(mags < ZERO_FLOOR):
            raise ZeroOnLine("quadrature node with |f| < 1e-300")
        return np.log(mags), float(mags.min())

    def box_estimate(bx, by, depth):
        hx, hy = 0.5 * (bx[1] - bx[0]), 0.5 * (by[1] - by[0])
        g8, m8 = log_vals(0.5 * (bx[1] + bx[0]) + hx * x8,
                          0.5 * (by[1] + by[0]) + hy * x8)
        g16, m16 = log_vals(0.5 * (bx[1] + bx[0]) + hx * x16,
                            0.5 * (by[1] + by[0]) + hy * x16)
        i8 = hx * hy * float(w8 @ g8 @ w8)
        i16 = hx * hy * float(w16 @ g16 @ w16)
        min_mag = min(m8, m16)
        err = abs(i16 - i8)
        singular = min_mag < dip
        if singular and depth < LOG_GUARD_DEPTH:
            h = 2.0 * max(hx, hy)
            err = max(err, h * h * (1.0 + abs(math.log(max(h, 1e-300)))))
        return i16, err, singular

    area = TWO_PI ** 2
    tol_total = abs_tol * area
    counter = 0
    heap = []
    full = ((0.0, TWO_PI), (0.0, TWO_PI))
    i0, e0, s0 = box_estimate(*full, 0)
    heapq.heappush(heap, (-e0, counter, full[0], full[1], i0, 0, s0))
    total = i0
    total_err = e0
    frozen = 0.0
    boxes = 1
    while total_err > tol_total and heap and boxes < max_boxes:
        neg_err, _, bx, by, ival, depth, singular = heapq.heappop(heap)
        total_err -= -neg_err
        total -= ival
        if depth >= 32 or (singular and depth >= LOG_GUARD_DEPTH):
            total += ival
            h = max(bx[1] - bx[0], by[1] - by[0])
            frozen += h * h * (1.0 + abs(math.log(max(h, 1e-300))))
            continue
        xm = 0.5 * (bx[0] + bx[1])
        ym = 0.5 * (by[0] + by[1])
        for kb in (((bx[0], xm), (by[0], ym)), ((xm, bx[1]), (by[0], ym)),
                   ((bx[0], xm), (ym, by[1])), ((xm, bx[1]), (ym, by[1]))):
            counter += 1
            iv, ev, sv = box_estimate(kb[0], kb[1], depth + 1)
            heapq.heappush(heap, (-ev, counter, kb[0], kb[1], iv,
                                  depth + 1, sv))
            total += iv
            total_err += ev
            boxes += 1
    return QuadResult(total / area, (total_err + frozen) / area, boxes)


def jessen_function(f, sigma, mode="torus", T=None, schedule=None):
    """Long-run mean of log |f| at abscissa sigma (convex in sigma).

    ``mode="torus"`` takes the Haar mean of log |f_chi(sigma)| over the
    support torus; ``mode="window"`` takes the vertical-window mean with
    half-length T.  Integrable log dips are handled by panel bisection near
    small |f|, the unresolved remainder entering the error estimate.
    """
    if mode == "window":
        schedule = schedule or DEFAULT_SCHEDULE
        half = float(T if T is not None else schedule.T_max)

        def vals(t):
            return f.eval_many(sigma + 1j * t)

        return _log_mean_1d(vals, -half, half).value
    if mode != "torus":
        raise ValueError(f"unknown jessen mode {mode!r}")
    d, values = _grid_evaluator(f, sigma)
    if d == 0:
        v = abs(np.asarray(values()).ravel()[0])
        if v < ZERO_FLOOR:
            raise ZeroOnLine("constant series is numerically zero")
        return math.log(v)
    if d == 1:
        return _log_mean_1d(lambda x: values(x), 0.0, TWO_PI).value
    if d == 2:
        return _log_mean_2d(lambda nx, ny: values(nx, ny)).value
    # d in {3, 4}: no interior zeros expected at positive sigma for the
    # corpus; fall back to the stabilized smooth rule.
    def integrand(*grids):
        return _clipped_log_abs(values(*grids))

    return torus_mean_refine(integrand, d, n0=64, abs_tol=1e-9).value


def window_cross_term_bound(f, sigma):
    """Amplitude bound for the finite-window error of the square mean:
    |window - torus| <= C / T with C = sum over frequency pairs of
    2 |a_j a_k| e^(-sigma (lam_j + lam_k)) / |lam_j - lam_k|."""
    lams = f.frequencies
    weights = np.abs(f.coefficients) * np.exp(-sigma * lams)
    C = 0.0
    for j in range(len(lams)):
        for k in range(j + 1, len(lams)):
            C += 2.0 * weights[j] * weights[k] / abs(lams[j] - lams[k])
    return float(C)


def ergodic_crosscheck(f, sigma, p, schedule=None):
    """Window means against the Haar mean: equal in the long-window limit.

    lhs is the window mean at the largest scheduled T, rhs the torus mean;
    the pass band is eps_stab + C/T.  For p = 2 the constant C is the exact
    cross-term amplitude bound from the coefficients; otherwise it is fitted
    from the earlier T-trace (times a safety factor, since the trace samples
    the oscillation at arbitrary phases)."""
    if sigma <= 0:
        raise ValueError("ergodic cross-check requires sigma > 0")
    schedule = schedule or DEFAULT_SCHEDULE
    rhs = torus_mean(f, sigma, p)
    trace = []
    for T in schedule.T_list:
        trace.append((T, window_mean(f, sigma, T, p, schedule)))
    lhs = trace[-1][1]
    earlier = trace[:-1]
    C_trace = max((T * abs(v - rhs) for T, v in earlier), default=0.0)
    if p == 2:
        C = max(C_trace, window_cross_term_bound(f, sigma))
    else:
        C = 3.0 * C_trace
    tol = schedule.eps_stab + C / schedule.T_max
    return CheckReport(
        name="ergodic-crosscheck",
        lhs=lhs, rhs=rhs, tol=tol, tol_mode="abs",
        params={"sigma": sigma, "p": p, "T_list": list(schedule.T_list),
                "C_fit": C},
        trace=trace)
