"""Hardy-Stein and Littlewood-Paley checks.

Every check compares two independent routes to the same quantity:

* hardy_stein_check -- finite differences of the smooth torus mean in the
  abscissa against the (negative) strip integral of p^2 |f|^(p-2) |f'|^2;
* littlewood_paley  -- the norm^p against |f(+inf)|^p plus the
  (sigma - sigma0)-weighted strip integral extrapolated to sigma0 = 0;
* boundary_lp_check -- the boundary-window mean against the sigma-weighted
  strip integral at matched window half-length T (residual must shrink);
* torus_lp          -- the norm^p against the Haar-averaged sigma-line
  integral (no windows at all).

The strip integrals truncate at an abscissa where coefficient-decay bounds
push the integrand tail below 1e-10, and for p < 2 they exclude small disks
around the zeros of f, whose integrable mass is bounded analytically and
carried in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureNonconvergence, SingularPoint
from .means import (DEFAULT_SCHEDULE, _grid_evaluator, hp_norm, torus_mean,
                    window_mean)
from .quadrature import (gl_adaptive, gl_refine, panel_nodes,
                         richardson_to_zero, torus_mean_refine)
from .reports import CheckReport
from .zeros import Rectangle, _isolate_with_jitter

TAIL_TOL = 1e-10


@dataclass(frozen=True)
class AreaIntegralSpec:
    """Domain and weight of a strip integral; recorded in every report.

    weight is one of "none", "sigma-shift" ((sigma - sigma0)) and "sigma".
    rho is the zero-exclusion disk radius used when p < 2.
    """

    sigma_min: float = 0.0
    sigma_max: float | None = None
    T: float | None = None
    weight: str = "none"
    rho: float = 1e-3

    def __post_init__(self):
        if self.weight not in ("none", "sigma-shift", "sigma"):
            raise ValueError(f"unknown weight {self.weight!r}")
        if self.rho < 0:
            raise ValueError("exclusion radius must be nonnegative")
        if self.sigma_max is not None and self.sigma_min >= self.sigma_max:
            raise ValueError("sigma_min must be below sigma_max")


def area_integrand(f, p, s, fprime=None):
    """p^2 |f(s)|^(p-2) |f'(s)|^2, the Laplacian of |f|^p off the zero set.

    For p >= 2 the value at a zero of f is 0; for p < 2 a zero raises
    SingularPoint (callers exclude such points explicitly)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    fprime = fprime or f.derivative()
    s_arr = np.asarray(s, dtype=np.complex128)
    af = np.abs(f.eval_many(s_arr))
    afp = np.abs(fprime.eval_many(s_arr))
    zero = af < 1e-300
    if p < 2 and np.any(zero):
        raise SingularPoint("area integrand at a zero of f with p < 2")
    if p == 2:
        base = np.ones_like(af)
    else:
        with np.errstate(divide="ignore"):
            base = np.where(zero, 0.0, af) ** (p - 2.0)
    out = p * p * np.where(zero, 0.0, base) * afp ** 2
    if np.isscalar(s) or np.asarray(s).shape == ():
        return float(out.ravel()[0])
    return out


def _modulus_bounds(f, x):
    """(lower, upper) bounds for |f| on Re s >= x from coefficient dominance.

    Valid (lower > 0) once the first nonzero coefficient dominates the tail;
    lower = 0 is returned before dominance kicks in."""
    head = abs(f.value_at_infinity)
    tail = f.tail_bound(x)
    if head > 0:
        return max(head - tail, 0.0), head + tail
    # constant term vanishes: bound through the slowest-decaying term
    lams = f.frequencies
    coeffs = f.coefficients
    pos = (lams > 0) & (np.abs(coeffs) > 0)
    if not pos.any():
        return 0.0, 0.0
    k = int(np.argmin(lams[pos]))
    lam0 = lams[pos][k]
    c0 = abs(coeffs[pos][k])
    lead = c0 * math.exp(-lam0 * x)
    rest = f.tail_bound(x) - lead
    return max(lead - rest, 0.0), lead + rest


def sigma_truncation(f, p, sigma_lo, tol=TAIL_TOL):
    """Abscissa beyond which the strip-integrand tail contributes < tol.

    Uses |f'| <= coefficient tail of f' and the dominance bounds on |f|
    (lower bound when p < 2 since the modulus then sits in a negative
    power)."""
    fprime = f.derivative()
    if fprime.coefficient_l1() == 0.0:
        return max(sigma_lo + 1.0, 1.0)

    def bound(x):
        dtail = fprime.tail_bound(x)
        lo, hi = _modulus_bounds(f, x)
        if p >= 2:
            base = hi ** (p - 2.0)
        else:
            if lo <= 0.0:
                return math.inf
            base = lo ** (p - 2.0)
        return p * p * base * dtail * dtail

    x = max(sigma_lo, 0.0) + 1.0
    while x < 300.0:
        b0, b1 = bound(x), bound(x + 1.0)
        if np.isfinite(b0) and b1 < b0:
            q = b1 / max(b0, 1e-300)
            tail_integral = b0 / max(1.0 - q, 1e-3)
            if tail_integral < tol:
                return x
        x += 1.0
    return 300.0


def _excluded_zeros(f, p, sigma_lo, sigma_hi, T, rho, seed=0):
    """Zeros of f inside the (slightly inflated) strip, for p < 2 exclusion.

    Returns (zeros, mass_bound) where mass_bound caps the integral of the
    singular integrand over the removed disks: near a simple zero the
    integrand is ~ (|f'(z)| r)^(p-2) |f'(z)|^2, so each disk holds at most
    2 pi |f'(z)|^p rho^p / p."""
    rect = Rectangle(max(sigma_lo - rho, 1e-9), sigma_hi + rho,
                     -T - rho, T + rho)
    zeros, _ = _isolate_with_jitter(f, rect, seed=seed)
    fprime = f.derivative()
    mass = 0.0
    for h in zeros:
        dq = abs(fprime.eval_many(np.array([h.location]))[0])
        mass += 2.0 * math.pi * (dq ** p) * rho ** p / p
    return list(zeros), mass


def area_double_integral(f, p, sigma_lo, T, weight="none", *, spec=None,
                         schedule=None, seed=0, force_t_quadrature=False):
    """integral over [sigma_lo, sigma_max] x [-T, T] of
    w(sigma) p^2 |f|^(p-2) |f'|^2, divided by 2T.

    Returns (value, info).  info records the truncation abscissa, the zero
    exclusion (p < 2 only) and its analytic mass bound.  For p = 2 the
    windowed t-mean of |f'|^2 collapses to an exact sinc form which is used
    unless force_t_quadrature insists on the composite rule."""
    spec = spec or AreaIntegralSpec(sigma_min=sigma_lo, weight=weight)
    fprime = f.derivative()
    sigma_hi = spec.sigma_max if spec.sigma_max is not None else \
        sigma_truncation(f, p, sigma_lo)
    info = {"sigma_max": sigma_hi, "weight": weight, "T": T,
            "excluded_zeros": 0, "excluded_mass_bound": 0.0, "rho": spec.rho}
    if fprime.coefficient_l1() == 0.0:
        return 0.0, info

    zeros = []
    if p < 2:
        zeros, mass = _excluded_zeros(f, p, sigma_lo, sigma_hi, T, spec.rho,
                                      seed=seed)
        info["excluded_zeros"] = len(zeros)
        info["excluded_mass_bound"] = mass / (2.0 * T)

    if weight == "none":
        def w(sig):
            return 1.0
    elif weight == "sigma-shift":
        def w(sig):
            return sig - sigma_lo
    else:
        def w(sig):
            return sig

    rho = spec.rho

    def t_mean_single(sig):
        """Per-abscissa route with exclusion disks (only needed for p < 2
        with zeros in the strip).  Tolerances are matched to the excluded
        disk mass, which dominates the error budget here anyway."""
        actives = [h.location for h in zeros
                   if abs(h.location.real - sig) < rho]
        cuts = []
        for z in actives:
            half = math.sqrt(max(rho * rho - (z.real - sig) ** 2, 0.0))
            cuts.extend((z.imag - half, z.imag + half))

        def g(t):
            s = sig + 1j * t
            vals = area_integrand(f, p, s, fprime=fprime)
            if actives:
                vals = np.asarray(vals).copy()
                for z in actives:
                    vals[np.abs(s - z) < rho] = 0.0
            return vals

        if actives:
            res = gl_adaptive(g, -T, T, abs_tol=1e-5 * 2 * T, order=12,
                              max_depth=20,
                              split_points=[c for c in cuts if -T < c < T])
            return res.value / (2.0 * T)
        res = gl_refine(g, -T, T, n_panels0=max(8, int(2 * T * 2)), order=16,
                        abs_tol=1e-10 * 2 * T, rel_tol=1e-9, max_doublings=20)
        return res.value / (2.0 * T)

    t_mean_exact = None
    if (p == 2 and not force_t_quadrature
            and len(fprime.coefficients) ** 2 <= 4_000_000):
        # (1/2T) integral over |t| < T of |f'(sigma+it)|^2 in closed form:
        # sum_jk c_j conj(c_k) sinc(T (lam_j - lam_k)) e^(-sigma (lam_j+lam_k))
        lam = fprime.frequencies
        cf = fprime.coefficients
        diff = lam[:, None] - lam[None, :]
        A = 4.0 * np.real(cf[:, None] * np.conj(cf)[None, :]) * np.sinc(
            diff * T / math.pi)

        def t_mean_exact(sigmas):
            R = np.exp(-np.multiply.outer(sigmas, lam))
            return np.einsum("bj,jk,bk->b", R, A, R, optimize=True)

    def t_mean_batch(sigmas):
        """Shared-panel composite rule for a whole batch of abscissas; the
        panel count doubles until every row stabilizes.  One vectorized
        evaluation per refinement instead of one quadrature per sigma."""
        sigmas = np.atleast_1d(np.asarray(sigmas, dtype=np.float64))
        lam_max = float(np.max(fprime.frequencies)) if len(
            fprime.frequencies) else 1.0
        n = max(8, int(2 * T * max(2.0, lam_max)))
        prev = None
        for _ in range(12):
            nodes, weights = panel_nodes(-T, T, n, order=16)
            S = sigmas[:, None] + 1j * nodes[None, :]
            vals = area_integrand(f, p, S, fprime=fprime)
            cur = vals @ weights
            if prev is not None and np.max(np.abs(cur - prev)) <= 1e-10 * 2 * T:
                return cur / (2.0 * T)
            prev = cur
            n *= 2
        raise QuadratureNonconvergence(
            f"strip t-integrals did not stabilize at T = {T}")

    if zeros:
        def outer(sig_arr):
            return np.array([w(s) * t_mean_single(float(s))
                             for s in np.atleast_1d(sig_arr)])
    else:
        def outer(sig_arr):
            sig_arr = np.atleast_1d(np.asarray(sig_arr, dtype=np.float64))
            wvals = np.array([w(s) for s in sig_arr])
            if t_mean_exact is not None:
                return wvals * t_mean_exact(sig_arr)
            return wvals * t_mean_batch(sig_arr)

    splits = sorted({z.real + d for z in [h.location for h in zeros]
                     for d in (-rho, 0.0, rho)
                     if sigma_lo < z.real + d < sigma_hi})
    outer_tol = 1e-8 if not zeros else 1e-4
    outer_depth = 24 if not zeros else 14
    res = gl_adaptive(outer, sigma_lo, sigma_hi, abs_tol=outer_tol, order=8,
                      max_depth=outer_depth, split_points=splits)
    info["outer_error"] = res.est_error
    return res.value, info


def hardy_stein_rhs(f, p, kappa, T=None, *, spec=None, schedule=None,
                    method="auto", seed=0):
    """-(p^2/2T) * strip integral of |f|^(p-2)|f'|^2 over [kappa, inf) x [-T, T].

    method "closed_form" is exact for series with a single positive
    frequency (the vertical direction drops out): -p log(n) |c|^p n^(-p kappa).
    method "quadrature" runs the truncated double integral; "auto" picks the
    closed form whenever it applies."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    schedule = schedule or DEFAULT_SCHEDULE
    T = float(T) if T is not None else schedule.T_max

    closed = _closed_form_rhs(f, p, kappa)
    if method == "closed_form":
        if closed is None:
            raise ValueError("closed form requires a single-frequency series")
        return closed
    if method == "auto" and closed is not None:
        return closed
    value, _info = area_double_integral(
        f, p, kappa, T, weight="none", spec=spec, schedule=schedule,
        seed=seed, force_t_quadrature=(method == "quadrature"))
    # area_integrand already carries the p^2 factor
    return -value


def _closed_form_rhs(f, p, kappa):
    if hasattr(f, "frequencies"):
        lams = [(lam, c) for lam, c in zip(f.frequencies, f.coefficients)
                if lam > 0 and c != 0]
        if len(lams) == 0:
            return 0.0
        if len(lams) == 1 and abs(f.value_at_infinity) == 0.0:
            lam, c = lams[0]
            return -p * lam * abs(c) ** p * math.exp(-p * kappa * lam)
        return None
    nz = [(int(n), c) for n, c in f.terms if n >= 2 and c != 0]
    if len(nz) == 0:
        return 0.0
    if len(nz) == 1 and abs(f.value_at_infinity) == 0.0:
        n, c = nz[0]
        return -p * math.log(n) * abs(c) ** p * float(n) ** (-p * kappa)
    return None


def hardy_stein_window_residual_bound(f, kappa, T):
    """Exact amplitude bound on |strip-integral route - orthogonality
    derivative| for p = 2 at window half-length T: the cross terms carry a
    sinc factor bounded by 1/(T dLambda)."""
    fprime = f.derivative()
    lam = fprime.frequencies
    mags = np.abs(fprime.coefficients)
    total = 0.0
    for j in range(len(lam)):
        if mags[j] == 0:
            continue
        for k in range(j + 1, len(lam)):
            if mags[k] == 0:
                continue
            gap = abs(lam[j] - lam[k])
            ssum = lam[j] + lam[k]
            total += 8.0 * mags[j] * mags[k] * math.exp(-kappa * ssum) \
                / (gap * ssum)
    return total / T


def hardy_stein_check(f, p, kappa_grid, schedule=None, *, tol=1e-2,
                      fd_step=1e-4, seed=0):
    """Fourth-order finite difference of the torus mean in the abscissa
    against the strip-integral route, one report per grid point.

    The differentiated mean is the torus mean (smooth in kappa, no window
    noise); the strip integral runs at the largest scheduled T."""
    schedule = schedule or DEFAULT_SCHEDULE
    reports = []
    h = fd_step
    for kappa in kappa_grid:
        stencil = [torus_mean(f, kappa + k * h, p)
                   for k in (-2, -1, 1, 2)]
        lhs = (stencil[0] - 8.0 * stencil[1] + 8.0 * stencil[2]
               - stencil[3]) / (12.0 * h)
        rhs = hardy_stein_rhs(f, p, kappa, T=schedule.T_max,
                              schedule=schedule, method="quadrature", seed=seed)
        reports.append(CheckReport(
            name="hardy-stein", lhs=lhs, rhs=rhs, tol=tol,
            params={"p": p, "kappa": kappa, "T": schedule.T_max,
                    "fd_step": h}))
    return reports


def littlewood_paley(f, p, schedule=None, spec=None,
                     sigma0_list=(0.05, 0.025, 0.0125), *, tol=2e-2, seed=0):
    """norm^p against |f(+inf)|^p plus the shift-weighted strip integral,
    extrapolated sigma0 -> 0 across the halving ladder."""
    schedule = schedule or DEFAULT_SCHEDULE
    norm_value, sigma_trace = hp_norm(f, p, schedule, with_trace=True)
    lhs = norm_value ** p
    head = abs(f.value_at_infinity) ** p
    T = schedule.T_max
    vals = []
    trace = []
    for sigma0 in sigma0_list:
        v, _ = area_double_integral(f, p, sigma0, T, weight="sigma-shift",
                                    spec=spec, schedule=schedule, seed=seed)
        vals.append(v)
        trace.append((sigma0, head + v))
    rhs = head + richardson_to_zero(sigma0_list, vals)
    return CheckReport(
        name="littlewood-paley", lhs=lhs, rhs=rhs, tol=tol,
        params={"p": p, "T": T, "sigma0_list": list(sigma0_list),
                "head": head, "norm_sigma_trace": sigma_trace},
        trace=trace)


def boundary_lp_check(f, p, schedule=None, *, spec=None, seed=0):
    """Boundary-window mean against the sigma-weighted strip integral at the
    same T.  The residual trace must shrink along the schedule and its final
    value stay below 5e-2 * max(lhs, 1)."""
    schedule = schedule or DEFAULT_SCHEDULE
    head = abs(f.value_at_infinity) ** p
    trace = []
    lhs = rhs = 0.0
    for T in schedule.T_list:
        lhs = window_mean(f, 0.0, T, p, schedule)
        v, _ = area_double_integral(f, p, 0.0, T, weight="sigma",
                                    spec=spec, schedule=schedule, seed=seed)
        rhs = head + v
        trace.append((T, lhs - rhs))
    diffs = [abs(d) for _, d in trace]
    shrinking = all(b <= a + 1e-12 for a, b in zip(diffs, diffs[1:]))
    return CheckReport(
        name="boundary-lp", lhs=lhs, rhs=rhs,
        tol=5e-2 * max(lhs, 1.0), tol_mode="abs",
        params={"p": p, "T_list": list(schedule.T_list),
                "residuals": diffs, "shrinking": shrinking},
        trace=trace,
        constraints_ok=shrinking,
        notes="residual trace must be nonincreasing in T")


def torus_lp(f, p, *, tol=2e-2, sigma_cap=None):
    """norm^p against the Haar-averaged sigma-line integral
    |f(+inf)|^p + p^2 * integral of sigma * E_chi[|f_chi|^(p-2)|f'_chi|^2].

    The chi-average and the sigma-line integral commute (Tonelli); the
    average is evaluated per sigma on a stabilized tensor grid."""
    fprime = f.derivative()
    lhs = hp_norm(f, p) ** p
    head = abs(f.value_at_infinity) ** p
    sigma_hi = sigma_cap if sigma_cap is not None else sigma_truncation(f, p, 0.0)

    def haar_mean(sig):
        d, vf = _grid_evaluator(f, sig)
        _, vfp = _grid_evaluator(fprime, sig)
        if d == 0:
            af = abs(complex(np.asarray(vf()).ravel()[0]))
            afp = abs(complex(np.asarray(vfp()).ravel()[0]))
            if afp == 0.0:
                return 0.0
            base = 1.0 if p == 2 else max(af, 1e-12) ** (p - 2.0)
            return p * p * base * afp * afp

        def integrand(*grids):
            af = np.abs(vf(*grids))
            afp = np.abs(vfp(*grids))
            if p == 2:
                base = 1.0
            else:
                base = np.maximum(af, 1e-12) ** (p - 2.0)
            return p * p * base * afp ** 2

        return torus_mean_refine(integrand, d, n0=64, abs_tol=1e-9,
                                 rel_tol=1e-10).value

    def outer(sig_arr):
        return np.array([float(s) * haar_mean(float(s))
                         for s in np.atleast_1d(sig_arr)])

    res = gl_adaptive(outer, 0.0, sigma_hi, abs_tol=1e-8, order=8,
                      max_depth=20)
    rhs = head + res.value
    return CheckReport(
        name="torus-lp", lhs=lhs, rhs=rhs, tol=tol,
        params={"p": p, "sigma_max": sigma_hi, "head": head})
