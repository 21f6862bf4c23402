"""Argument-principle machinery: winding numbers, zero isolation in
rectangles, the rectangle formula relating a weighted zero sum to four
boundary integrals, counting functions and their bounds.

Winding numbers come from adaptive boundary sampling with every phase step
kept below pi/2, so the count is an exact integer.  Argument integrals are
computed without unwrapping headaches through

    integral of arg f du = arg f(anchor) * length + weighted Im(f'/f) integral,

with anchors chained continuously along the bottom -> right -> top path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryZeroSuspected, DepthExceeded, HypothesisFailed, QuadratureNonconvergence
from .means import DEFAULT_SCHEDULE, _grid_evaluator, _log_mean_1d, jessen_function
from .quadrature import gl_adaptive
from .reports import CheckReport
from .series import DirichletPolynomial, GeneralizedSeries

BOUNDARY_ZERO_TOL = 1e-12
PHASE_STEP = 0.5 * math.pi
# deterministic ladder of split fractions tried when a zero sits on an
# internal subdivision edge
SPLIT_FRACTIONS = (0.5, 0.5073, 0.4883, 0.5239, 0.4690, 0.5471)


@dataclass(frozen=True)
class Rectangle:
    sigma0: float
    sigma1: float
    t0: float
    t1: float

    def __post_init__(self):
        if not (self.sigma0 < self.sigma1 and self.t0 < self.t1):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self):
        return self.sigma1 - self.sigma0

    @property
    def height(self):
        return self.t1 - self.t0

    @property
    def diameter(self):
        return math.hypot(self.width, self.height)

    @property
    def center(self):
        return complex(0.5 * (self.sigma0 + self.sigma1), 0.5 * (self.t0 + self.t1))

    def contains(self, z, margin=0.0):
        return (self.sigma0 - margin <= z.real <= self.sigma1 + margin
                and self.t0 - margin <= z.imag <= self.t1 + margin)

    def corners(self):
        return (complex(self.sigma0, self.t0), complex(self.sigma1, self.t0),
                complex(self.sigma1, self.t1), complex(self.sigma0, self.t1))


@dataclass(frozen=True)
class ZeroHit:
    location: complex
    multiplicity: int
    radius: float


@dataclass
class ZeroList:
    hits: list = field(default_factory=list)
    winding: int = 0
    complete: bool = True

    def __iter__(self):
        return iter(self.hits)

    def __len__(self):
        return len(self.hits)

    def total_multiplicity(self):
        return sum(h.multiplicity for h in self.hits)

    def locations(self):
        return [h.location for h in self.hits]

    def sorted_by_height(self):
        return sorted(self.hits, key=lambda h: (h.location.imag, h.location.real))


# ---------------------------------------------------------------------------
# boundary phase walking
# ---------------------------------------------------------------------------

_MAX_EDGE_POINTS = 1 << 21


def _edge_phase_sum(f, a, b, init_per_unit=8.0):
    """Total continuous argument variation of f along the segment [a, b].

    Samples are inserted until every consecutive phase step is < pi/2.
    Raises BoundaryZeroSuspected when |f| dips below 1e-12 at a sample (or
    when refinement explodes, which is the same situation in disguise).
    """
    length = abs(b - a)
    n = max(8, int(math.ceil(length * init_per_unit)) + 1)
    pts = a + (b - a) * np.linspace(0.0, 1.0, n)
    vals = f.eval_many(pts)
    for _ in range(80):
        mags = np.abs(vals)
        if np.min(mags) < BOUNDARY_ZERO_TOL:
            raise BoundaryZeroSuspected(
                f"|f| = {np.min(mags):.2e} on boundary sample near "
                f"{pts[int(np.argmin(mags))]:.6g}")
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.flatnonzero(np.abs(steps) >= PHASE_STEP)
        if bad.size == 0:
            return float(np.sum(steps))
        if pts.size + bad.size > _MAX_EDGE_POINTS:
            raise BoundaryZeroSuspected(
                f"phase refinement exploded on [{a:.6g}, {b:.6g}]; "
                "a zero is suspected (numerically) on the boundary")
        mids = 0.5 * (pts[bad] + pts[bad + 1])
        pts = np.insert(pts, bad + 1, mids)
        vals = np.insert(vals, bad + 1, f.eval_many(mids))
    raise QuadratureNonconvergence("phase walk failed to settle in 80 rounds")


def _boundary_phases(f, rect):
    """Per-edge argument variations along bottom, right, top, left (the
    counter-clockwise walk) plus the principal anchor at the start corner."""
    c0, c1, c2, c3 = rect.corners()
    sums = (_edge_phase_sum(f, c0, c1), _edge_phase_sum(f, c1, c2),
            _edge_phase_sum(f, c2, c3), _edge_phase_sum(f, c3, c0))
    anchor = float(np.angle(f.eval_many(np.array([c0]))[0]))
    return anchor, sums


def winding_number(f, rect):
    """(1/2pi) * total argument variation along the rectangle boundary.

    Adaptive sampling keeps consecutive phase jumps below pi/2; the result
    is rounded to the exact integer it provably telescopes to."""
    _, sums = _boundary_phases(f, rect)
    total = sum(sums) / (2.0 * math.pi)
    w = int(round(total))
    if abs(total - w) > 0.25:
        raise QuadratureNonconvergence(
            f"winding total {total} is not close to an integer")
    return w


# ---------------------------------------------------------------------------
# zero isolation
# ---------------------------------------------------------------------------

def _newton_polish(f, fprime, z0, rect, tol):
    z = complex(z0)
    last_step = math.inf
    for _ in range(60):
        fz = f.eval_many(np.array([z]))[0]
        fpz = fprime.eval_many(np.array([z]))[0]
        if fpz == 0:
            return None
        step = fz / fpz
        z = z - step
        last_step = abs(step)
        if not rect.contains(z, margin=0.25 * rect.diameter):
            return None
        if last_step < 1e-13 * (1.0 + abs(z)):
            return z, max(4.0 * last_step, 1e-14)
    if last_step < tol:
        return z, max(4.0 * last_step, 1e-14)
    return None


def _split(rect, depth, fraction):
    """Bisect the longer side at the given fraction."""
    if rect.width >= rect.height:
        cut = rect.sigma0 + fraction * rect.width
        return (Rectangle(rect.sigma0, cut, rect.t0, rect.t1),
                Rectangle(cut, rect.sigma1, rect.t0, rect.t1))
    cut = rect.t0 + fraction * rect.height
    return (Rectangle(rect.sigma0, rect.sigma1, rect.t0, cut),
            Rectangle(rect.sigma0, rect.sigma1, cut, rect.t1))


def isolate_zeros(f, rect, tol=1e-9, max_depth=40):
    """Quadtree-style isolation of the zeros of f inside the rectangle.

    Cells are bisected along their longer side until they either carry
    winding 0, yield to Newton refinement (winding 1), or shrink below tol
    (reported as a cluster of the cell's multiplicity).  A zero landing on an
    internal cut is dodged by retrying the deterministic split-fraction
    ladder; a zero on the outer boundary propagates BoundaryZeroSuspected to
    the caller, who jitters the rectangle.
    """
    fprime = f.derivative()
    w_total = winding_number(f, rect)
    out = ZeroList(hits=[], winding=w_total, complete=True)
    if w_total == 0:
        return out
    stack = [(rect, w_total, 0)]
    while stack:
        cell, w, depth = stack.pop()
        if w == 0:
            continue
        if w == 1:
            polished = _newton_polish(f, fprime, cell.center, cell, tol)
            if polished is not None:
                z, radius = polished
                if cell.contains(z, margin=1e-12 * (1 + abs(z))):
                    out.hits.append(ZeroHit(z, 1, radius))
                    continue
        if cell.diameter < tol or depth >= max_depth:
            out.hits.append(ZeroHit(cell.center, w, cell.diameter))
            if depth >= max_depth and cell.diameter >= tol:
                out.complete = False
            continue
        for fraction in SPLIT_FRACTIONS:
            try:
                a, b = _split(cell, depth, fraction)
                wa = winding_number(f, a)
                wb = winding_number(f, b)
            except BoundaryZeroSuspected:
                continue
            if wa + wb != w:
                continue  # a zero slipped through the cut; try another fraction
            stack.append((a, wa, depth + 1))
            stack.append((b, wb, depth + 1))
            break
        else:
            # every split fraction grazed a zero; record the unresolved cell
            out.hits.append(ZeroHit(cell.center, w, cell.diameter))
            out.complete = False
    out.hits = out.sorted_by_height()
    if out.complete and out.total_multiplicity() != w_total:
        raise DepthExceeded(
            f"multiplicity bookkeeping lost zeros: {out.total_multiplicity()} "
            f"isolated vs winding {w_total}", partial=out)
    return out


# ---------------------------------------------------------------------------
# the rectangle formula (weighted zero sum vs boundary integrals)
# ---------------------------------------------------------------------------

@dataclass
class RectangleFormulaResult:
    zero_sum: float
    boundary_sum: float
    parts: dict
    zeros: ZeroList

    @property
    def difference(self):
        return self.zero_sum - self.boundary_sum


def _log_abs_edge_integral(f, sigma, t_lo, t_hi):
    def vals(t):
        return f.eval_many(sigma + 1j * t)

    res = _log_mean_1d(vals, t_lo, t_hi, abs_tol=1e-11)
    return res.value * (t_hi - t_lo)


def _arg_edge_integral(f, fprime, t_edge, sigma_lo, sigma_hi, phi_left=None,
                       phi_right=None):
    """integral of (a continuous branch of) arg f(sigma + i t_edge) dsigma.

    Exactly one anchor phase is given: phi_left anchors at sigma_lo,
    phi_right at sigma_hi.  The phase increment is integrated through
    Im(f'/f) with the Tonelli weight, which avoids unwrapping entirely.
    """

    def imag_logderiv(u):
        s = u + 1j * t_edge
        return np.imag(fprime.eval_many(s) / f.eval_many(s))

    length = sigma_hi - sigma_lo
    if phi_left is not None:
        def g(u):
            return (sigma_hi - u) * imag_logderiv(u)
        rise = gl_adaptive(g, sigma_lo, sigma_hi, abs_tol=1e-10)
        return phi_left * length + rise.value
    def g(u):
        return (u - sigma_lo) * imag_logderiv(u)
    rise = gl_adaptive(g, sigma_lo, sigma_hi, abs_tol=1e-10)
    return phi_right * length - rise.value


def littlewood_sum(f, rect, sigma_ref=None):
    """2 pi * sum over zeros in the rectangle of (Re s - sigma_ref), checked
    against the four boundary integrals of the argument-principle formula.

    Returns the zero-sum value together with the independently computed
    boundary combination; their difference must vanish.
    """
    if sigma_ref is None:
        sigma_ref = rect.sigma0
    zeros = isolate_zeros(f, rect)
    zero_sum = 2.0 * math.pi * sum(
        h.multiplicity * (h.location.real - sigma_ref) for h in zeros)

    fprime = f.derivative()
    anchor, (d_bottom, d_right, _d_top, _d_left) = _boundary_phases(f, rect)
    phi_bottom_left = anchor
    phi_top_right = anchor + d_bottom + d_right

    i_left = _log_abs_edge_integral(f, rect.sigma0, rect.t0, rect.t1)
    i_right = _log_abs_edge_integral(f, rect.sigma1, rect.t0, rect.t1)
    i_top = _arg_edge_integral(f, fprime, rect.t1, rect.sigma0, rect.sigma1,
                               phi_right=phi_top_right)
    i_bottom = _arg_edge_integral(f, fprime, rect.t0, rect.sigma0, rect.sigma1,
                                  phi_left=phi_bottom_left)
    boundary = i_left + i_top - i_right - i_bottom
    parts = {"log_left": i_left, "log_right": i_right,
             "arg_top": i_top, "arg_bottom": i_bottom}
    return RectangleFormulaResult(zero_sum, boundary, parts, zeros)


# ---------------------------------------------------------------------------
# counting functions
# ---------------------------------------------------------------------------

def shift_value(f, xi):
    """The series f - xi (the zero set of which is the xi-level set of f)."""
    if isinstance(f, GeneralizedSeries):
        terms = dict(f.terms)
        terms[(0, 0)] = terms.get((0, 0), 0j) - xi
        return GeneralizedSeries(list(terms.items()))
    terms = dict(f.terms)
    terms[1] = terms.get(1, 0j) - xi
    return DirichletPolynomial(list(terms.items()))


def dominance_abscissa(g, *, safety=0.5, sigma_cap=400.0):
    """Smallest abscissa gamma (up to a coarse scan) with
    tail(gamma) <= safety * |g(+infinity)|, beyond which g cannot vanish."""
    head = abs(g.value_at_infinity)
    if head == 0.0:
        raise ValueError("dominance abscissa needs a nonzero constant term")
    lo, hi = 0.0, 1.0
    while g.tail_bound(hi) > safety * head:
        lo, hi = hi, 2.0 * hi
        if hi > sigma_cap:
            raise QuadratureNonconvergence(
                f"no dominance abscissa below {sigma_cap}")
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if g.tail_bound(mid) > safety * head:
            lo = mid
        else:
            hi = mid
    return hi


def zero_region_abscissa(g, *, sigma_cap=400.0):
    """Abscissa gamma with g nonvanishing on Re s >= gamma, or 0.0 when g
    cannot vanish anywhere on the open right half-plane.

    With a nonzero constant term this is coefficient dominance of the head;
    with a vanishing constant term the slowest-decaying term dominates the
    remainder far enough to the right (a single-term tail never vanishes)."""
    lams = g.frequencies
    coeffs = np.abs(g.coefficients)
    pos = (lams > 0) & (coeffs > 0)
    head = abs(g.value_at_infinity)
    if not pos.any():
        return 0.0  # constant (nonzero by caller contract): no zeros at all
    if head > 0.0:
        return dominance_abscissa(g, sigma_cap=sigma_cap)
    if pos.sum() == 1:
        return 0.0  # single exponential never vanishes
    k = int(np.argmin(lams[pos]))
    lam0 = float(lams[pos][k])
    c0 = float(coeffs[pos][k])

    def rest(x):
        return g.tail_bound(x) - c0 * math.exp(-lam0 * x)

    lo, hi = 0.0, 1.0
    while rest(hi) > 0.5 * c0 * math.exp(-lam0 * hi):
        lo, hi = hi, 2.0 * hi
        if hi > sigma_cap:
            raise QuadratureNonconvergence(
                f"no dominance abscissa below {sigma_cap}")
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if rest(mid) > 0.5 * c0 * math.exp(-lam0 * mid):
            lo = mid
        else:
            hi = mid
    return hi


# margin keeping the counting rectangle off the boundary line Re s = 0
INNER_MARGIN = 1e-6


def _isolate_with_jitter(g, rect, tol=1e-9, retries=5, seed=0):
    """isolate_zeros retried under +-1e-3 uniform jitter of the rectangle
    edges whenever a zero is suspected on the boundary.  Returns
    (zeros, used_rect)."""
    rng = np.random.default_rng(seed)
    attempt = rect
    for k in range(retries + 1):
        try:
            return isolate_zeros(g, attempt, tol=tol), attempt
        except BoundaryZeroSuspected:
            if k == retries:
                raise
            d = rng.uniform(-1e-3, 1e-3, size=4)
            attempt = Rectangle(max(rect.sigma0 + d[0], 0.25 * rect.sigma0),
                                rect.sigma1 + d[1],
                                rect.t0 + d[2], rect.t1 + d[3])
    raise AssertionError("unreachable")


def solution_set(f, xi, T, *, gamma=None, tol=1e-9, seed=0):
    """Zeros of f - xi in [INNER_MARGIN, gamma] x [-T, T], with jitter retry.

    When the dominance abscissa collapses to the inner margin the level set
    is provably empty in the counted region and no isolation runs."""
    g = shift_value(f, xi)
    if gamma is None:
        gamma = zero_region_abscissa(g)
    if gamma <= 2 * INNER_MARGIN:
        return ZeroList([], 0, True), Rectangle(INNER_MARGIN,
                                                1.0, -T, T), gamma
    rect = Rectangle(INNER_MARGIN, gamma, -T, T)
    zeros, used = _isolate_with_jitter(g, rect, tol=tol, seed=seed)
    return zeros, used, gamma


def counting_Nf(f, xi, T, *, seed=0):
    """(pi/T) * sum of Re s over solutions of f(s) = xi with |Im s| < T.

    The right edge gamma comes from coefficient dominance (no solutions
    beyond it); the left edge sits at the fixed inner margin 1e-6.  For a
    finite sum the count is well-defined even at xi = f(+infinity) (the
    level set stays confined), so that value is permitted here; the
    Littlewood-type bound, and with it mean_counting, is not defined there."""
    if abs(xi) >= 1.0:
        raise ValueError("counting expects |xi| < 1")
    zeros, used, _ = solution_set(f, xi, T, seed=seed)
    T_eff = 0.5 * (used.t1 - used.t0)
    return (math.pi / T_eff) * sum(
        h.multiplicity * h.location.real for h in zeros)


def _weighted_count(zeros, T, sigma0):
    return (math.pi / T) * sum(
        h.multiplicity * (h.location.real - sigma0)
        for h in zeros if h.location.real > sigma0)


@dataclass
class MeanCountingResult:
    value: float
    sigma0_values: list        # (sigma0, stabilized value at largest T)
    trace: list                # (sigma0, T, value) triples
    gamma: float
    littlewood_bound: float
    finite_T_slack: float = 0.0  # pi * gamma / T_min, the horizon allowance

    def as_report(self, tol=0.02):
        return CheckReport(
            name="mean-counting-littlewood",
            lhs=self.value, rhs=self.littlewood_bound,
            tol=tol + self.finite_T_slack,
            tol_mode="upper",
            params={"gamma": self.gamma, "base_tol": tol,
                    "finite_T_slack": self.finite_T_slack,
                    "sigma0_values": self.sigma0_values},
            trace=[(s, v) for s, v in self.sigma0_values])


def littlewood_bound(f, xi):
    """log |(1 - conj(xi) f(+inf)) / (xi - f(+inf))| -- the pointwise bound."""
    a1 = f.value_at_infinity
    return math.log(abs((1.0 - np.conj(xi) * a1) / (xi - a1)))


def mean_counting(f, xi, schedule=None, sigma0_list=(0.1, 0.05, 0.025), *,
                  seed=0):
    """Two-limit mean counting value: T-limit along the schedule first, then
    linear extrapolation of sigma0 to 0.  The full (sigma0, T) trace is kept;
    the order of limits is structural and never interchanged here.
    """
    if complex(xi) == complex(f.value_at_infinity):
        raise ValueError("mean counting needs xi != f(+infinity)")
    schedule = schedule or DEFAULT_SCHEDULE
    T_max = schedule.T_max
    zeros, used, gamma = solution_set(f, xi, T_max, seed=seed)
    trace = []
    stabilized = []
    for sigma0 in sigma0_list:
        last = None
        for T in schedule.T_list:
            inside = ZeroList([h for h in zeros if abs(h.location.imag) < T])
            last = _weighted_count(inside, T, sigma0)
            trace.append((sigma0, T, last))
        stabilized.append((sigma0, last))
    xs = np.array([s for s, _ in stabilized])
    ys = np.array([v for _, v in stabilized])
    slope, intercept = np.polyfit(xs, ys, 1)
    value = float(intercept)
    slack = math.pi * gamma / schedule.T_list[0]
    return MeanCountingResult(value, stabilized, trace, gamma,
                              littlewood_bound(f, xi), slack)


def jensen_check(f, sigma0, schedule=None, *, seed=0):
    """Weighted zero count against the log-modulus mean minus log |f(+inf)|."""
    a1 = f.value_at_infinity
    if a1 == 0:
        raise ValueError("jensen check requires f(+infinity) != 0")
    if sigma0 <= 0:
        raise ValueError("jensen check requires sigma0 > 0")
    schedule = schedule or DEFAULT_SCHEDULE
    gamma = dominance_abscissa(f)
    T_max = schedule.T_max
    lhs = 0.0
    if gamma > sigma0:
        rect = Rectangle(sigma0, gamma, -T_max, T_max)
        zeros, used = _isolate_with_jitter(f, rect, seed=seed)
        lhs = _weighted_count(zeros, 0.5 * (used.t1 - used.t0), sigma0)
    rhs = jessen_function(f, sigma0, mode="torus") - math.log(abs(a1))
    return CheckReport(
        name="jensen", lhs=lhs, rhs=rhs,
        tol=5e-2 * max(1.0, abs(rhs)), tol_mode="abs",
        params={"sigma0": sigma0, "gamma": gamma, "T": T_max})


def limsup_bound_check(f, xi, schedule=None, *, seed=0):
    """max over the T schedule of N_f(xi, T) against the pointwise bound
    (with the pi * gamma / T_min finite-horizon slack)."""
    schedule = schedule or DEFAULT_SCHEDULE
    zeros, used, gamma = solution_set(f, xi, schedule.T_max, seed=seed)
    trace = []
    for T in schedule.T_list:
        inside = [h for h in zeros if abs(h.location.imag) < T]
        n_val = (math.pi / T) * sum(
            h.multiplicity * h.location.real for h in inside)
        trace.append((T, n_val))
    observed = max(v for _, v in trace)
    bound = littlewood_bound(f, xi)
    slack = math.pi * gamma / schedule.T_list[0]
    return CheckReport(
        name="limsup-bound", lhs=observed, rhs=bound,
        tol=slack, tol_mode="upper",
        params={"xi": xi, "gamma": gamma, "slack": slack},
        trace=trace)


# ---------------------------------------------------------------------------
# zero-mass and log-integral bounds per unit height
# ---------------------------------------------------------------------------

def sup_norm_estimate(f):
    """Empirical sup of |f| on the closed half-plane.

    For small prime support the sup is attained (almost periodically) along
    the boundary and equals the max over the character torus at sigma = 0; a
    fine tensor grid plus 1% headroom estimates it.  Falls back to the
    coefficient l1 bound for large support."""
    d, values = _grid_evaluator(f, 0.0)
    if d == 0:
        return abs(complex(np.asarray(values()).ravel()[0]))
    if d > 2:
        return f.coefficient_l1()
    n = 2048 if d == 1 else 512
    axes = [np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)] * d
    grid_max = float(np.max(np.abs(values(*axes))))
    return min(grid_max * 1.01, f.coefficient_l1())


def blaschke_condition_check(f, gamma, c, *, n_windows=10, seed=0,
                             samples_per_unit=10_000):
    """Per-unit-height zero mass and boundary log-integral against the
    two bounds driven by |f| >= c on the vertical line Re s = gamma.

    The hypothesis itself is checked empirically: 10^4 samples per unit
    height over one period when the support is a single prime, otherwise
    over a long fallback window.
    """
    primes = f.support_primes()
    if len(primes) == 1:
        period = 2.0 * math.pi / math.log(primes[0])
    else:
        period = 50.0
    n_samples = max(1000, int(samples_per_unit * period))
    taus = np.linspace(0.0, period, n_samples, endpoint=False)
    sampled_min = float(np.min(np.abs(f.eval_many(gamma + 1j * taus))))
    if sampled_min < c:
        raise HypothesisFailed(
            f"sampled min |f({gamma} + i tau)| = {sampled_min:.6g} < c = {c}")

    norm = sup_norm_estimate(f)
    mass_bound = (4.0 * gamma ** 2 + 1.0) / (2.0 * gamma) * math.log(norm / c)
    log_bound = abs(math.log(norm)) + 0.5 * math.pi * mass_bound

    rng = np.random.default_rng(seed)
    offsets = rng.uniform(0.0, 10.0 * period, size=n_windows)
    mass_trace = []
    log_trace = []
    for tau in offsets:
        rect = Rectangle(INNER_MARGIN, gamma, tau, tau + 1.0)
        zeros, used = _isolate_with_jitter(f, rect, seed=seed)
        mass = sum(h.multiplicity * h.location.real for h in zeros
                   if 0.0 < h.location.real < gamma)
        mass_trace.append((tau, mass))
        log_trace.append((tau, _abs_log_boundary_integral(f, tau, tau + 1.0)))

    worst_mass = max(v for _, v in mass_trace)
    worst_log = max(v for _, v in log_trace)
    return CheckReport(
        name="blaschke-condition", lhs=worst_mass, rhs=mass_bound,
        tol=1e-9, tol_mode="upper",
        params={"gamma": gamma, "c": c, "sup_norm": norm,
                "log_integral_worst": worst_log, "log_integral_bound": log_bound,
                "windows": [t for t, _ in mass_trace],
                "log_trace": log_trace},
        trace=mass_trace,
        constraints_ok=worst_log <= log_bound + 1e-9,
        notes="pass requires both the zero-mass and the log-integral bound")


def _abs_log_boundary_integral(f, t_lo, t_hi):
    """integral over the window of |log |f(it)||, split adaptively near the
    kinks at |f| = 1 and the dips toward zeros."""

    def g(t):
        return np.abs(np.log(np.abs(f.eval_many(1j * t))))

    def guard(t):
        return np.abs(f.eval_many(1j * t))

    res = gl_adaptive(g, t_lo, t_hi, abs_tol=1e-9, order=12,
                      guard=guard, guard_threshold=1e-6, guard_max_depth=24)
    return res.value


def logxi_bounds(z, xi):
    """Two-sided pinch for log of the Mobius pseudo-distance between z and xi.

    Returns (lower, upper); the middle quantity is recomputed and verified to
    lie between them."""
    z = complex(z)
    xi = complex(xi)
    if z == xi:
        raise ValueError("z and xi must be distinct")
    if abs(z) >= 1.0 or abs(xi) >= 1.0:
        raise ValueError("both points must lie in the open unit disc")
    common = 0.5 * (1.0 - abs(xi) ** 2) * (1.0 - abs(z) ** 2)
    lower = -common / abs(xi - z) ** 2
    upper = -common / abs(1.0 - np.conj(xi) * z) ** 2
    middle = math.log(abs((xi - z) / (1.0 - np.conj(xi) * z)))
    if not (lower - 1e-12 <= middle <= upper + 1e-12):
        raise AssertionError(
            f"sandwich violated: {lower} <= {middle} <= {upper}")
    return lower, upper


def min_modulus_diagnostic(f, strip, delta, *, seed=0):
    """Empirical min of |f| over strip grid points at distance >= delta from
    the isolated zeros.  Advisory only: the underlying uniform constant is
    not certifiable from finitely many samples."""
    zeros, _ = _isolate_with_jitter(f, strip, seed=seed)
    step = min(delta / 5.0, 0.05)
    sig = np.arange(strip.sigma0, strip.sigma1 + step, step)
    tau = np.arange(strip.t0, strip.t1 + step, step)
    S, T = np.meshgrid(sig, tau, indexing="ij")
    pts = S + 1j * T
    keep = np.ones(pts.shape, dtype=bool)
    for h in zeros:
        keep &= np.abs(pts - h.location) >= delta
    if not keep.any():
        return math.inf
    vals = np.abs(f.eval_many(pts[keep]))
    return float(np.min(vals))
